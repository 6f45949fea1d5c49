#include "gfra/config.hpp"

#include <string>

namespace gfra {

void SystemConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (n_users < 1) fail("n_users must be >= 1");
  if (n_antennas < 1) fail("n_antennas must be >= 1");
  if (pilot_len < 1) fail("pilot_len must be >= 1");
  if (pilot_len >= block_len) fail("pilot_len must be < block_len");
  if (payload_bits < 1) fail("payload_bits must be >= 1");
  if (payload_bits > data_len())
    fail("payload_bits must be <= block_len - pilot_len (rate <= 1)");
  if (activity_mode == ActivityMode::kFixedCount) {
    if (active_count < 0 || active_count > n_users)
      fail("active_count must be in [0, n_users]");
  } else if (!(activity_prob > 0.0 && activity_prob <= 1.0)) {
    fail("activity_prob must be in (0, 1]");
  }
  if (!(rx_power > 0.0)) fail("rx_power must be positive");
  if (!(noise_var > 0.0)) fail("noise_var must be positive");
  if (solver.amp_max_iters < 1) fail("amp_max_iters must be >= 1");
  if (!(solver.amp_tol > 0.0)) fail("amp_tol must be positive");
  if (solver.se_samples < 100) fail("se_samples must be >= 100");
  if (!(solver.trunc_tol > 0.0 && solver.trunc_tol <= 1e-6))
    fail("trunc_tol must be in (0, 1e-6]");
}

void set_fixed_active_count(SystemConfig& cfg, int active_count) {
  cfg.activity_mode = ActivityMode::kFixedCount;
  cfg.active_count = active_count;
  cfg.activity_prob = static_cast<double>(active_count) / cfg.n_users;
}

void set_activity_prob(SystemConfig& cfg, double activity_prob) {
  cfg.activity_mode = ActivityMode::kBernoulli;
  cfg.activity_prob = activity_prob;
  cfg.active_count = static_cast<int>(std::lround(activity_prob * cfg.n_users));
}

SystemConfig table1_config(int active_count, int pilot_len) {
  SystemConfig cfg;
  cfg.n_users = 2000;
  cfg.n_antennas = 100;
  cfg.block_len = 250;
  cfg.pilot_len = pilot_len;
  cfg.payload_bits = 50;
  cfg.rx_power = SystemConfig::db_to_linear(-123.8);
  cfg.noise_var = SystemConfig::dbm_to_linear(-109.0);
  set_fixed_active_count(cfg, active_count);
  return cfg;
}

}  // namespace gfra
