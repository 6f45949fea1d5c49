#ifndef GFRA_CONFIG_HPP
#define GFRA_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace gfra {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solver knobs, kept beside the scenario scalars so a config file fully
// determines a run.
struct SolverOptions {
  int amp_max_iters = 50;
  double amp_tol = 1e-8;
  int se_samples = 100000;       // Monte-Carlo draws per state-evolution step
  std::uint64_t se_seed = 1234;  // fixed internal seed, deterministic output
  double trunc_tol = 1e-8;       // binomial-mixture tail mass bound
};

// How user activity is drawn: exactly `active_count` users, or i.i.d.
// Bernoulli(activity_prob) per user.
enum class ActivityMode { kFixedCount, kBernoulli };

// All scenario scalars. Powers are stored in a common linear unit;
// from_db_inputs() converts the dB / dBm pair used by config files.
struct SystemConfig {
  int n_users = 2000;        // N
  int n_antennas = 100;      // M
  int block_len = 250;       // T
  int pilot_len = 120;       // L
  int payload_bits = 50;     // c
  ActivityMode activity_mode = ActivityMode::kFixedCount;
  int active_count = 100;    // K (fixed-count mode)
  double activity_prob = 0.05;  // lambda (= K/N in fixed-count mode)
  double rx_power = 0.0;     // beta, linear
  double noise_var = 0.0;    // sigma^2, linear
  SolverOptions solver;

  int data_len() const { return block_len - pilot_len; }  // d = T - L
  double code_rate() const {
    return static_cast<double>(payload_bits) / data_len();  // R = c/d
  }
  double snr() const { return rx_power / noise_var; }

  // Throws ConfigError when an invariant is violated.
  void validate() const;

  // rx_power_db is a received power in dB (re 1 W); noise_dbm in dBm.
  // Both land in watts so that only the ratio matters downstream.
  static double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
  static double dbm_to_linear(double dbm) {
    return std::pow(10.0, (dbm - 30.0) / 10.0);
  }
};

// Fixed-count activity with lambda kept consistent (lambda = K/N).
// Call after n_users is final.
void set_fixed_active_count(SystemConfig& cfg, int active_count);

// Bernoulli activity; active_count becomes the rounded mean for reporting.
void set_activity_prob(SystemConfig& cfg, double activity_prob);

// Table I parameters (N=2000, M=100, T=250, c=50, beta=-123.8 dB,
// sigma^2=-109 dBm) with a fixed number of active users.
SystemConfig table1_config(int active_count, int pilot_len);

}  // namespace gfra

#endif
