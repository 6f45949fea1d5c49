#ifndef GFRA_CONFIG_IO_HPP
#define GFRA_CONFIG_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "gfra/config.hpp"

// Flat "key = value" config files ('#' starts a comment). Recognized keys:
//   n_users, n_antennas, block_len, pilot_len, payload_bits,
//   active_count | activity_prob (exactly one),
//   rx_power_db, noise_dbm, trials, seed,
//   amp_max_iters, amp_tol, trunc_tol, mode
// Unknown keys are rejected so typos fail loudly.

namespace gfra {

struct RunConfig {
  SystemConfig system;
  long trials = 2000;
  std::uint64_t seed = 1;
  std::string mode = "exact";  // "exact" | "fast"
  // Raw dB inputs, kept for manifests.
  double rx_power_db = -123.8;
  double noise_dbm = -109.0;
};

RunConfig default_run_config();

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Serializes a RunConfig in the same key = value format (re-ingestable).
std::string serialize_config(const RunConfig& cfg);

}  // namespace gfra

#endif
