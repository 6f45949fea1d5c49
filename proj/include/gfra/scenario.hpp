#ifndef GFRA_SCENARIO_HPP
#define GFRA_SCENARIO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gfra/config.hpp"

// One realized network draw: activity pattern, power-controlled channels,
// pilot matrix, and receiver noise. Generation is a pure function of
// (config, seed); independent substreams per user keep it order-insensitive.

namespace gfra {

struct Scenario {
  std::vector<std::uint8_t> activity;  // u_n, length N
  Eigen::MatrixXcd channels;           // N x M, row n = h_n ~ CN(0, beta I)
  Eigen::MatrixXcd pilots;             // L x N, column n = p_n, entries CN(0, 1/L)
  Eigen::MatrixXcd pilot_noise;        // L x M, entries CN(0, sigma^2)
  std::uint64_t seed = 0;

  std::vector<int> active_indices() const;
  int active_count() const;
};

Scenario generate_scenario(const SystemConfig& config, std::uint64_t seed);

// Y_p = sum_n sqrt(L) u_n p_n h_n^T + N_p   (L x M)
Eigen::MatrixXcd received_pilot_signal(const SystemConfig& config,
                                       const Scenario& scenario);

// Y = sum_{n active} h_n s_n^T + N   (M x d), one symbol row per active user,
// fresh noise drawn from the scenario's seed. Throws std::invalid_argument on
// a row-count mismatch.
Eigen::MatrixXcd received_data_signal(const SystemConfig& config,
                                      const Scenario& scenario,
                                      const Eigen::MatrixXcd& symbols);

}  // namespace gfra

#endif
