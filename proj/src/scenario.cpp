#include "gfra/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gfra/rng.hpp"

namespace gfra {

namespace {

// Substream tags; each (seed, tag, index) triple is an independent stream.
enum : std::uint64_t {
  kStreamActivity = 1,
  kStreamChannel = 2,
  kStreamPilot = 3,
  kStreamPilotNoise = 4,
  kStreamDataNoise = 5,
};

std::uint64_t stream_id(std::uint64_t tag, std::uint64_t index) {
  return (tag << 48) ^ index;
}

}  // namespace

std::vector<int> Scenario::active_indices() const {
  std::vector<int> idx;
  for (int n = 0; n < static_cast<int>(activity.size()); ++n)
    if (activity[n]) idx.push_back(n);
  return idx;
}

int Scenario::active_count() const {
  return static_cast<int>(std::count(activity.begin(), activity.end(),
                                     std::uint8_t{1}));
}

Scenario generate_scenario(const SystemConfig& config, std::uint64_t seed) {
  config.validate();
  const int N = config.n_users, M = config.n_antennas, L = config.pilot_len;

  Scenario sc;
  sc.seed = seed;
  sc.activity.assign(N, 0);

  if (config.activity_mode == ActivityMode::kFixedCount) {
    // Fisher-Yates selection of exactly K active users.
    std::vector<int> perm(N);
    for (int i = 0; i < N; ++i) perm[i] = i;
    Philox rng(seed, stream_id(kStreamActivity, 0));
    for (int i = 0; i < config.active_count; ++i) {
      const int j = i + static_cast<int>(rng.next_u64() % (N - i));
      std::swap(perm[i], perm[j]);
      sc.activity[perm[i]] = 1;
    }
  } else {
    Philox rng(seed, stream_id(kStreamActivity, 0));
    for (int n = 0; n < N; ++n)
      sc.activity[n] = rng.next_double() < config.activity_prob ? 1 : 0;
  }

  const double chan_scale = std::sqrt(config.rx_power);
  sc.channels.resize(N, M);
  for (int n = 0; n < N; ++n) {
    Philox rng(seed, stream_id(kStreamChannel, n));
    for (int m = 0; m < M; ++m)
      sc.channels(n, m) = chan_scale * rng.next_complex_gaussian();
  }

  const double pilot_scale = 1.0 / std::sqrt(static_cast<double>(L));
  sc.pilots.resize(L, N);
  for (int n = 0; n < N; ++n) {
    Philox rng(seed, stream_id(kStreamPilot, n));
    for (int l = 0; l < L; ++l)
      sc.pilots(l, n) = pilot_scale * rng.next_complex_gaussian();
  }

  const double noise_scale = std::sqrt(config.noise_var);
  sc.pilot_noise.resize(L, M);
  for (int m = 0; m < M; ++m) {
    Philox rng(seed, stream_id(kStreamPilotNoise, m));
    for (int l = 0; l < L; ++l)
      sc.pilot_noise(l, m) = noise_scale * rng.next_complex_gaussian();
  }
  return sc;
}

Eigen::MatrixXcd received_pilot_signal(const SystemConfig& config,
                                       const Scenario& scenario) {
  const double sqrt_l = std::sqrt(static_cast<double>(config.pilot_len));
  Eigen::MatrixXcd y = scenario.pilot_noise;
  for (int n = 0; n < config.n_users; ++n) {
    if (!scenario.activity[n]) continue;
    y.noalias() +=
        sqrt_l * scenario.pilots.col(n) * scenario.channels.row(n);
  }
  return y;
}

Eigen::MatrixXcd received_data_signal(const SystemConfig& config,
                                      const Scenario& scenario,
                                      const Eigen::MatrixXcd& symbols) {
  const std::vector<int> active = scenario.active_indices();
  if (symbols.rows() != static_cast<Eigen::Index>(active.size()))
    throw std::invalid_argument(
        "received_data_signal: one symbol row per active user required");
  const int M = config.n_antennas;
  const auto d = symbols.cols();

  Eigen::MatrixXcd y(M, d);
  const double noise_scale = std::sqrt(config.noise_var);
  for (int m = 0; m < M; ++m) {
    Philox rng(scenario.seed, stream_id(kStreamDataNoise, m));
    for (Eigen::Index t = 0; t < d; ++t)
      y(m, t) = noise_scale * rng.next_complex_gaussian();
  }
  for (std::size_t i = 0; i < active.size(); ++i)
    y.noalias() += scenario.channels.row(active[i]).transpose() *
                   symbols.row(static_cast<Eigen::Index>(i));
  return y;
}

}  // namespace gfra
