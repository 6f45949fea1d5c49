#ifndef GFRA_PILOT_OPTIMIZER_HPP
#define GFRA_PILOT_OPTIMIZER_HPP

#include <vector>

#include "gfra/config.hpp"

// Solve min_{L in {K+1..T-c}} P_M(L) + (1 - P_M(L)) eps(L): an exact path
// (state-evolution fixed point and the full mixture per L) and a fast path
// (high-SNR fixed point sigma^2/(L-K) with the dominant-term shortcut).

namespace gfra {

enum class OptimizerMode { kExact, kFast };

struct PilotSweepRecord {
  int pilot_len = 0;
  double rate = 0.0;        // R = c/(T - L)
  double tau_inf_sq = 0.0;
  double p_miss = 0.0;
  double p_false = 0.0;
  double bler_detected = 0.0;  // eps(L)
  double p_overall = 0.0;      // P_e(L)
};

struct PilotSweepResult {
  int best_len = 0;  // smallest argmin of p_overall
  OptimizerMode mode = OptimizerMode::kFast;
  std::vector<PilotSweepRecord> curve;  // ascending pilot_len, full range
  // Set when fast mode runs below 40 dB rx-power-to-noise ratio, where the
  // high-SNR fixed point is a rough approximation.
  bool low_snr_warning = false;
};

PilotSweepResult optimize_pilot_length(const SystemConfig& config,
                                       OptimizerMode mode, int workers = 1);

}  // namespace gfra

#endif
