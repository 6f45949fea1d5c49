#include "gfra/pilot_optimizer.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "gfra/amp.hpp"
#include "gfra/bler.hpp"
#include "gfra/detection.hpp"

namespace gfra {

PilotSweepResult optimize_pilot_length(const SystemConfig& config,
                                       OptimizerMode mode, int workers) {
  const int k = config.active_count;
  const int l_min = k + 1;
  const int l_max = config.block_len - config.payload_bits;
  if (l_min > l_max)
    throw ConfigError("optimize_pilot_length: empty feasible pilot range");

  PilotSweepResult result;
  result.mode = mode;
  result.low_snr_warning =
      mode == OptimizerMode::kFast && config.snr() < 1e4;  // 40 dB
  result.curve.resize(l_max - l_min + 1);

  auto eval_one = [&](int pilot_len) {
    SystemConfig cfg = config;
    cfg.pilot_len = pilot_len;
    PilotSweepRecord rec;
    rec.pilot_len = pilot_len;
    rec.rate = cfg.code_rate();
    const CodeParams code = code_params(cfg);
    if (mode == OptimizerMode::kFast) {
      rec.tau_inf_sq = high_snr_fixed_point(cfg);
      const DetectionStats stats = detection_stats(cfg, rec.tau_inf_sq);
      rec.p_miss = stats.p_miss;
      rec.p_false = stats.p_false;
      rec.bler_detected = dominant_term_bler(cfg, stats, code);
    } else {
      rec.tau_inf_sq = state_evolution_fixed_point(cfg);
      const DetectionStats stats = detection_stats(cfg, rec.tau_inf_sq);
      rec.p_miss = stats.p_miss;
      rec.p_false = stats.p_false;
      rec.bler_detected =
          mixture_bler(cfg, stats, code, cfg.solver.trunc_tol)
              .bler_mixture_lo;
    }
    rec.p_overall = overall_bler(rec.p_miss, rec.bler_detected);
    return rec;
  };

  std::atomic<int> next{0};
  auto worker_fn = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= static_cast<int>(result.curve.size())) return;
      result.curve[i] = eval_one(l_min + i);
    }
  };
  const int n_workers = std::max(1, workers);
  if (n_workers == 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker_fn);
    for (auto& th : pool) th.join();
  }

  // Ties break toward the smallest pilot length.
  int best = 0;
  for (int i = 1; i < static_cast<int>(result.curve.size()); ++i)
    if (result.curve[i].p_overall < result.curve[best].p_overall) best = i;
  result.best_len = result.curve[best].pilot_len;
  return result;
}

}  // namespace gfra
