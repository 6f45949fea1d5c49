#ifndef GFRA_MONTE_CARLO_HPP
#define GFRA_MONTE_CARLO_HPP

#include <cstdint>
#include <vector>

#include "gfra/bler.hpp"
#include "gfra/config.hpp"

// End-to-end empirical pipeline: scenario -> AMP JADCE -> ZF quadratic form
// -> realized post-processing SNR -> block errors drawn from the
// normal-approximation model -> aggregated BLER with confidence intervals.

namespace gfra {

// Converged-state quantities shared by all trials of a campaign.
struct TrialContext {
  double tau_inf_sq = 0.0;  // state-evolution fixed point for the config
  double err_var_detected = 0.0;
  double err_var_missed = 0.0;
  CodeParams code;
};

TrialContext make_trial_context(const SystemConfig& config);

struct TrialResult {
  int miss_count = 0;   // realized e
  int false_count = 0;  // realized f
  bool overloaded = false;  // |detected set| > M (or singular ZF Gram)
  bool amp_restarted = false;
  // One entry per active user, in active_indices() order.
  std::vector<std::uint8_t> per_active_error;
  // Realized gamma_k for correctly detected active users; NaN for missed
  // users and for every user of an overloaded trial.
  std::vector<double> per_active_snr;
  // Sum over active users of the conditional error probability (1 for
  // missed/overloaded users); feeds the Rao-Blackwellized estimator.
  double conditional_bler_sum = 0.0;
};

TrialResult run_trial(const SystemConfig& config, std::uint64_t seed,
                      const TrialContext& ctx);
// Convenience overload; computes the context (state-evolution solve) itself.
TrialResult run_trial(const SystemConfig& config, std::uint64_t seed);

struct EmpiricalBler {
  double bler = 0.0;            // Bernoulli-drawn block errors per user
  double ci_half_width = 0.0;   // 1.96 sqrt(bler(1-bler)/(trials K))
  double rb_bler = 0.0;         // Rao-Blackwellized (no Bernoulli draw)
  double rb_ci_half_width = 0.0;
  long trials = 0;
  double mean_miss_rate = 0.0;
  double mean_false_rate = 0.0;
  long total_active_obs = 0;
  long total_inactive_obs = 0;
  long overloaded_trials = 0;
  long restarted_trials = 0;
};

// Trials run with per-trial seeds derived from (base_seed, index); the
// reduction is in index order, so the result is independent of the worker
// count.
EmpiricalBler run_campaign(const SystemConfig& config, long trials,
                           std::uint64_t base_seed, int workers = 1);

// Per-trial seed derivation, exposed so sub-sampling tools can reproduce
// individual campaign trials.
std::uint64_t trial_seed(std::uint64_t base_seed, long trial_index);

}  // namespace gfra

#endif
