#include "gfra/monte_carlo.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "gfra/amp.hpp"
#include "gfra/finite_blocklength.hpp"
#include "gfra/rng.hpp"
#include "gfra/scenario.hpp"

namespace gfra {

namespace {
constexpr std::uint64_t kStreamBlockError = 6;
}

TrialContext make_trial_context(const SystemConfig& config) {
  TrialContext ctx;
  ctx.tau_inf_sq = state_evolution_fixed_point(config);
  ctx.err_var_detected =
      estimation_error_variance(config.rx_power, ctx.tau_inf_sq, true);
  ctx.err_var_missed =
      estimation_error_variance(config.rx_power, ctx.tau_inf_sq, false);
  ctx.code = code_params(config);
  return ctx;
}

TrialResult run_trial(const SystemConfig& config, std::uint64_t seed,
                      const TrialContext& ctx) {
  const Scenario scenario = generate_scenario(config, seed);
  const Eigen::MatrixXcd pilot_signal =
      received_pilot_signal(config, scenario);
  const JadceResult jadce = run_amp(pilot_signal, scenario.pilots, config);

  const std::vector<int> active = scenario.active_indices();
  const int k_act = static_cast<int>(active.size());
  const auto& detected = jadce.detected_active;

  std::vector<char> is_detected(config.n_users, 0);
  for (int n : detected) is_detected[n] = 1;

  TrialResult trial;
  trial.amp_restarted = jadce.restarted;
  trial.per_active_error.assign(k_act, 0);
  trial.per_active_snr.assign(k_act,
                              std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < k_act; ++i)
    if (!is_detected[active[i]]) ++trial.miss_count;
  trial.false_count =
      static_cast<int>(detected.size()) - (k_act - trial.miss_count);

  trial.overloaded =
      static_cast<int>(detected.size()) > config.n_antennas;

  Eigen::MatrixXcd gram_inv;
  if (!trial.overloaded && !detected.empty()) {
    // ZF Gram matrix over the detected columns.
    Eigen::MatrixXcd h_hat(config.n_antennas, detected.size());
    for (std::size_t j = 0; j < detected.size(); ++j)
      h_hat.col(j) = jadce.channel_estimates.row(detected[j]).transpose();
    const Eigen::MatrixXcd gram = h_hat.adjoint() * h_hat;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
    if (lu.isInvertible()) {
      gram_inv = lu.inverse();
      if (!gram_inv.allFinite()) trial.overloaded = true;
    } else {
      trial.overloaded = true;  // conservative, same rule as |K̂| > M
    }
  }

  std::vector<int> col_of(config.n_users, -1);
  for (std::size_t j = 0; j < detected.size(); ++j) col_of[detected[j]] = static_cast<int>(j);

  const double interference =
      (k_act - trial.miss_count) * ctx.err_var_detected +
      trial.miss_count * ctx.err_var_missed + config.noise_var;

  for (int i = 0; i < k_act; ++i) {
    const int n = active[i];
    if (trial.overloaded || !is_detected[n]) {
      trial.per_active_error[i] = 1;
      trial.conditional_bler_sum += 1.0;
      continue;
    }
    const int j = col_of[n];
    const double diag = gram_inv(j, j).real();
    const double snr = 1.0 / (diag * interference);
    trial.per_active_snr[i] = snr;
    const double eps = bler_normal_approx(snr, ctx.code);
    trial.conditional_bler_sum += eps;
    Philox rng(scenario.seed, (kStreamBlockError << 48) ^
                                  static_cast<std::uint64_t>(n));
    trial.per_active_error[i] = rng.next_double() < eps ? 1 : 0;
  }
  return trial;
}

TrialResult run_trial(const SystemConfig& config, std::uint64_t seed) {
  return run_trial(config, seed, make_trial_context(config));
}

std::uint64_t trial_seed(std::uint64_t base_seed, long trial_index) {
  return mix_seed(base_seed, static_cast<std::uint64_t>(trial_index));
}

EmpiricalBler run_campaign(const SystemConfig& config, long trials,
                           std::uint64_t base_seed, int workers) {
  if (trials < 1) throw ConfigError("run_campaign: trials must be >= 1");
  const TrialContext ctx = make_trial_context(config);

  struct TrialSummary {
    long errors = 0;
    int k_act = 0;
    int miss = 0;
    int fals = 0;
    double cond_sum = 0.0;
    bool overloaded = false;
    bool restarted = false;
  };
  std::vector<TrialSummary> summaries(trials);

  std::atomic<long> next{0};
  auto worker_fn = [&]() {
    for (;;) {
      const long t = next.fetch_add(1);
      if (t >= trials) return;
      const TrialResult r = run_trial(config, trial_seed(base_seed, t), ctx);
      TrialSummary s;
      s.k_act = static_cast<int>(r.per_active_error.size());
      for (auto e : r.per_active_error) s.errors += e;
      s.miss = r.miss_count;
      s.fals = r.false_count;
      s.cond_sum = r.conditional_bler_sum;
      s.overloaded = r.overloaded;
      s.restarted = r.amp_restarted;
      summaries[t] = s;
    }
  };
  const int n_workers = std::max(1, workers);
  if (n_workers == 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker_fn);
    for (auto& th : pool) th.join();
  }

  // Reduce in trial order.
  EmpiricalBler out;
  out.trials = trials;
  long errors = 0, active_obs = 0, inactive_obs = 0, misses = 0, falses = 0;
  double cond_sum = 0.0, cond_sq_sum = 0.0;
  for (const auto& s : summaries) {
    errors += s.errors;
    active_obs += s.k_act;
    inactive_obs += config.n_users - s.k_act;
    misses += s.miss;
    falses += s.fals;
    cond_sum += s.cond_sum;
    const double trial_mean = s.k_act > 0 ? s.cond_sum / s.k_act : 0.0;
    cond_sq_sum += trial_mean * trial_mean;
    out.overloaded_trials += s.overloaded;
    out.restarted_trials += s.restarted;
  }
  out.total_active_obs = active_obs;
  out.total_inactive_obs = inactive_obs;
  if (active_obs > 0) {
    out.bler = static_cast<double>(errors) / active_obs;
    out.ci_half_width =
        1.96 * std::sqrt(out.bler * (1.0 - out.bler) / active_obs);
    out.rb_bler = cond_sum / active_obs;
    const double mean_trial = cond_sum / active_obs * 1.0;
    const double var_between =
        std::max(0.0, cond_sq_sum / trials - mean_trial * mean_trial);
    out.rb_ci_half_width = 1.96 * std::sqrt(var_between / trials);
    out.mean_miss_rate = static_cast<double>(misses) / active_obs;
  }
  if (inactive_obs > 0)
    out.mean_false_rate = static_cast<double>(falses) / inactive_obs;
  return out;
}

}  // namespace gfra
