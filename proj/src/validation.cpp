#include "gfra/validation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "gfra/amp.hpp"
#include "gfra/bler.hpp"
#include "gfra/detection.hpp"
#include "gfra/rng.hpp"
#include "gfra/scenario.hpp"
#include "gfra/special_functions.hpp"

namespace gfra {

std::vector<double> sample_zf_snr(int n_antennas, int n_detected_active,
                                  int miss_count, int false_count,
                                  double rx_power, double tau_inf_sq,
                                  double noise_var, int draws,
                                  std::uint64_t seed) {
  const int n_cols = n_detected_active + false_count;
  if (n_cols < 1 || n_cols > n_antennas)
    throw std::invalid_argument("sample_zf_snr: infeasible column count");
  const double est_var = rx_power * rx_power / (rx_power + tau_inf_sq);
  const double denom =
      n_detected_active * rx_power * tau_inf_sq / (rx_power + tau_inf_sq) +
      miss_count * rx_power + noise_var;
  const double col_scale = std::sqrt(est_var);

  std::vector<double> out(draws);
  Eigen::MatrixXcd h(n_antennas, n_cols);
  Philox rng(seed, 0x5a7f);
  for (int d = 0; d < draws; ++d) {
    for (int j = 0; j < n_cols; ++j)
      for (int m = 0; m < n_antennas; ++m)
        h(m, j) = col_scale * rng.next_complex_gaussian();
    const Eigen::MatrixXcd gram = h.adjoint() * h;
    const double diag = gram.inverse()(0, 0).real();
    out[d] = 1.0 / (diag * denom);
  }
  return out;
}

double ks_statistic_gamma(std::vector<double> draws, double shape,
                          double scale) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d_stat = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double cdf = reg_lower_gamma(shape, draws[i] / scale);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d_stat = std::max({d_stat, std::fabs(cdf - lo), std::fabs(hi - cdf)});
  }
  return d_stat;
}

double ks_critical_value(int n, double alpha) {
  const double c = alpha <= 0.01 ? 1.628 : 1.358;
  const double sn = std::sqrt(static_cast<double>(n));
  return c / (sn + 0.12 + 0.11 / sn);
}

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

// SNR-law distributional check on a small antenna array, each (e, f) in
// {0,1}^2, against matrix-sampled draws.
void check_snr_law(const SystemConfig& config, const ValidationOptions& opts,
                   ValidationReport* report) {
  SystemConfig small = config;
  small.n_users = 6;
  small.n_antennas = 8;
  set_fixed_active_count(small, 3);
  const double tau_inf_sq = high_snr_fixed_point(config);

  for (int e = 0; e <= 1; ++e) {
    for (int f = 0; f <= 1; ++f) {
      const SnrLaw law = conditional_snr_law(e, f, small, tau_inf_sq,
                                             opts.theta2_offset);
      const std::vector<double> draws = sample_zf_snr(
          small.n_antennas, small.active_count - e, e, f, small.rx_power,
          tau_inf_sq, small.noise_var, opts.ks_draws,
          mix_seed(opts.seed, 1000 + 10 * e + f));
      const double d_stat = ks_statistic_gamma(draws, law.shape, law.scale);
      const double crit = ks_critical_value(opts.ks_draws, 0.01);
      ValidationCheck check;
      check.name = "snr_law_ks_e" + std::to_string(e) + "_f" +
                   std::to_string(f);
      check.passed = d_stat < crit;
      check.detail = "KS " + fmt(d_stat) + " vs crit " + fmt(crit) +
                     " (shape " + fmt(law.shape) + ")";
      report->checks.push_back(std::move(check));
    }
  }
}

struct ScenarioStats {
  std::vector<double> tau_history;
  double state_mse = 0.0;
  int miss = 0;
  int fals = 0;
  int k_act = 0;
  bool restarted = false;
};

ScenarioStats measure_scenario(const SystemConfig& config, std::uint64_t seed,
                               int max_iters) {
  const Scenario sc = generate_scenario(config, seed);
  const Eigen::MatrixXcd y = received_pilot_signal(config, sc);
  const JadceResult r = run_amp(y, sc.pilots, config, max_iters,
                                config.solver.amp_tol);
  ScenarioStats st;
  st.tau_history = r.tau_sq_history;
  st.restarted = r.restarted;

  // Pseudo-data error against the true effective channels.
  double err = 0.0;
  for (int n = 0; n < config.n_users; ++n) {
    if (sc.activity[n])
      err += (r.effective_observations.row(n) - sc.channels.row(n))
                 .squaredNorm();
    else
      err += r.effective_observations.row(n).squaredNorm();
  }
  st.state_mse = err / (static_cast<double>(config.n_users) *
                        config.n_antennas);

  std::vector<char> detected(config.n_users, 0);
  for (int n : r.detected_active) detected[n] = 1;
  for (int n = 0; n < config.n_users; ++n) {
    if (sc.activity[n]) {
      ++st.k_act;
      if (!detected[n]) ++st.miss;
    } else if (detected[n]) {
      ++st.fals;
    }
  }
  return st;
}

std::vector<ScenarioStats> measure_scenarios(const SystemConfig& config,
                                             std::uint64_t base_seed,
                                             int count, int max_iters,
                                             int workers) {
  std::vector<ScenarioStats> stats(count);
  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      stats[i] = measure_scenario(config, mix_seed(base_seed, i), max_iters);
    }
  };
  const int n_workers = std::max(1, workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return stats;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void check_state_evolution(const SystemConfig& config,
                           const ValidationOptions& opts,
                           ValidationReport* report) {
  const int n_track = 10;
  const std::vector<double> se_traj =
      state_evolution_trajectory(config, n_track);
  const auto track_stats = measure_scenarios(
      config, mix_seed(opts.seed, 7), opts.tracking_scenarios, n_track,
      opts.workers);
  double worst = 0.0;
  for (int t = 0; t <= n_track; ++t) {
    std::vector<double> vals;
    for (const auto& s : track_stats)
      if (t < static_cast<int>(s.tau_history.size()))
        vals.push_back(s.tau_history[t]);
    if (vals.empty()) continue;
    worst = std::max(worst, std::fabs(median(vals) / se_traj[t] - 1.0));
  }
  report->checks.push_back(
      {"state_evolution_tracking", worst <= 0.10,
       "max median trajectory deviation " + fmt(worst)});

  const double fp = state_evolution_fixed_point(config);
  const auto fp_stats =
      measure_scenarios(config, mix_seed(opts.seed, 8),
                        opts.fixed_point_scenarios, 80, opts.workers);
  std::vector<double> mses;
  for (const auto& s : fp_stats) mses.push_back(s.state_mse);
  const double mean_mse =
      std::accumulate(mses.begin(), mses.end(), 0.0) / mses.size();
  const double dev = std::fabs(mean_mse / fp - 1.0);
  report->checks.push_back(
      {"state_evolution_fixed_point", dev <= 0.05,
       "empirical state MSE / tau_inf^2 = " + fmt(mean_mse / fp)});

  // Detection rates pooled over the fixed-point runs.
  long misses = 0, falses = 0, act = 0, inact = 0;
  for (const auto& s : fp_stats) {
    misses += s.miss;
    fals: ;
    falses += s.fals;
    act += s.k_act;
    inact += config.n_users - s.k_act;
  }
  const DetectionStats det = detection_stats(config, fp);
  const double se_miss =
      std::sqrt(std::max(det.p_miss * (1 - det.p_miss) / act, 1e-300));
  const double se_false =
      std::sqrt(std::max(det.p_false * (1 - det.p_false) / inact, 1e-300));
  const double miss_rate = static_cast<double>(misses) / act;
  const double false_rate = static_cast<double>(falses) / inact;
  report->checks.push_back(
      {"missed_detection_rate",
       std::fabs(miss_rate - det.p_miss) <= 3.0 * se_miss + 1e-12,
       "empirical " + fmt(miss_rate) + " vs P_M " + fmt(det.p_miss)});
  report->checks.push_back(
      {"false_alarm_rate",
       std::fabs(false_rate - det.p_false) <= 3.0 * se_false + 1e-12,
       "empirical " + fmt(false_rate) + " vs P_F " + fmt(det.p_false)});
}

}  // namespace

ValidationReport run_validation_suite(const SystemConfig& config,
                                      const ValidationOptions& opts) {
  config.validate();
  ValidationReport report;
  check_snr_law(config, opts, &report);
  check_state_evolution(config, opts, &report);
  return report;
}

}  // namespace gfra
