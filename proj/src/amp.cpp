#include "gfra/amp.hpp"

#include <cmath>
#include <limits>

#include "gfra/rng.hpp"

namespace gfra {

namespace {

double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Log prior-odds part of the activity LLR; the norm-dependent part is
// g * ||z||^2 with g = beta / (tau^2 (tau^2 + beta)).
struct LlrParams {
  double logit0;
  double g;
  LlrParams(double tau_sq, double lambda, double beta, int n_antennas) {
    if (lambda >= 1.0) {
      logit0 = std::numeric_limits<double>::infinity();
    } else if (lambda <= 0.0) {
      logit0 = -std::numeric_limits<double>::infinity();
    } else {
      logit0 = std::log(lambda / (1.0 - lambda)) -
               n_antennas * std::log1p(beta / tau_sq);
    }
    g = beta / (tau_sq * (tau_sq + beta));
  }
};

// Per-component MSE of the denoiser, E ||eta(X + tau V) - X||^2 / M, as a
// Monte-Carlo average over the norm statistic ||X + tau V||^2. Conditioned
// on activity, that norm is a scaled Gamma(M, 1) variate, so one set of
// Gamma draws serves both hypotheses.
double mse_per_component(double tau_sq, double lambda, double beta,
                         int n_antennas, const std::vector<double>& gamma_draws) {
  if (lambda <= 0.0) return 0.0;
  const double cgain = beta / (beta + tau_sq);
  if (lambda >= 1.0) return beta * tau_sq / (beta + tau_sq);
  const LlrParams llr(tau_sq, lambda, beta, n_antennas);
  const double s_active = beta + tau_sq;
  double acc_active = 0.0, acc_inactive = 0.0;
  for (const double gd : gamma_draws) {
    const double na = s_active * gd;  // ||z||^2 under H1
    const double ni = tau_sq * gd;    // ||z||^2 under H0
    const double miss = stable_sigmoid(-(llr.logit0 + llr.g * na));
    const double pi_i = stable_sigmoid(llr.logit0 + llr.g * ni);
    acc_active += miss * miss * na;
    acc_inactive += pi_i * pi_i * ni;
  }
  const double inv_n = 1.0 / static_cast<double>(gamma_draws.size());
  const double m = static_cast<double>(n_antennas);
  const double ea = cgain * cgain * acc_active * inv_n / m +
                    beta * tau_sq / (beta + tau_sq);
  const double ei = cgain * cgain * acc_inactive * inv_n / m;
  return lambda * ea + (1.0 - lambda) * ei;
}

std::vector<double> make_gamma_draws(const SystemConfig& config) {
  std::vector<double> draws(config.solver.se_samples);
  Philox rng(config.solver.se_seed, 0x5e5e5e5eull);
  for (double& d : draws)
    d = rng.next_gamma(static_cast<double>(config.n_antennas));
  return draws;
}

double se_initial_state(const SystemConfig& config) {
  const double L = config.pilot_len;
  return config.noise_var / L +
         (config.n_users / L) * config.activity_prob * config.rx_power;
}

}  // namespace

double posterior_activity_prob(double norm_sq, double tau_sq,
                               double activity_prob, double rx_power,
                               int n_antennas) {
  const LlrParams llr(tau_sq, activity_prob, rx_power, n_antennas);
  return stable_sigmoid(llr.logit0 + llr.g * norm_sq);
}

std::pair<Eigen::VectorXcd, double> mmse_denoiser(const Eigen::VectorXcd& obs,
                                                  double tau_sq,
                                                  double activity_prob,
                                                  double rx_power) {
  const int m = static_cast<int>(obs.size());
  const double cgain = rx_power / (rx_power + tau_sq);
  const LlrParams llr(tau_sq, activity_prob, rx_power, m);
  const double norm_sq = obs.squaredNorm();
  const double x = llr.logit0 + llr.g * norm_sq;
  const double pi = stable_sigmoid(x);
  const double pi_miss = stable_sigmoid(-x);  // 1 - pi without cancellation
  Eigen::VectorXcd mean = (cgain * pi) * obs;
  const double div =
      cgain * (pi + pi * pi_miss * llr.g * norm_sq / m);
  return {std::move(mean), div};
}

namespace {

struct AmpPass {
  Eigen::MatrixXcd x_hat;
  Eigen::MatrixXcd pseudo;  // x_hat + P^H R after the last iteration
  std::vector<double> tau_sq_history;
  double tau_sq = 0.0;
  int iterations = 0;
  bool diverged = false;
  int diverged_at = 0;
};

// One full AMP pass. step = 1 is the plain iteration; step < 1 damps both
// the estimate and the residual update, which stabilizes the small-system /
// high-SNR regime at the cost of slower convergence.
AmpPass amp_pass(const Eigen::MatrixXcd& y_bar, const Eigen::MatrixXcd& pilots,
                 double lambda, double beta, int max_iters, double tol,
                 double step) {
  const Eigen::Index l_len = pilots.rows();
  const Eigen::Index n_users = pilots.cols();
  const Eigen::Index m_ant = y_bar.cols();
  const double denom = static_cast<double>(l_len * m_ant);
  const double load = static_cast<double>(n_users) / static_cast<double>(l_len);

  AmpPass pass;
  pass.x_hat = Eigen::MatrixXcd::Zero(n_users, m_ant);
  Eigen::MatrixXcd x_next(n_users, m_ant);
  Eigen::MatrixXcd residual = y_bar;
  pass.pseudo.resize(n_users, m_ant);

  double tau_sq = residual.squaredNorm() / denom;
  double tau_sq_min = tau_sq;
  pass.tau_sq_history.push_back(tau_sq);

  int t = 0;
  for (; t < max_iters; ++t) {
    pass.pseudo.noalias() = pilots.adjoint() * residual;
    pass.pseudo += pass.x_hat;

    const LlrParams llr(tau_sq, lambda, beta, static_cast<int>(m_ant));
    const double cgain = beta / (beta + tau_sq);
    double div_sum = 0.0;
    for (Eigen::Index n = 0; n < n_users; ++n) {
      const double norm_sq = pass.pseudo.row(n).squaredNorm();
      const double arg = llr.logit0 + llr.g * norm_sq;
      const double pi = stable_sigmoid(arg);
      const double pi_miss = stable_sigmoid(-arg);
      x_next.row(n) = (step * cgain * pi) * pass.pseudo.row(n);
      div_sum += cgain * (pi + pi * pi_miss * llr.g * norm_sq /
                                   static_cast<double>(m_ant));
    }
    if (step < 1.0) x_next += (1.0 - step) * pass.x_hat;
    const double onsager = load * div_sum / static_cast<double>(n_users);

    // R <- (1-step) R + step (Ybar - P x_next + onsager R)
    residual *= (1.0 - step) + step * onsager;
    residual.noalias() -= step * (pilots * x_next);
    residual += step * y_bar;
    pass.x_hat.swap(x_next);

    const double tau_sq_next = residual.squaredNorm() / denom;
    pass.tau_sq_history.push_back(tau_sq_next);
    // The state sequence is contractive toward its fixed point; a clear
    // rise above the running minimum marks a diverging trajectory.
    if (!std::isfinite(tau_sq_next) || tau_sq_next > 1.5 * tau_sq_min) {
      pass.diverged = true;
      pass.diverged_at = t;
      tau_sq = tau_sq_next;
      ++t;
      break;
    }
    tau_sq_min = std::min(tau_sq_min, tau_sq_next);
    const bool converged =
        std::fabs(tau_sq_next - tau_sq) <= tol * std::fabs(tau_sq);
    tau_sq = tau_sq_next;
    if (converged) {
      ++t;
      break;
    }
  }
  pass.iterations = t;
  pass.tau_sq = tau_sq;
  if (!pass.diverged) {
    pass.pseudo.noalias() = pilots.adjoint() * residual;
    pass.pseudo += pass.x_hat;
  }
  return pass;
}

}  // namespace

JadceResult run_amp(const Eigen::MatrixXcd& pilot_signal,
                    const Eigen::MatrixXcd& pilots, const SystemConfig& config,
                    int max_iters, double tol) {
  const Eigen::Index l_len = pilots.rows();
  const Eigen::Index n_users = pilots.cols();
  const Eigen::Index m_ant = pilot_signal.cols();
  if (pilot_signal.rows() != l_len)
    throw std::invalid_argument("run_amp: pilot_signal/pilots row mismatch");

  const double beta = config.rx_power;
  const double lambda = config.activity_prob;

  // Normalized model Y/sqrt(L) = P X + N/sqrt(L); the columns of P have
  // unit norm in expectation.
  const Eigen::MatrixXcd y_bar =
      pilot_signal / std::sqrt(static_cast<double>(l_len));

  AmpPass pass = amp_pass(y_bar, pilots, lambda, beta, max_iters, tol, 1.0);
  bool restarted = false;
  if (pass.diverged) {
    restarted = true;
    pass = amp_pass(y_bar, pilots, lambda, beta, 2 * max_iters, tol, 0.75);
    if (pass.diverged)
      throw AmpDivergenceError(
          "run_amp: state diverged at iteration " +
              std::to_string(pass.diverged_at) + " despite damping",
          pass.diverged_at);
  }

  JadceResult result;
  result.restarted = restarted;
  result.iterations_run = pass.iterations;
  result.tau_sq_final = pass.tau_sq;
  result.tau_sq_history = std::move(pass.tau_sq_history);
  result.effective_observations = std::move(pass.pseudo);
  const double tau_sq = result.tau_sq_final;
  result.threshold =
      detection_threshold(tau_sq, beta, static_cast<int>(m_ant));
  result.detected_active =
      detect_activity(result.effective_observations, result.threshold);

  // Linear MMSE estimate for detected users, posterior mean elsewhere.
  result.channel_estimates.resize(n_users, m_ant);
  const double cgain = beta / (beta + tau_sq);
  const LlrParams llr(tau_sq, lambda, beta, static_cast<int>(m_ant));
  std::vector<char> is_detected(n_users, 0);
  for (int n : result.detected_active) is_detected[n] = 1;
  for (Eigen::Index n = 0; n < n_users; ++n) {
    const auto row = result.effective_observations.row(n);
    if (is_detected[n]) {
      result.channel_estimates.row(n) = cgain * row;
    } else {
      const double norm_sq = row.squaredNorm();
      const double pi = stable_sigmoid(llr.logit0 + llr.g * norm_sq);
      result.channel_estimates.row(n) = (cgain * pi) * row;
    }
  }
  return result;
}

double state_evolution_step(double tau_sq, const SystemConfig& config) {
  const std::vector<double> draws = make_gamma_draws(config);
  const double load =
      static_cast<double>(config.n_users) / config.pilot_len;
  return config.noise_var / config.pilot_len +
         load * mse_per_component(tau_sq, config.activity_prob,
                                  config.rx_power, config.n_antennas, draws);
}

std::vector<double> state_evolution_trajectory(const SystemConfig& config,
                                               int n_steps) {
  const std::vector<double> draws = make_gamma_draws(config);
  const double load =
      static_cast<double>(config.n_users) / config.pilot_len;
  std::vector<double> states;
  states.reserve(n_steps + 1);
  double tau_sq = se_initial_state(config);
  states.push_back(tau_sq);
  for (int i = 0; i < n_steps; ++i) {
    tau_sq = config.noise_var / config.pilot_len +
             load * mse_per_component(tau_sq, config.activity_prob,
                                      config.rx_power, config.n_antennas,
                                      draws);
    states.push_back(tau_sq);
  }
  return states;
}

double state_evolution_fixed_point(const SystemConfig& config) {
  if (config.activity_mode == ActivityMode::kFixedCount &&
      config.pilot_len <= config.active_count)
    throw ConfigError("state evolution requires pilot_len > active_count");
  const std::vector<double> draws = make_gamma_draws(config);
  const double load =
      static_cast<double>(config.n_users) / config.pilot_len;
  double tau_sq = se_initial_state(config);
  for (int i = 0; i < 500; ++i) {
    const double next =
        config.noise_var / config.pilot_len +
        load * mse_per_component(tau_sq, config.activity_prob,
                                 config.rx_power, config.n_antennas, draws);
    if (std::fabs(next - tau_sq) < 1e-8 * tau_sq) return next;
    tau_sq = next;
  }
  const double last = state_evolution_step(tau_sq, config);
  throw SeConvergenceError("state evolution did not converge in 500 steps",
                           last, tau_sq);
}

double high_snr_fixed_point(const SystemConfig& config) {
  const int k = config.activity_mode == ActivityMode::kFixedCount
                    ? config.active_count
                    : static_cast<int>(
                          std::lround(config.activity_prob * config.n_users));
  if (config.pilot_len <= k)
    throw ConfigError("high_snr_fixed_point requires pilot_len > K");
  return config.noise_var / (config.pilot_len - k);
}

double detection_threshold(double tau_inf_sq, double rx_power,
                           int n_antennas) {
  // l = M ln(1 + beta/tau^2) * tau^2 (tau^2 + beta) / beta, the norm value
  // at which the two-hypothesis likelihoods are equal.
  return n_antennas * std::log1p(rx_power / tau_inf_sq) * tau_inf_sq *
         (tau_inf_sq + rx_power) / rx_power;
}

std::vector<int> detect_activity(const Eigen::MatrixXcd& estimates,
                                 double threshold) {
  std::vector<int> detected;
  for (Eigen::Index n = 0; n < estimates.rows(); ++n)
    if (estimates.row(n).squaredNorm() > threshold)
      detected.push_back(static_cast<int>(n));
  return detected;
}

}  // namespace gfra
