#ifndef GFRA_AMP_HPP
#define GFRA_AMP_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfra/config.hpp"

// AMP for joint activity detection and channel estimation from the received
// pilot signal, plus the scalar state-evolution recursion and its fixed point.

namespace gfra {

// Raised when non-finite values appear mid-iteration.
struct AmpDivergenceError : std::runtime_error {
  AmpDivergenceError(const std::string& msg, int iter)
      : std::runtime_error(msg), iteration(iter) {}
  int iteration;
};

// Raised when the state-evolution recursion fails to settle.
struct SeConvergenceError : std::runtime_error {
  SeConvergenceError(const std::string& msg, double last, double prev)
      : std::runtime_error(msg), last_state(last), prev_state(prev) {}
  double last_state;
  double prev_state;
};

struct JadceResult {
  // Row n: linear MMSE channel estimate for detected users, the denoised
  // effective estimate (posterior mean of u_n h_n) elsewhere.
  Eigen::MatrixXcd channel_estimates;
  // Final pseudo-data rows x_n + (P^H R)_n ~ X_n + tau V; the detection
  // statistic is the squared norm of these rows.
  Eigen::MatrixXcd effective_observations;
  std::vector<int> detected_active;
  double tau_sq_final = 0.0;
  double threshold = 0.0;
  int iterations_run = 0;
  // tau_t^2 = ||R||_F^2 / (L M) per iteration, starting at t = 0.
  std::vector<double> tau_sq_history;
  // True when the undamped pass went unstable and the damped rerun produced
  // this result. At high per-user SNR the plain iteration diverges on a
  // few percent of realizations; a damped rerun reaches the same fixed point.
  bool restarted = false;
};

// Posterior probability that a user is active given the squared norm of its
// effective observation (two-hypothesis Gaussian likelihood ratio with prior
// odds lambda/(1-lambda)).
double posterior_activity_prob(double norm_sq, double tau_sq,
                               double activity_prob, double rx_power,
                               int n_antennas);

// Bayes posterior mean of X given X + tau V = obs under the prior
// X ~ (1-lambda) delta_0 + lambda CN(0, beta I), together with the average
// diagonal of the (Wirtinger) Jacobian needed for the Onsager correction.
std::pair<Eigen::VectorXcd, double> mmse_denoiser(const Eigen::VectorXcd& obs,
                                                  double tau_sq,
                                                  double activity_prob,
                                                  double rx_power);

JadceResult run_amp(const Eigen::MatrixXcd& pilot_signal,
                    const Eigen::MatrixXcd& pilots, const SystemConfig& config,
                    int max_iters, double tol);

inline JadceResult run_amp(const Eigen::MatrixXcd& pilot_signal,
                           const Eigen::MatrixXcd& pilots,
                           const SystemConfig& config) {
  return run_amp(pilot_signal, pilots, config, config.solver.amp_max_iters,
                 config.solver.amp_tol);
}

// One application of the state-evolution map
//   tau^2 -> sigma^2/L + (N/L) * mse(tau^2),
// with the expectation taken by Monte-Carlo over the norm statistic of
// X + tau V (fixed internal seed, deterministic).
double state_evolution_step(double tau_sq, const SystemConfig& config);

// States tau_0^2 .. tau_{n_steps}^2 starting from the natural initial
// condition sigma^2/L + (N/L) lambda beta.
std::vector<double> state_evolution_trajectory(const SystemConfig& config,
                                               int n_steps);

// Fixed point of the recursion; converges when the relative change drops
// below 1e-8 (at most 500 iterations, SeConvergenceError otherwise).
double state_evolution_fixed_point(const SystemConfig& config);

// High-SNR limit sigma^2 / (L - K).
double high_snr_fixed_point(const SystemConfig& config);

// Likelihood-ratio threshold l = M ln(1 + beta/tau^2) / (1/tau^2 - 1/(tau^2+beta)).
double detection_threshold(double tau_inf_sq, double rx_power, int n_antennas);

// {n : ||row n||^2 > threshold}
std::vector<int> detect_activity(const Eigen::MatrixXcd& estimates,
                                 double threshold);

}  // namespace gfra

#endif
