#include "gfra/detection.hpp"

#include <stdexcept>

#include "gfra/amp.hpp"
#include "gfra/special_functions.hpp"

namespace gfra {

double missed_detection_prob(int n_antennas, double rx_power,
                             double tau_inf_sq, double threshold) {
  if (!(rx_power > 0.0) || !(tau_inf_sq > 0.0) || !(threshold >= 0.0))
    throw std::domain_error("missed_detection_prob: nonpositive input");
  return reg_lower_gamma(n_antennas, threshold / (rx_power + tau_inf_sq));
}

double false_alarm_prob(int n_antennas, double tau_inf_sq, double threshold) {
  if (!(tau_inf_sq > 0.0) || !(threshold >= 0.0))
    throw std::domain_error("false_alarm_prob: nonpositive input");
  return reg_upper_gamma(n_antennas, threshold / tau_inf_sq);
}

double estimation_error_variance(double rx_power, double tau_inf_sq,
                                 bool detected) {
  if (!(rx_power > 0.0) || !(tau_inf_sq >= 0.0))
    throw std::domain_error("estimation_error_variance: nonpositive input");
  if (!detected) return rx_power;
  return rx_power * tau_inf_sq / (rx_power + tau_inf_sq);
}

DetectionStats detection_stats(const SystemConfig& config, double tau_inf_sq) {
  DetectionStats stats;
  stats.tau_inf_sq = tau_inf_sq;
  stats.threshold =
      detection_threshold(tau_inf_sq, config.rx_power, config.n_antennas);
  stats.p_miss = missed_detection_prob(config.n_antennas, config.rx_power,
                                       tau_inf_sq, stats.threshold);
  stats.p_false =
      false_alarm_prob(config.n_antennas, tau_inf_sq, stats.threshold);
  stats.err_var_detected =
      estimation_error_variance(config.rx_power, tau_inf_sq, true);
  stats.err_var_missed =
      estimation_error_variance(config.rx_power, tau_inf_sq, false);
  return stats;
}

double missed_detection_prob_printed(int n_antennas, double rx_power,
                                     double tau_inf_sq, double threshold) {
  const double arg =
      threshold * threshold / (rx_power * rx_power + tau_inf_sq);
  return reg_upper_gamma(n_antennas, arg);
}

double false_alarm_prob_printed(int n_antennas, double tau_inf_sq,
                                double threshold) {
  const double arg = threshold * threshold / tau_inf_sq;
  return 1.0 - reg_upper_gamma(n_antennas, arg);
}

}  // namespace gfra
