#ifndef GFRA_DETECTION_HPP
#define GFRA_DETECTION_HPP

#include "gfra/config.hpp"

// Closed-form activity-detection error probabilities and channel-estimation
// error variances at the converged state.
//
// Note on conventions: with the threshold l applied to the squared norm of
// an effective observation, the statistic is Gamma(M, beta + tau^2) for an
// active user and Gamma(M, tau^2) for an inactive one. A miss is the active
// statistic falling below l, so P_M is a regularized *lower* incomplete
// gamma at l/(beta+tau^2) and P_F a regularized *upper* one at l/tau^2.
// The printed arguments l^2/(beta^2+tau^2) mix inconsistent units and give
// the wrong limits as l -> 0 / infinity; they are kept available behind
// `printed_variant` for comparison only.

namespace gfra {

struct DetectionStats {
  double p_miss = 0.0;            // P_M
  double p_false = 0.0;           // P_F
  double err_var_detected = 0.0;  // beta tau^2/(beta+tau^2)
  double err_var_missed = 0.0;    // beta
  double tau_inf_sq = 0.0;
  double threshold = 0.0;         // l
};

double missed_detection_prob(int n_antennas, double rx_power,
                             double tau_inf_sq, double threshold);
double false_alarm_prob(int n_antennas, double tau_inf_sq, double threshold);

// beta tau^2/(beta+tau^2) when detected, beta otherwise.
double estimation_error_variance(double rx_power, double tau_inf_sq,
                                 bool detected);

// Bundles the converged-state quantities for a config; tau_inf_sq comes from
// the state-evolution fixed point (or the high-SNR law in fast paths).
DetectionStats detection_stats(const SystemConfig& config, double tau_inf_sq);

// Literal transcription of the printed formulas, for side-by-side debugging.
double missed_detection_prob_printed(int n_antennas, double rx_power,
                                     double tau_inf_sq, double threshold);
double false_alarm_prob_printed(int n_antennas, double tau_inf_sq,
                                double threshold);

}  // namespace gfra

#endif
