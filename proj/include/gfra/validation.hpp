#ifndef GFRA_VALIDATION_HPP
#define GFRA_VALIDATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gfra/config.hpp"

// Cross-module oracle suite: the post-ZF SNR law against direct matrix
// sampling, state-evolution tracking of the AMP iterates, and the
// detection-probability formulas against realized rates.

namespace gfra {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

struct ValidationOptions {
  int theta2_offset = 0;  // fault injection: off-by-one SNR-law shape
  int ks_draws = 100000;
  int tracking_scenarios = 12;
  int fixed_point_scenarios = 12;
  std::uint64_t seed = 42;
  int workers = 1;
};

ValidationReport run_validation_suite(const SystemConfig& config,
                                      const ValidationOptions& opts);

// Draws of the realized post-ZF SNR 1/([(H^H H)^{-1}]_{kk} D) with
// columns sampled i.i.d. CN(0, beta^2/(beta+tau^2) I); the oracle side of
// the SNR-law distributional test.
std::vector<double> sample_zf_snr(int n_antennas, int n_detected_active,
                                  int miss_count, int false_count,
                                  double rx_power, double tau_inf_sq,
                                  double noise_var, int draws,
                                  std::uint64_t seed);

// One-sample Kolmogorov-Smirnov statistic against a Gamma(shape, scale) CDF.
double ks_statistic_gamma(std::vector<double> draws, double shape,
                          double scale);

// Asymptotic critical value at significance 0.05 or 0.01.
double ks_critical_value(int n, double alpha);

}  // namespace gfra

#endif
