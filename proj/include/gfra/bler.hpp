#ifndef GFRA_BLER_HPP
#define GFRA_BLER_HPP

#include <stdexcept>

#include "gfra/config.hpp"
#include "gfra/detection.hpp"
#include "gfra/finite_blocklength.hpp"

// Conditional post-processing SNR law after zero forcing, conditional BLER
// (numerical expectation and closed form), the detection-outcome binomial
// mixture, the dominant-term shortcut, and the overall per-user error rate.

namespace gfra {

struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& msg, double achieved)
      : std::runtime_error(msg), achieved_tol(achieved) {}
  double achieved_tol;
};

// Gamma law of the post-processing SNR of a correctly detected user,
// conditioned on e missed and f false-alarmed users.
//
// The printed density normalizer and the 2*theta_1 CDF argument are mutually
// inconsistent; the law here is taken from the proof's construction: the
// ZF quadratic form is a sum of (M - K + e - f + 1) unit-mean exponentials
// with per-component estimate variance beta^2/(beta+tau^2), divided by the
// interference-plus-noise total. A matrix-sampling KS test pins the
// convention (see tests and the validation suite).
struct SnrLaw {
  double shape = 1.0;   // theta_2 = M - K + e - f + 1
  double scale = 1.0;   // estimate variance / interference-plus-noise sum
  int miss_count = 0;   // e
  int false_count = 0;  // f
  bool feasible = true; // M >= K - e + f

  double mean() const { return shape * scale; }
};

// shape_offset is a fault-injection hook for the validation suite's negative
// control (off-by-one theta_2); it is zero everywhere else.
SnrLaw conditional_snr_law(int e, int f, const SystemConfig& config,
                           double tau_inf_sq, int shape_offset = 0);

// Expectation of bler_normal_approx under the law, by adaptive quadrature to
// absolute tolerance 1e-10 over an interval covering all but 1e-12 of the
// Gamma mass and the whole Q transition. Infeasible law -> 1.
double conditional_bler_numerical(const SnrLaw& law, const CodeParams& code);

// Gamma CDF of the law at r = 2^R - 1. Infeasible law -> 1.
double conditional_bler_closed_form(const SnrLaw& law, const CodeParams& code);

enum class ConditionalPath { kClosedForm, kNumerical };

struct BlerReport {
  // Bracket around the detection-outcome mixture: lo counts enumerated
  // terms, hi conservatively adds the neglected binomial tail as BLER 1.
  double bler_mixture_lo = 0.0;
  double bler_mixture_hi = 0.0;
  double bler_dominant = 0.0;  // zero-error term shortcut
  double p_overall_lo = 0.0;   // P_M + (1-P_M) * mixture, per bracket end
  double p_overall_hi = 0.0;
  long terms_used = 0;
  double p_miss = 0.0;
  double p_false = 0.0;
  double tau_inf_sq = 0.0;
};

// Double binomial mixture over detection outcomes (e, f), enumerated in
// decreasing weight until the neglected tail mass drops below trunc_tol.
BlerReport mixture_bler(const SystemConfig& config, const DetectionStats& stats,
                        const CodeParams& code, double trunc_tol,
                        ConditionalPath path = ConditionalPath::kClosedForm);

// (1-P_F)^(N-K) (1-P_M)^K times the closed-form conditional BLER at e=f=0.
double dominant_term_bler(const SystemConfig& config,
                          const DetectionStats& stats, const CodeParams& code);

// P_M + (1 - P_M) * bler_detected.
double overall_bler(double p_miss, double bler_detected);

// Code parameters implied by the config: d = T - L, R = c/d.
CodeParams code_params(const SystemConfig& config);

}  // namespace gfra

#endif
