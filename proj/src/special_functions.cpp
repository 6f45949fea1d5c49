#include "gfra/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gfra {

namespace {

constexpr double kSqrt1_2 = 0.70710678118654752440;

// Continued-fraction tail of the Gaussian upper tail, used where the erfc
// argument is large. Q(x) = phi(x) / (x + 1/(x + 2/(x + 3/(x + ...)))).
double q_tail_cf(double x) noexcept {
  double cf = 0.0;
  for (int k = 60; k >= 1; --k) cf = static_cast<double>(k) / (x + cf);
  const double phi = std::exp(-0.5 * x * x) * 0.39894228040143267794;
  return phi / (x + cf);
}

// Lower incomplete gamma by power series, regularized. Valid for x < a + 1.
double gamma_series(double a, double x) {
  if (x <= 0.0) return 0.0;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  const double lg = a * std::log(x) - x - std::lgamma(a);
  return sum * std::exp(lg);
}

// Upper incomplete gamma by Lentz continued fraction, regularized.
// Valid (and fast) for x >= a + 1.
double gamma_cont_frac(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-17) break;
  }
  const double lg = a * std::log(x) - x - std::lgamma(a);
  return std::exp(lg) * h;
}

// Acklam's rational approximation to the standard normal quantile,
// refined below by one Halley step against erfc.
double norm_quantile_acklam(double p) {
  static const double a1 = -3.969683028665376e+01, a2 = 2.209460984245205e+02,
                      a3 = -2.759285104469687e+02, a4 = 1.383577518672690e+02,
                      a5 = -3.066479806614716e+01, a6 = 2.506628277459239e+00;
  static const double b1 = -5.447609879822406e+01, b2 = 1.615858368580409e+02,
                      b3 = -1.556989798598866e+02, b4 = 6.680131188771972e+01,
                      b5 = -1.328068155288572e+01;
  static const double c1 = -7.784894002430293e-03, c2 = -3.223964580411365e-01,
                      c3 = -2.400758277161838e+00, c4 = -2.549732539343734e+00,
                      c5 = 4.374664141464968e+00, c6 = 2.938163982698783e+00;
  static const double d1 = 7.784695709041462e-03, d2 = 3.224671290700398e-01,
                      d3 = 2.445134137142996e+00, d4 = 3.754408661907416e+00;
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
           ((((d1 * q + d2) * q + d3) * q + d4) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
           ((((d1 * q + d2) * q + d3) * q + d4) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a1 * r + a2) * r + a3) * r + a4) * r + a5) * r + a6) * q /
         (((((b1 * r + b2) * r + b3) * r + b4) * r + b5) * r + 1.0);
}

}  // namespace

double q_function(double x) noexcept {
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x > 8.0) {
    if (x > 37.6) return 0.0;  // below the normal double range
    return q_tail_cf(x);
  }
  if (x < -8.0) return 1.0 - q_function(-x);
  return 0.5 * std::erfc(x * kSqrt1_2);
}

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("q_inverse: p must be in (0,1), got " +
                            std::to_string(p));
  // Q^{-1}(p) = -Phi^{-1}(p); polish with a Halley step on Q(x) - p = 0.
  double x = -norm_quantile_acklam(p);
  const double e = q_function(x) - p;
  const double phi = std::exp(-0.5 * x * x) * 0.39894228040143267794;
  if (phi > 0.0) {
    const double u = e / phi;  // Newton step (Q' = -phi)
    x += u / (1.0 - 0.5 * x * u);
  }
  return x;
}

double reg_lower_gamma(double shape, double x) {
  if (!(shape > 0.0) || !(x >= 0.0))
    throw std::domain_error("reg_lower_gamma: need shape > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (x < shape + 1.0) return gamma_series(shape, x);
  return 1.0 - gamma_cont_frac(shape, x);
}

double reg_upper_gamma(double shape, double x) {
  if (!(shape > 0.0) || !(x >= 0.0))
    throw std::domain_error("reg_upper_gamma: need shape > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < shape + 1.0) return 1.0 - gamma_series(shape, x);
  return gamma_cont_frac(shape, x);
}

double log_binomial_pmf(std::int64_t n, std::int64_t k, double p) {
  if (k < 0 || n < 0 || k > n)
    throw std::domain_error("log_binomial_pmf: need 0 <= k <= n");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("log_binomial_pmf: p outside [0,1]");
  const double neg_inf = -std::numeric_limits<double>::infinity();
  if (p == 0.0) return k == 0 ? 0.0 : neg_inf;
  if (p == 1.0) return k == n ? 0.0 : neg_inf;
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  double lg = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) -
              std::lgamma(nd - kd + 1.0);
  if (k > 0) lg += kd * std::log(p);
  if (k < n) lg += (nd - kd) * std::log1p(-p);
  return lg;
}

}  // namespace gfra
