#ifndef GFRA_SPECIAL_FUNCTIONS_HPP
#define GFRA_SPECIAL_FUNCTIONS_HPP

#include <cstdint>

// Scalar kernels shared by the whole library: Gaussian tail, its inverse,
// regularized incomplete gamma functions, and log-domain binomial mass.
// All functions are pure and reentrant.

namespace gfra {

// Standard Gaussian upper-tail probability Q(x) = P(Z > x), Z ~ N(0,1).
// Saturates at 0/1 for extreme arguments instead of raising.
double q_function(double x) noexcept;

// Inverse of q_function on (0,1). Throws std::domain_error outside (0,1).
double q_inverse(double p);

// Regularized incomplete gamma functions P(a,x) and Q(a,x), P + Q = 1.
// P(a,x) is the CDF of a Gamma(shape=a, scale=1) variate at x.
// Preconditions: a > 0, x >= 0 (std::domain_error otherwise).
double reg_lower_gamma(double shape, double x);
double reg_upper_gamma(double shape, double x);

// log of C(n,k) p^k (1-p)^(n-k), computed through lgamma so that huge n and
// tiny p do not underflow. p in {0,1} handled exactly (-inf where the mass
// is zero).
double log_binomial_pmf(std::int64_t n, std::int64_t k, double p);

}  // namespace gfra

#endif
