#include "gfra/finite_blocklength.hpp"

#include <cmath>
#include <stdexcept>

#include "gfra/special_functions.hpp"

namespace gfra {

namespace {
constexpr double kLog2E = 1.4426950408889634074;  // log2(e)
}

double CodeParams::snr_threshold() const { return std::exp2(rate) - 1.0; }

double capacity(double snr) {
  if (!(snr >= 0.0)) throw std::domain_error("capacity: snr must be >= 0");
  return std::log2(1.0 + snr);
}

double dispersion(double snr) {
  if (!(snr >= 0.0)) throw std::domain_error("dispersion: snr must be >= 0");
  const double gp1 = snr + 1.0;
  return snr * (snr + 2.0) / (2.0 * gp1 * gp1) * kLog2E * kLog2E;
}

double bler_normal_approx(double snr, const CodeParams& code) {
  if (code.blocklength < 1)
    throw std::domain_error("bler_normal_approx: blocklength must be >= 1");
  if (snr <= 0.0) return 1.0;  // zero capacity below the rate
  const double v = dispersion(snr);
  const double arg =
      (capacity(snr) - code.rate) / std::sqrt(v / code.blocklength);
  return q_function(arg);
}

LinearizedBler linearize_bler(const CodeParams& code) {
  if (code.blocklength < 1)
    throw std::domain_error("linearize_bler: blocklength must be >= 1");
  LinearizedBler lin;
  lin.r_thresh = code.snr_threshold();
  lin.chi = std::sqrt(1.0 /
                      (2.0 * M_PI * (std::exp2(2.0 * code.rate) - 1.0)));
  const double half_width =
      0.5 / (lin.chi * std::sqrt(static_cast<double>(code.blocklength)));
  lin.v_low = lin.r_thresh - half_width;
  lin.mu_high = lin.r_thresh + half_width;
  return lin;
}

double bler_linearized(double snr, const CodeParams& code) {
  const LinearizedBler lin = linearize_bler(code);
  if (snr <= lin.v_low) return 1.0;
  if (snr >= lin.mu_high) return 0.0;
  const double a = 0.5 - lin.chi * std::sqrt(static_cast<double>(
                             code.blocklength)) *
                             (snr - lin.r_thresh);
  return std::min(1.0, std::max(0.0, a));
}

}  // namespace gfra
