#ifndef GFRA_FINITE_BLOCKLENGTH_HPP
#define GFRA_FINITE_BLOCKLENGTH_HPP

// Normal-approximation coding results for the complex AWGN channel:
// capacity, dispersion, the BLER-vs-SNR map, and its three-piece
// linearization.

namespace gfra {

struct CodeParams {
  int blocklength = 1;  // d, symbols
  double rate = 1.0;    // R = c/d, bits per symbol

  // SNR at which capacity equals the rate, r = 2^R - 1. The proof text
  // defines r this way for C = log2(1+gamma); the real-channel convention
  // 2^{2R}-1 is deliberately not used anywhere downstream.
  double snr_threshold() const;
};

struct LinearizedBler {
  double chi = 0.0;      // sqrt(1 / (2 pi (2^{2R} - 1)))
  double v_low = 0.0;    // r - 1/(2 chi sqrt(d))
  double mu_high = 0.0;  // r + 1/(2 chi sqrt(d))
  double r_thresh = 0.0;
};

// C(gamma) = log2(1 + gamma), bits per symbol.
double capacity(double snr);

// V(gamma) = gamma (gamma+2) / (2 (gamma+1)^2) * log2(e)^2, bounded by
// log2(e)^2 / 2.
double dispersion(double snr);

// Q((C(gamma) - R) / sqrt(V(gamma)/d)); returns 1 at snr = 0 where the
// dispersion vanishes with capacity below rate.
double bler_normal_approx(double snr, const CodeParams& code);

LinearizedBler linearize_bler(const CodeParams& code);

// Piecewise-linear map: 1 below v, 1/2 - chi sqrt(d) (gamma - r) between,
// 0 above mu.
double bler_linearized(double snr, const CodeParams& code);

}  // namespace gfra

#endif
