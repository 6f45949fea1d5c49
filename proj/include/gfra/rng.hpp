#ifndef GFRA_RNG_HPP
#define GFRA_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

// Counter-based pseudorandom generator (Philox 4x32-10, Salmon et al. 2011).
// Every (seed, stream) pair is an independent substream, so draws are
// order-insensitive across streams: trial t / user n substreams can be
// generated in any order, on any worker, with identical results.

namespace gfra {

class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;

  // Uniform on [0,1) with 53 random bits.
  double next_double() noexcept;
  // Uniform on (0,1], safe as a log() argument.
  double next_double_open() noexcept;

  // Standard real Gaussian via Box-Muller (caches the second value).
  double next_gaussian() noexcept;

  // CN(0,1): real and imaginary parts are independent N(0, 1/2).
  std::complex<double> next_complex_gaussian() noexcept;

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze (shape >= 1).
  double next_gamma(double shape) noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> block_;
  int block_pos_;
  double cached_gaussian_;
  bool has_cached_gaussian_;
};

// Deterministic 64-bit mix for deriving per-trial or per-component seeds
// (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace gfra

#endif
