#include "gfra/rng.hpp"

#include <cmath>

namespace gfra {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::uint32_t mulhi(std::uint32_t a, std::uint32_t b,
                           std::uint32_t* lo) noexcept {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  *lo = static_cast<std::uint32_t>(prod);
  return static_cast<std::uint32_t>(prod >> 32);
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream) noexcept
    : counter_{0u, 0u, static_cast<std::uint32_t>(stream),
               static_cast<std::uint32_t>(stream >> 32)},
      key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      block_{},
      block_pos_(4),
      cached_gaussian_(0.0),
      has_cached_gaussian_(false) {}

void Philox::refill() noexcept {
  std::array<std::uint32_t, 4> x = counter_;
  std::uint32_t k0 = key_[0], k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, lo1;
    const std::uint32_t hi0 = mulhi(kPhiloxM0, x[0], &lo0);
    const std::uint32_t hi1 = mulhi(kPhiloxM1, x[2], &lo1);
    x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  block_ = x;
  block_pos_ = 0;
  if (++counter_[0] == 0) ++counter_[1];  // 2^64 blocks per stream
}

std::uint32_t Philox::next_u32() noexcept {
  if (block_pos_ >= 4) refill();
  return block_[block_pos_++];
}

std::uint64_t Philox::next_u64() noexcept {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double Philox::next_double() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Philox::next_double_open() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Philox::next_gaussian() noexcept {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  const double r = std::sqrt(-2.0 * std::log(next_double_open()));
  const double theta = 6.283185307179586477 * next_double();
  cached_gaussian_ = r * std::sin(theta);
  has_cached_gaussian_ = true;
  return r * std::cos(theta);
}

std::complex<double> Philox::next_complex_gaussian() noexcept {
  // |z|^2 ~ Exp(1), phase uniform: exactly CN(0,1).
  const double r = std::sqrt(-std::log(next_double_open()));
  const double theta = 6.283185307179586477 * next_double();
  return {r * std::cos(theta), r * std::sin(theta)};
}

double Philox::next_gamma(double shape) noexcept {
  // Marsaglia & Tsang (2000); requires shape >= 1.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = next_gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_double_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace gfra
