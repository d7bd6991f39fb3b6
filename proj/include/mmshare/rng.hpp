#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace mmshare::rng {

// Philox4x32-10 block function. Counter-based: every 128-bit counter value
// maps to four independent 32-bit outputs under a 64-bit key, so streams
// can be indexed rather than advanced. That makes draws a pure function of
// (seed, drop, entity, tag, position) and Monte Carlo results independent
// of thread scheduling.
struct Philox {
  static constexpr std::uint32_t kW32A = 0x9E3779B9u;
  static constexpr std::uint32_t kW32B = 0xBB67AE85u;
  static constexpr std::uint32_t kM4x32A = 0xD2511F53u;
  static constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = static_cast<std::uint64_t>(kM4x32A) * ctr[0];
      std::uint64_t p1 = static_cast<std::uint64_t>(kM4x32B) * ctr[2];
      std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      std::array<std::uint32_t, 4> next = {hi1 ^ ctr[1] ^ key[0], lo1,
                                           hi0 ^ ctr[3] ^ key[1], lo0};
      ctr = next;
      key[0] += kW32A;
      key[1] += kW32B;
    }
    return ctr;
  }
};

// One logical substream, addressed by (seed, drop, entity, tag). Entities
// are per-drop objects (a base station, a site, an operator); tags separate
// the independent quantities drawn for one entity.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint32_t drop, std::uint32_t entity,
         std::uint32_t tag)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        base_{drop, entity, tag, 0u} {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform on [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  // Strictly positive uniform, for logs.
  double next_double_pos() {
    double u;
    do {
      u = next_double();
    } while (u == 0.0);
    return u;
  }

  double exponential(double mean = 1.0) {
    return -mean * std::log(next_double_pos());
  }

  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = next_double_pos();
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  // Marsaglia-Tsang for shape >= 1, boosted by the U^{1/shape} trick below 1.
  double gamma(double shape, double scale) {
    if (shape < 1.0) {
      double u = next_double_pos();
      return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double z = normal();
      double v = 1.0 + c * z;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = next_double_pos();
      if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) {
        return d * v * scale;
      }
    }
  }

  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
      // Knuth multiplication method.
      double limit = std::exp(-mean);
      double prod = next_double();
      std::uint64_t n = 0;
      while (prod > limit) {
        prod *= next_double();
        ++n;
      }
      return n;
    }
    return poisson_ptrs(mean);
  }

 private:
  void refill() {
    std::array<std::uint32_t, 4> ctr = base_;
    ctr[3] = block_;
    buf_ = Philox::block(ctr, key_);
    pos_ = 0;
    ++block_;
  }

  // Hormann's PTRS transformed-rejection sampler; exact for mean >= 10.
  std::uint64_t poisson_ptrs(double mean) {
    double b = 0.931 + 2.53 * std::sqrt(mean);
    double a = -0.059 + 0.02483 * b;
    double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    double vr = 0.9277 - 3.6224 / (b - 2.0);
    double lmu = std::log(mean);
    for (;;) {
      double u = next_double() - 0.5;
      double v = next_double();
      double us = 0.5 - std::fabs(u);
      double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          k * lmu - mean - std::lgamma(k + 1.0)) {
        return static_cast<std::uint64_t>(k);
      }
    }
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> base_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  std::uint32_t block_ = 0;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace mmshare::rng
