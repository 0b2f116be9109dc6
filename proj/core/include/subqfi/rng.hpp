#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace subqfi {

/// Seeded deterministic random stream. The generator is fixed to
/// std::mt19937_64 (its output sequence is pinned by the standard), and the
/// uniform/normal mappings below are implemented explicitly so that a given
/// seed reproduces the same stream everywhere the same libm is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; the spare value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Complex entry with independent N(0,1) real and imaginary parts.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  /// Derived stream for parallel work; children are independent of the parent
  /// position, so chunked sampling is reproducible regardless of scheduling.
  Rng split(std::uint64_t stream) const {
    return Rng(mix(seed_ + 0x9E3779B97F4A7C15ULL * (stream + 1)));
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace subqfi
