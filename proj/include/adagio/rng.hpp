#pragma once

#include <cstdint>
#include <cmath>
#include <string_view>

namespace adagio {

// Finalizer of the splitmix64 generator. Bijective on 64-bit words with good
// avalanche behaviour; used both as a stream step and as a position hash.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 64-bit FNV-1a over a byte string.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Derives a per-purpose sub-seed from a master seed ("jl", "sampling",
// "ties", "folds", ...), so one user-facing seed reproduces a whole run.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose) {
  return mix64(mix64(seed) ^ fnv1a64(purpose));
}

// Counter-based hash of a matrix position. Depends only on (seed, i, j),
// never on generation order, so matrices can be filled in parallel blocks
// with bit-identical results.
inline std::uint64_t hash_position(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  return mix64(mix64(mix64(seed) ^ i) ^ j);
}

// +1.0 or -1.0 with equal probability, from the position hash.
inline double rademacher_sign(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  return (hash_position(seed, i, j) >> 63) ? -1.0 : 1.0;
}

// Small deterministic generator (splitmix64 stream). The standard library's
// distributions are not bit-specified across implementations, so everything
// that must reproduce exactly goes through this class.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % bound;
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; caches the second deviate.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = unit();
    while (u1 <= 0.0) u1 = unit();
    const double u2 = unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace adagio
