#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string_view>

#include "riscgen/error.hpp"

namespace riscgen {

// Keyed stream derivation. Every random decision in the toolkit is drawn
// from a stream identified by (seed, label, index), never from a shared
// sequential generator, so work can be partitioned freely.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Child key for (seed, label, index).
constexpr std::uint64_t derive_key(std::uint64_t seed, std::string_view label,
                                   std::uint64_t index = 0) {
  std::uint64_t h = splitmix64(seed ^ 0x5851F42D4C957F2DULL);
  h = splitmix64(h ^ fnv1a64(label));
  return splitmix64(h ^ splitmix64(index + 0x2545F4914F6CDD1DULL));
}

/// xoshiro256** seeded through splitmix64. Distributions are implemented
/// here rather than with <random> adaptors so output is identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t key) {
    std::uint64_t x = key;
    for (auto& s : state_) {
      x += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      s = z ^ (z >> 31);
    }
  }

  static Rng stream(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) {
    return Rng(derive_key(seed, label, index));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), unbiased (Lemire).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorCode::InvalidConfig, "Rng::below(0)");
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw Error(ErrorCode::InvalidConfig, "Rng::between with hi < lo");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    return lo + static_cast<std::int64_t>(below(span));
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform() < p;
  }

  /// Index drawn from (not necessarily normalised) non-negative weights.
  std::size_t categorical(std::span<const double> weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (weights.empty() || !(total > 0.0)) {
      throw Error(ErrorCode::InvalidConfig, "categorical draw over empty or zero weights");
    }
    const double u = uniform() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] > 0.0) last_positive = i;
      acc += weights[i];
      if (u < acc) return i;
    }
    return last_positive;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace riscgen
