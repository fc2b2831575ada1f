// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random streams.  std::mt19937_64 is bit-exact across
// implementations, but the standard *distributions* are not, so every
// transform (uniform, normal, coin, subset draw) is pinned here.  Any two
// builds given the same seed must produce identical matrices, signals and
// noise, byte for byte.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace pursuit::rng {

// splitmix64 finalizer; used both as a seed mixer and a hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Order-sensitive combine for deriving stream seeds from structured keys.
inline std::uint64_t chain(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ splitmix64(v));
}

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Standard normal via Box-Muller; the second variate of each pair is
  // cached so consecutive calls consume engine output deterministically.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  // +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? -1.0 : 1.0; }

  // Uniform integer in [0, n) by rejection; exact, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Stream::below: n == 0");
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // k distinct indices drawn uniformly from [0, n), returned sorted.
  // Partial Fisher-Yates over an explicit index table.
  std::vector<std::size_t> subset(std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("Stream::subset: k > n");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(n - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
  }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace pursuit::rng
