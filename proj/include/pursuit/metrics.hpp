// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form guarantees and evaluation metrics: the minimum captured-energy
// bound behind the adaptive batch-width rule, the worst-case support
// recovery condition, the empirical dynamic-range envelope, and the
// error / support-accuracy measures used by the benchmark harness.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pursuit/recovery.hpp"
#include "pursuit/signals.hpp"

namespace pursuit::metrics {

using signals::SparseSignal;

// Worst-case fraction of the top-K proxy energy captured by a batch whose
// boundary drop exceeds T: 1 / (1 + (K-1)(1-T)^2).  Strictly increasing in
// T, strictly decreasing in K, equal to 1 at K = 1.
inline double p_min(std::size_t K, double T) {
  if (K == 0) throw std::invalid_argument("p_min: K must be positive");
  if (!(T > 0.0) || !(T < 1.0)) {
    throw std::invalid_argument("p_min: T outside (0, 1)");
  }
  const double q = (1.0 - T) * (1.0 - T);
  return 1.0 / (1.0 + static_cast<double>(K - 1) * q);
}

// Energy of the k strongest magnitudes relative to the K strongest.
inline double energy_fraction(std::span<const double> sorted_magnitudes,
                              std::size_t k, std::size_t K) {
  if (k == 0 || k > K || K > sorted_magnitudes.size()) {
    throw std::invalid_argument("energy_fraction: need 1 <= k <= K <= length");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    const double e = sorted_magnitudes[i] * sorted_magnitudes[i];
    den += e;
    if (i < k) num += e;
  }
  if (den == 0.0) {
    throw std::invalid_argument("energy_fraction: all-zero magnitude prefix");
  }
  return num / den;
}

inline double energy_fraction(const recovery::RankedProxy& ranked,
                              std::size_t k, std::size_t K) {
  return energy_fraction(
      std::span<const double>(ranked.magnitudes.data(), ranked.magnitudes.size()),
      k, K);
}

// Right-hand side of the worst-case support recovery condition at isometry
// order K = 2 * sparsity:  2 * (eps + delta/(1-delta) * sqrt(K/2) * max|x|).
template <linalg::Scalar T>
double recovery_condition_bound(const SparseSignal<T>& x, double delta_k,
                                double noise_bound) {
  if (!(delta_k >= 0.0) || !(delta_k < 1.0)) {
    throw std::invalid_argument("recovery_condition: delta outside [0, 1)");
  }
  if (!(noise_bound >= 0.0)) {
    throw std::invalid_argument("recovery_condition: negative noise bound");
  }
  if (x.support.empty()) {
    throw std::invalid_argument("recovery_condition: empty signal");
  }
  double max_mag = 0.0;
  for (const T& v : x.values) max_mag = std::max(max_mag, linalg::abs_of(v));
  const double s = static_cast<double>(x.sparsity());
  return 2.0 * (noise_bound + delta_k / (1.0 - delta_k) * std::sqrt(s) * max_mag);
}

// True when every nonzero of x clears the bound above.
template <linalg::Scalar T>
bool recovery_condition(const SparseSignal<T>& x, double delta_k,
                        double noise_bound) {
  const double rhs = recovery_condition_bound(x, delta_k, noise_bound);
  double min_mag = std::numeric_limits<double>::infinity();
  for (const T& v : x.values) min_mag = std::min(min_mag, linalg::abs_of(v));
  return min_mag >= rhs;
}

// Empirical dynamic-range envelope (natural logarithm):
//   0.06 * sqrt(s) / (sqrt(ln s) - 0.03) + 2 * noise_bound,  s >= 2.
inline double dynamic_range_curve(std::size_t s, double noise_bound) {
  if (s < 2) throw std::invalid_argument("dynamic_range_curve: s must be >= 2");
  if (!(noise_bound >= 0.0)) {
    throw std::invalid_argument("dynamic_range_curve: negative noise bound");
  }
  const double root_s = std::sqrt(static_cast<double>(s));
  const double root_ln = std::sqrt(std::log(static_cast<double>(s)));
  return 0.06 * root_s / (root_ln - 0.03) + 2.0 * noise_bound;
}

// ||x_est - x_true||_2 / ||x_true||_2 over the union support.
template <linalg::Scalar T>
double relative_error(const SparseSignal<T>& x_true,
                      const SparseSignal<T>& x_est) {
  if (x_true.ambient_dim != x_est.ambient_dim) {
    throw std::invalid_argument("relative_error: ambient dimension mismatch");
  }
  const double tnorm = x_true.norm();
  if (tnorm == 0.0) {
    throw std::invalid_argument("relative_error: zero reference signal");
  }
  double acc = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x_true.support.size() || j < x_est.support.size()) {
    if (j >= x_est.support.size() ||
        (i < x_true.support.size() && x_true.support[i] < x_est.support[j])) {
      acc += linalg::abs2(x_true.values[i]);
      ++i;
    } else if (i >= x_true.support.size() ||
               x_est.support[j] < x_true.support[i]) {
      acc += linalg::abs2(x_est.values[j]);
      ++j;
    } else {
      acc += linalg::abs2(x_est.values[j] - x_true.values[i]);
      ++i;
      ++j;
    }
  }
  return std::sqrt(acc) / tnorm;
}

// Exact recovery = relative error strictly below tol.
template <linalg::Scalar T>
bool exact_recovery(const SparseSignal<T>& x_true, const SparseSignal<T>& x_est,
                    double tol = 1e-6) {
  return relative_error(x_true, x_est) < tol;
}

struct GridShape {
  std::size_t spatial = 0;
  std::size_t doppler = 0;
};

struct SupportMetrics {
  std::size_t tolerance = 0;
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t false_alarms = 0;
};

// Support accuracy under a cell tolerance.  With a grid, indices are (cell
// row, cell column) pairs and distance is Chebyshev; without one they are
// positions on a line.  Hits are one-to-one nearest-first matches between
// true and estimated cells within the tolerance; false alarms are estimated
// cells with no true cell within the tolerance at all.
inline SupportMetrics support_metrics(std::span<const std::size_t> true_support,
                                      std::span<const std::size_t> est_support,
                                      std::optional<GridShape> grid,
                                      std::size_t tolerance) {
  if (grid) {
    if (grid->spatial == 0 || grid->doppler == 0) {
      throw std::invalid_argument("support_metrics: empty grid");
    }
    const std::size_t ambient = grid->spatial * grid->doppler;
    for (std::size_t v : true_support) {
      if (v >= ambient) throw std::invalid_argument("support_metrics: true index out of grid");
    }
    for (std::size_t v : est_support) {
      if (v >= ambient) throw std::invalid_argument("support_metrics: estimated index out of grid");
    }
  }

  const auto distance = [&](std::size_t a, std::size_t b) -> std::size_t {
    if (!grid) return a > b ? a - b : b - a;
    const std::size_t ar = a / grid->doppler, ac = a % grid->doppler;
    const std::size_t br = b / grid->doppler, bc = b % grid->doppler;
    const std::size_t dr = ar > br ? ar - br : br - ar;
    const std::size_t dc = ac > bc ? ac - bc : bc - ac;
    return std::max(dr, dc);
  };

  struct Pair {
    std::size_t dist, ti, ei;
  };
  std::vector<Pair> pairs;
  std::vector<bool> est_near(est_support.size(), false);
  for (std::size_t ti = 0; ti < true_support.size(); ++ti) {
    for (std::size_t ei = 0; ei < est_support.size(); ++ei) {
      const std::size_t d = distance(true_support[ti], est_support[ei]);
      if (d <= tolerance) {
        pairs.push_back({d, ti, ei});
        est_near[ei] = true;
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.ti != b.ti) return a.ti < b.ti;
    return a.ei < b.ei;
  });

  std::vector<bool> used_true(true_support.size(), false);
  std::vector<bool> used_est(est_support.size(), false);
  SupportMetrics out;
  out.tolerance = tolerance;
  for (const Pair& p : pairs) {
    if (used_true[p.ti] || used_est[p.ei]) continue;
    used_true[p.ti] = true;
    used_est[p.ei] = true;
    ++out.hits;
  }
  out.misses = true_support.size() - out.hits;
  for (std::size_t ei = 0; ei < est_support.size(); ++ei) {
    if (!est_near[ei]) ++out.false_alarms;
  }
  return out;
}

}  // namespace pursuit::metrics
