// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Sparse test-signal generation and the measurement / noise pipeline.
// Magnitude profiles are normalized so the largest entry is exactly 1; the
// minimum-to-maximum ratio (dynamic range) is therefore controlled entirely
// by the model parameters.
//
// Draw order per generated signal is fixed: support subset, model magnitude
// draws, assignment permutation, then signs (real) or phases (complex).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "pursuit/dense.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/scalar.hpp"

namespace pursuit::signals {

using linalg::DenseMatrix;
using linalg::DenseVector;

// All nonzero entries share magnitude 1.
struct Flat {};

// n_pieces contiguous runs, one log-uniform level per piece drawn from
// [level_lo, level_hi]; sign/phase is also per piece.  n_pieces == 0 selects
// the default max(1, S/4); infeasible piece counts are clamped.
struct PiecewiseFlat {
  std::size_t n_pieces = 0;
  double level_lo = 0.1;
  double level_hi = 1.0;
};

// Magnitudes alpha^(i-1), i = 1..S; dynamic range is exactly alpha^(S-1).
struct Exponential {
  double alpha = 0.5;
};

// Magnitudes ((S-i)/S)^(1/p), i = 0..S-1, descending from 1.
struct Polynomial {
  double p = 0.5;
};

using SignalModel = std::variant<Flat, PiecewiseFlat, Exponential, Polynomial>;

template <linalg::Scalar T>
struct SparseSignal {
  std::size_t ambient_dim = 0;
  std::vector<std::size_t> support;  // strictly increasing
  std::vector<T> values;             // aligned with support, nonzero

  std::size_t sparsity() const { return support.size(); }

  DenseVector<T> dense() const {
    DenseVector<T> x(ambient_dim);
    for (std::size_t i = 0; i < support.size(); ++i) x[support[i]] = values[i];
    return x;
  }

  double norm() const {
    double acc = 0.0;
    for (const T& v : values) acc += linalg::abs2(v);
    return std::sqrt(acc);
  }

  void validate() const {
    if (support.size() != values.size()) {
      throw std::invalid_argument("SparseSignal: support/values length mismatch");
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (support[i] >= ambient_dim) {
        throw std::invalid_argument("SparseSignal: support index out of range");
      }
      if (i > 0 && support[i] <= support[i - 1]) {
        throw std::invalid_argument("SparseSignal: support not strictly increasing");
      }
      if (values[i] == T{} || !linalg::finite(values[i])) {
        throw std::invalid_argument("SparseSignal: zero or non-finite value");
      }
    }
  }
};

namespace detail {

inline std::size_t resolve_pieces(const PiecewiseFlat& pw, std::size_t n,
                                  std::size_t s) {
  std::size_t pieces = pw.n_pieces == 0 ? std::max<std::size_t>(1, s / 4)
                                        : pw.n_pieces;
  pieces = std::min({pieces, s, n - s + 1});  // runs need s cells + gaps
  return std::max<std::size_t>(1, pieces);
}

// Support made of `pieces` contiguous runs separated by at least one empty
// cell, plus the per-run value levels.  Run lengths come from a uniform
// composition of s (stars and bars), run placement from a uniform
// composition of the leftover empty cells.
struct PiecewiseLayout {
  std::vector<std::size_t> run_start;
  std::vector<std::size_t> run_len;
};

inline PiecewiseLayout piecewise_layout(std::size_t n, std::size_t s,
                                        std::size_t pieces, rng::Stream& rs) {
  PiecewiseLayout out;
  // Run lengths: cut s items at pieces-1 of the s-1 interior positions.
  std::vector<std::size_t> cuts = rs.subset(s - 1, pieces - 1);
  out.run_len.reserve(pieces);
  std::size_t prev = 0;
  for (std::size_t c : cuts) {
    out.run_len.push_back(c + 1 - prev);
    prev = c + 1;
  }
  out.run_len.push_back(s - prev);

  // Extra gap cells beyond the mandatory single separators.
  const std::size_t slack = n - s - (pieces - 1);
  std::vector<std::size_t> gaps(pieces + 1, 0);
  if (slack > 0) {
    std::vector<std::size_t> bars = rs.subset(slack + pieces, pieces);
    std::size_t last = 0;
    for (std::size_t i = 0; i < pieces; ++i) {
      gaps[i] = bars[i] - last;
      last = bars[i] + 1;
    }
    gaps[pieces] = slack + pieces - last;
  }

  out.run_start.resize(pieces);
  std::size_t pos = gaps[0];
  for (std::size_t i = 0; i < pieces; ++i) {
    out.run_start[i] = pos;
    pos += out.run_len[i] + 1 + (i + 1 < pieces ? gaps[i + 1] : 0);
  }
  return out;
}

template <linalg::Scalar T>
T apply_direction(double magnitude, rng::Stream& rs) {
  if constexpr (linalg::is_complex_v<T>) {
    const double theta = rs.uniform(0.0, 2.0 * std::numbers::pi);
    return std::polar(magnitude, theta);
  } else {
    return magnitude * rs.sign();
  }
}

}  // namespace detail

template <linalg::Scalar T>
SparseSignal<T> gen_sparse_signal(std::size_t n, std::size_t s,
                                  const SignalModel& model,
                                  std::uint64_t seed) {
  if (s == 0) throw std::invalid_argument("gen_sparse_signal: sparsity is zero");
  if (s > n) {
    throw std::invalid_argument("gen_sparse_signal: sparsity exceeds dimension");
  }
  rng::Stream rs(seed);
  SparseSignal<T> x;
  x.ambient_dim = n;

  if (const auto* pw = std::get_if<PiecewiseFlat>(&model)) {
    if (!(pw->level_lo > 0.0) || pw->level_hi < pw->level_lo) {
      throw std::invalid_argument("gen_sparse_signal: bad piecewise level range");
    }
    const std::size_t pieces = detail::resolve_pieces(*pw, n, s);
    const auto layout = detail::piecewise_layout(n, s, pieces, rs);

    std::vector<double> levels(pieces);
    double peak = 0.0;
    for (std::size_t i = 0; i < pieces; ++i) {
      levels[i] = std::exp(rs.uniform(std::log(pw->level_lo), std::log(pw->level_hi)));
      peak = std::max(peak, levels[i]);
    }
    x.support.reserve(s);
    x.values.reserve(s);
    for (std::size_t i = 0; i < pieces; ++i) {
      const T v = detail::apply_direction<T>(levels[i] / peak, rs);
      for (std::size_t r = 0; r < layout.run_len[i]; ++r) {
        x.support.push_back(layout.run_start[i] + r);
        x.values.push_back(v);
      }
    }
    x.validate();
    return x;
  }

  x.support = rs.subset(n, s);
  std::vector<double> mags(s);
  if (std::holds_alternative<Flat>(model)) {
    for (double& v : mags) v = 1.0;
  } else if (const auto* e = std::get_if<Exponential>(&model)) {
    if (!(e->alpha > 0.0) || !(e->alpha < 1.0)) {
      throw std::invalid_argument("gen_sparse_signal: alpha outside (0, 1)");
    }
    double v = 1.0;
    for (std::size_t i = 0; i < s; ++i, v *= e->alpha) mags[i] = v;
  } else {
    const auto& poly = std::get<Polynomial>(model);
    if (!(poly.p > 0.0) || !(poly.p < 1.0)) {
      throw std::invalid_argument("gen_sparse_signal: p outside (0, 1)");
    }
    for (std::size_t i = 0; i < s; ++i) {
      mags[i] = std::pow(static_cast<double>(s - i) / static_cast<double>(s),
                         1.0 / poly.p);
    }
  }

  // Random one-to-one assignment of the magnitude profile to support cells.
  std::vector<std::size_t> perm(s);
  for (std::size_t i = 0; i < s; ++i) perm[i] = i;
  for (std::size_t i = 0; i + 1 < s; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rs.below(s - i));
    std::swap(perm[i], perm[j]);
  }

  x.values.resize(s);
  for (std::size_t i = 0; i < s; ++i) {
    x.values[perm[i]] = detail::apply_direction<T>(mags[i], rs);
  }
  x.validate();
  return x;
}

// y = A x exploiting sparsity: only the support columns contribute.
template <linalg::Scalar T>
DenseVector<T> measure(const DenseMatrix<T>& A, const SparseSignal<T>& x) {
  if (x.ambient_dim != A.cols()) {
    throw std::invalid_argument("measure: signal dimension mismatch");
  }
  DenseVector<T> y(A.rows());
  for (std::size_t i = 0; i < x.support.size(); ++i) {
    linalg::axpy(x.values[i], A.column(x.support[i]),
                 std::span<T>(y.data(), y.size()));
  }
  return y;
}

// Additive Gaussian noise with an exact per-realization SNR:
// ||noise|| = ||y|| * 10^(-snr_db/20).  snr_db = +infinity is the noiseless
// sentinel and returns y unchanged.  Complex noise is circularly symmetric.
template <linalg::Scalar T>
DenseVector<T> add_noise(const DenseVector<T>& y, double snr_db,
                         std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0.0) return y;
  if (std::isnan(snr_db) || std::isinf(snr_db)) {
    throw std::invalid_argument("add_noise: snr_db must be finite or +inf");
  }
  const double ynorm = linalg::norm2(y);
  if (ynorm == 0.0) {
    throw std::invalid_argument("add_noise: zero measurement with finite snr");
  }

  rng::Stream rs(seed);
  DenseVector<T> noise(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if constexpr (linalg::is_complex_v<T>) {
      noise[i] = T(rs.normal(), rs.normal());
    } else {
      noise[i] = rs.normal();
    }
  }
  const double nnorm = linalg::norm2(noise);
  if (nnorm == 0.0) {
    throw std::runtime_error("add_noise: degenerate noise draw");
  }
  const double target = ynorm * std::pow(10.0, -snr_db / 20.0);
  DenseVector<T> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] + noise[i] * T(target / nnorm);
  }
  return out;
}

}  // namespace pursuit::signals
