// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Measurement matrix ensembles and a brute-force restricted isometry
// estimator.  All generators are deterministic in the seed and produce
// columns with unit (or near-unit) Euclidean norm so the greedy selection
// rules downstream compare like with like.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

#include "pursuit/dense.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/scalar.hpp"

namespace pursuit::sensing {

using linalg::DenseMatrix;

struct Gaussian {};
struct Bernoulli {};
struct Fourier {};

// Spatial-temporal steering dictionary: one sensor element / pulse pair per
// row, one (spatial cell, doppler cell) pair per column.
struct SpatialTemporal {
  std::size_t n_elements = 16;
  std::size_t n_pulses = 14;
  std::size_t spatial_grid = 30;
  std::size_t doppler_grid = 30;
};

using MeasurementEnsemble =
    std::variant<Gaussian, Bernoulli, Fourier, SpatialTemporal>;

// Entries iid N(0, 1/m); column norms concentrate at 1.
inline DenseMatrix<double> gen_gaussian(std::size_t m, std::size_t n,
                                        std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("gen_gaussian: empty shape");
  if (m > n) {
    throw std::invalid_argument(
        "gen_gaussian: rows exceed columns (overdetermined regime unsupported)");
  }
  rng::Stream s(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  DenseMatrix<double> A(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto col = A.column(j);
    for (std::size_t i = 0; i < m; ++i) col[i] = scale * s.normal();
  }
  return A;
}

// Entries +-1/sqrt(m) with equal probability; columns exactly unit norm.
inline DenseMatrix<double> gen_bernoulli(std::size_t m, std::size_t n,
                                         std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("gen_bernoulli: empty shape");
  if (m > n) {
    throw std::invalid_argument(
        "gen_bernoulli: rows exceed columns (overdetermined regime unsupported)");
  }
  rng::Stream s(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  DenseMatrix<double> A(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto col = A.column(j);
    for (std::size_t i = 0; i < m; ++i) col[i] = scale * s.sign();
  }
  return A;
}

// m rows drawn without replacement from the N-point unitary DFT, rescaled by
// sqrt(N/m): entry (i, c) = exp(-2*pi*j*r_i*c/N)/sqrt(m).  Columns are
// exactly unit norm; with m = N the matrix is unitary.
inline DenseMatrix<std::complex<double>> gen_fourier(std::size_t m,
                                                     std::size_t n,
                                                     std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("gen_fourier: empty shape");
  if (m > n) {
    throw std::invalid_argument(
        "gen_fourier: rows exceed columns (overdetermined regime unsupported)");
  }
  rng::Stream s(seed);
  const std::vector<std::size_t> rows = s.subset(n, m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  DenseMatrix<std::complex<double>> A(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto col = A.column(j);
    for (std::size_t i = 0; i < m; ++i) {
      const double phase = -2.0 * std::numbers::pi *
                           static_cast<double>(rows[i]) *
                           static_cast<double>(j) / static_cast<double>(n);
      col[i] = std::polar(scale, phase);
    }
  }
  return A;
}

// Row index (element p, pulse q) -> p * n_pulses + q; column index (spatial
// cell a, doppler cell b) -> a * doppler_grid + b.  Entry:
//   exp(j * 2*pi * (p * a/spatial_grid + q * b/doppler_grid)) / sqrt(rows).
inline std::size_t stap_row_index(const SpatialTemporal& st, std::size_t p,
                                  std::size_t q) {
  return p * st.n_pulses + q;
}

inline std::size_t stap_column_index(const SpatialTemporal& st, std::size_t a,
                                     std::size_t b) {
  return a * st.doppler_grid + b;
}

inline DenseMatrix<std::complex<double>> gen_stap(const SpatialTemporal& st) {
  if (st.n_elements == 0 || st.n_pulses == 0 || st.spatial_grid == 0 ||
      st.doppler_grid == 0) {
    throw std::invalid_argument("gen_stap: empty shape");
  }
  const std::size_t max_sz = std::numeric_limits<std::size_t>::max();
  if (st.n_elements > max_sz / st.n_pulses ||
      st.spatial_grid > max_sz / st.doppler_grid) {
    throw std::invalid_argument("gen_stap: size overflow");
  }
  const std::size_t rows = st.n_elements * st.n_pulses;
  const std::size_t cols = st.spatial_grid * st.doppler_grid;
  if (cols > max_sz / rows) throw std::invalid_argument("gen_stap: size overflow");

  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  DenseMatrix<std::complex<double>> A(rows, cols);
  for (std::size_t a = 0; a < st.spatial_grid; ++a) {
    const double fs = static_cast<double>(a) / static_cast<double>(st.spatial_grid);
    for (std::size_t b = 0; b < st.doppler_grid; ++b) {
      const double fd = static_cast<double>(b) / static_cast<double>(st.doppler_grid);
      auto col = A.column(stap_column_index(st, a, b));
      for (std::size_t p = 0; p < st.n_elements; ++p) {
        for (std::size_t q = 0; q < st.n_pulses; ++q) {
          const double phase = 2.0 * std::numbers::pi *
                               (static_cast<double>(p) * fs +
                                static_cast<double>(q) * fd);
          col[stap_row_index(st, p, q)] = std::polar(scale, phase);
        }
      }
    }
  }
  return A;
}

namespace detail {

// Eigenvalue range of a small Hermitian matrix by cyclic Jacobi rotations.
// Only eigenvalues are needed, so rotations are applied as similarity
// updates in place.  Converges quadratically; sizes here are tiny (K <= 16).
inline std::pair<double, double> hermitian_eig_range(
    DenseMatrix<std::complex<double>> G) {
  using C = std::complex<double>;
  const std::size_t n = G.rows();
  if (n == 0) throw std::invalid_argument("hermitian_eig_range: empty matrix");
  if (n == 1) {
    const double v = G(0, 0).real();
    return {v, v};
  }

  double off_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) off_scale += linalg::abs2(G(i, j));
  off_scale = std::sqrt(off_scale);
  const double tol = 1e-15 * std::max(off_scale, 1.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double max_off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const C g = G(p, q);
        const double ag = std::abs(g);
        max_off = std::max(max_off, ag);
        if (ag <= tol) continue;

        // Phase-align so the 2x2 block is real symmetric, then rotate.
        const C phi = g / ag;
        const double app = G(p, p).real();
        const double aqq = G(q, q).real();
        const double tau = (aqq - app) / (2.0 * ag);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // U restricted to (p, q): [[c, s], [-phi_bar*s, phi_bar*c]], the
        // product of the phase alignment diag(1, phi_bar) and the real
        // rotation that annihilates the aligned off-diagonal.
        const C u01 = C(s);
        const C u10 = std::conj(phi) * -s;
        const C u11 = std::conj(phi) * c;

        for (std::size_t i = 0; i < n; ++i) {  // G <- G * U
          const C gip = G(i, p), giq = G(i, q);
          G(i, p) = gip * c + giq * u10;
          G(i, q) = gip * u01 + giq * u11;
        }
        for (std::size_t i = 0; i < n; ++i) {  // G <- U^H * G
          const C gpi = G(p, i), gqi = G(q, i);
          G(p, i) = std::conj(C(c)) * gpi + std::conj(u10) * gqi;
          G(q, i) = std::conj(u01) * gpi + std::conj(u11) * gqi;
        }
        G(p, q) = C(0.0);  // exact by construction of the rotation
        G(q, p) = C(0.0);
      }
    }
    if (max_off <= tol) break;
  }

  double lo = G(0, 0).real(), hi = lo;
  for (std::size_t i = 1; i < n; ++i) {
    lo = std::min(lo, G(i, i).real());
    hi = std::max(hi, G(i, i).real());
  }
  return {lo, hi};
}

// C(n, k) with early clamp; anything above the cap reports cap + 1.
inline std::uint64_t binomial_clamped(std::size_t n, std::size_t k,
                                      std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t factor = n - k + i;
    if (c > (cap * 2) / factor) return cap + 1;
    c = c * factor / i;  // exact: the running product is divisible by i
    if (c > cap) return cap + 1;
  }
  return c;
}

}  // namespace detail

struct RicEstimate {
  std::size_t order = 0;  // K
  double delta = 0.0;     // max over K-subsets of ||A_S^H A_S - I||_2
};

// Brute-force restricted isometry constant of order K: enumerate every
// K-column subset, take the worst eigenvalue deviation of its Gram matrix.
// Guarded to C(cols, K) <= 1e6 subsets.
template <linalg::Scalar T>
RicEstimate ric_bruteforce(const DenseMatrix<T>& A, std::size_t K) {
  using C = std::complex<double>;
  const std::size_t n = A.cols();
  if (K == 0 || K > n) {
    throw std::invalid_argument("ric_bruteforce: order out of range");
  }
  constexpr std::uint64_t kMaxSubsets = 1000000;
  if (detail::binomial_clamped(n, K, kMaxSubsets) > kMaxSubsets) {
    throw std::invalid_argument(
        "ric_bruteforce: C(cols, K) exceeds the 1e6 subset budget");
  }

  // Full Gram once; subsets then only index into it.
  DenseMatrix<C> gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const T g = linalg::dot(A.column(i), A.column(j));
      C gc;
      if constexpr (linalg::is_complex_v<T>) {
        gc = g;
      } else {
        gc = C(g, 0.0);
      }
      gram(i, j) = gc;
      gram(j, i) = std::conj(gc);
    }
  }

  std::vector<std::size_t> sel(K);
  for (std::size_t i = 0; i < K; ++i) sel[i] = i;
  double delta = 0.0;
  while (true) {
    DenseMatrix<C> gs(K, K);
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j) gs(i, j) = gram(sel[i], sel[j]);
    const auto [lo, hi] = detail::hermitian_eig_range(std::move(gs));
    delta = std::max({delta, hi - 1.0, 1.0 - lo});

    // Advance to the next K-combination of [0, n).
    std::size_t i = K;
    bool advanced = false;
    while (i-- > 0) {
      if (sel[i] < i + n - K) {
        ++sel[i];
        for (std::size_t j = i + 1; j < K; ++j) sel[j] = sel[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return {K, delta};
  }
}

}  // namespace pursuit::sensing
