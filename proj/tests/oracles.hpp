// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations used to cross-check the library.
// Everything here is deliberately written with different algorithms (and a
// different random engine) than the code under test, so a shared bug cannot
// hide: dense explicit transposes instead of column dots, classical one-shot
// Gram-Schmidt, normal-equations solves, exhaustive subset search.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "pursuit/dense.hpp"
#include "pursuit/scalar.hpp"

namespace oracles {

using pursuit::linalg::DenseMatrix;
using pursuit::linalg::DenseVector;

// Deterministic fillers on a plain mt19937_64, independent of the library's
// stream transforms.
inline double urand(std::mt19937_64& g) {
  return -1.0 + 2.0 * (static_cast<double>(g() >> 11) * 0x1.0p-53);
}

inline DenseMatrix<double> random_real_matrix(std::size_t m, std::size_t n,
                                              std::uint64_t seed) {
  std::mt19937_64 g(seed);
  DenseMatrix<double> A(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) A(i, j) = urand(g);
  return A;
}

inline DenseMatrix<std::complex<double>> random_complex_matrix(
    std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  DenseMatrix<std::complex<double>> A(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) A(i, j) = {urand(g), urand(g)};
  return A;
}

template <pursuit::linalg::Scalar T>
DenseVector<T> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  DenseVector<T> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if constexpr (pursuit::linalg::is_complex_v<T>) {
      v[i] = T(urand(g), urand(g));
    } else {
      v[i] = urand(g);
    }
  }
  return v;
}

// A^H r by materializing the conjugate transpose and walking its rows.
template <pursuit::linalg::Scalar T>
DenseVector<T> adjoint_matvec_oracle(const DenseMatrix<T>& A,
                                     const DenseVector<T>& r) {
  DenseMatrix<T> AH(A.cols(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      AH(j, i) = pursuit::linalg::conj_of(A(i, j));
  DenseVector<T> u(AH.rows());
  for (std::size_t i = 0; i < AH.rows(); ++i) {
    T acc{};
    for (std::size_t j = 0; j < AH.cols(); ++j) acc += AH(i, j) * r[j];
    u[i] = acc;
  }
  return u;
}

// One-shot classical Gram-Schmidt: every projection coefficient is taken
// against the ORIGINAL column, then subtracted in a single update.  This is
// the numerically weak variant the stabilized code must beat.
template <pursuit::linalg::Scalar T>
DenseMatrix<T> classical_gram_schmidt(const DenseMatrix<T>& A,
                                      const std::vector<std::size_t>& cols) {
  const std::size_t m = A.rows();
  DenseMatrix<T> Q(m, cols.size());
  for (std::size_t jj = 0; jj < cols.size(); ++jj) {
    std::vector<T> v(m);
    auto src = A.column(cols[jj]);
    for (std::size_t i = 0; i < m; ++i) v[i] = src[i];
    std::vector<T> proj(jj);
    for (std::size_t q = 0; q < jj; ++q) {
      T c{};
      for (std::size_t i = 0; i < m; ++i)
        c += pursuit::linalg::conj_of(Q(i, q)) * src[i];
      proj[q] = c;
    }
    for (std::size_t q = 0; q < jj; ++q)
      for (std::size_t i = 0; i < m; ++i) v[i] -= proj[q] * Q(i, q);
    double nrm = 0.0;
    for (const T& x : v) nrm += pursuit::linalg::abs2(x);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < m; ++i) Q(i, jj) = v[i] / T(nrm);
  }
  return Q;
}

// From-scratch stabilized orthogonalization of a full column list in one
// pass; the incremental factorization grown in batches must reproduce it.
template <pursuit::linalg::Scalar T>
DenseMatrix<T> full_mgs_oracle(const DenseMatrix<T>& A,
                               const std::vector<std::size_t>& cols) {
  const std::size_t m = A.rows();
  DenseMatrix<T> Q(m, cols.size());
  for (std::size_t jj = 0; jj < cols.size(); ++jj) {
    std::vector<T> v(m);
    auto src = A.column(cols[jj]);
    for (std::size_t i = 0; i < m; ++i) v[i] = src[i];
    for (std::size_t q = 0; q < jj; ++q) {
      T c{};
      for (std::size_t i = 0; i < m; ++i)
        c += pursuit::linalg::conj_of(Q(i, q)) * v[i];
      for (std::size_t i = 0; i < m; ++i) v[i] -= c * Q(i, q);
    }
    double nrm = 0.0;
    for (const T& x : v) nrm += pursuit::linalg::abs2(x);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < m; ++i) Q(i, jj) = v[i] / T(nrm);
  }
  return Q;
}

template <pursuit::linalg::Scalar T>
double orthogonality_defect(const DenseMatrix<T>& Q) {
  double worst = 0.0;
  for (std::size_t a = 0; a < Q.cols(); ++a) {
    for (std::size_t b = 0; b < Q.cols(); ++b) {
      T g{};
      for (std::size_t i = 0; i < Q.rows(); ++i)
        g += pursuit::linalg::conj_of(Q(i, a)) * Q(i, b);
      const double target = (a == b) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(pursuit::linalg::abs_of(g) - target));
    }
  }
  return worst;
}

// Least squares over a column subset by forming and solving the normal
// equations with Gaussian elimination (partial pivoting).  Numerically
// cruder than QR but algorithmically unrelated to it.
template <pursuit::linalg::Scalar T>
std::vector<T> normal_equations_lstsq(const DenseMatrix<T>& A,
                                      const std::vector<std::size_t>& cols,
                                      const DenseVector<T>& y) {
  const std::size_t n = cols.size();
  const std::size_t m = A.rows();
  std::vector<std::vector<T>> G(n, std::vector<T>(n + 1));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      T g{};
      for (std::size_t i = 0; i < m; ++i)
        g += pursuit::linalg::conj_of(A(i, cols[a])) * A(i, cols[b]);
      G[a][b] = g;
    }
    T rhs{};
    for (std::size_t i = 0; i < m; ++i)
      rhs += pursuit::linalg::conj_of(A(i, cols[a])) * y[i];
    G[a][n] = rhs;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = pursuit::linalg::abs_of(G[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = pursuit::linalg::abs_of(G[i][k]);
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    std::swap(G[k], G[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = G[i][k] / G[k][k];
      for (std::size_t j = k; j <= n; ++j) G[i][j] -= f * G[k][j];
    }
  }
  std::vector<T> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    T acc = G[ii][n];
    for (std::size_t jj = ii + 1; jj < n; ++jj) acc -= G[ii][jj] * x[jj];
    x[ii] = acc / G[ii][ii];
  }
  return x;
}

// Residual norm of the best s-sparse least-squares fit, by exhausting every
// s-subset of columns.
template <pursuit::linalg::Scalar T>
double best_subset_residual(const DenseMatrix<T>& A, const DenseVector<T>& y,
                            std::size_t s) {
  const std::size_t n = A.cols();
  std::vector<std::size_t> sel(s);
  for (std::size_t i = 0; i < s; ++i) sel[i] = i;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    const std::vector<T> coef = normal_equations_lstsq(A, sel, y);
    double rn = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      T acc = y[i];
      for (std::size_t j = 0; j < s; ++j) acc -= coef[j] * A(i, sel[j]);
      rn += pursuit::linalg::abs2(acc);
    }
    best = std::min(best, std::sqrt(rn));

    std::size_t i = s;
    bool advanced = false;
    while (i-- > 0) {
      if (sel[i] < i + n - s) {
        ++sel[i];
        for (std::size_t j = i + 1; j < s; ++j) sel[j] = sel[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return best;
  }
}

// Restricted isometry constant of order 2 from closed-form 2x2 Hermitian
// eigenvalues: mean +- sqrt(((g_ii - g_jj)/2)^2 + |g_ij|^2).
template <pursuit::linalg::Scalar T>
double ric2_pairwise_oracle(const DenseMatrix<T>& A) {
  const std::size_t n = A.cols();
  double delta = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      double gaa = 0.0, gbb = 0.0;
      T gab{};
      for (std::size_t i = 0; i < A.rows(); ++i) {
        gaa += pursuit::linalg::abs2(A(i, a));
        gbb += pursuit::linalg::abs2(A(i, b));
        gab += pursuit::linalg::conj_of(A(i, a)) * A(i, b);
      }
      const double mid = 0.5 * (gaa + gbb);
      const double rad = std::sqrt(0.25 * (gaa - gbb) * (gaa - gbb) +
                                   pursuit::linalg::abs2(gab));
      delta = std::max({delta, std::abs(mid + rad - 1.0),
                        std::abs(mid - rad - 1.0)});
    }
  }
  return delta;
}

// Literal walk of the documented batch-width rule, written independently of
// the library: anneal beta, find the first qualifying relative drop, accept
// within the cap, fall back at the floor, clamp to the budget.
inline std::size_t select_k_oracle(const std::vector<double>& mags, double T,
                                   std::size_t cap, double beta_floor,
                                   double beta_decay,
                                   std::size_t remaining_budget) {
  double beta = 1.0;
  std::size_t k = 0;
  while (true) {
    std::size_t candidate = 0;
    for (std::size_t i = 1; i < mags.size(); ++i) {
      if (mags[i - 1] <= 0.0) break;
      if ((mags[i - 1] - mags[i]) / mags[i - 1] > T * beta) {
        candidate = i;
        break;
      }
    }
    if (candidate != 0 && candidate <= cap) {
      k = candidate;
      break;
    }
    if (beta < beta_floor) {
      k = candidate != 0 ? std::min(cap, candidate) : 1;
      break;
    }
    beta *= beta_decay;
  }
  return std::min(k, remaining_budget);
}

inline double energy_fraction_oracle(const std::vector<double>& mags,
                                     std::size_t k, std::size_t K) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    const double e = mags[i] * mags[i];
    den += e;
    if (i < k) num += e;
  }
  return num / den;
}

}  // namespace oracles
