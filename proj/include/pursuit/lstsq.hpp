// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Batch least squares via column-pivoted Householder QR.  Deliberately a
// different algorithm family from the incremental Gram-Schmidt factorization
// in incremental_qr.hpp so the two can be checked against each other.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pursuit/dense.hpp"
#include "pursuit/scalar.hpp"

namespace pursuit::linalg {

// Thrown by dense_lstsq when the column set is rank deficient beyond
// tolerance.  Callers that can tolerate rank deficiency use
// lstsq_over_columns, which truncates instead.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// In-place pivoted Householder factorization of W (m x n, column-major)
// carrying the right-hand side along.  Returns the numerical rank; on exit
// the upper triangle of W holds R (column-pivoted) and rhs holds Q^H y.
template <Scalar T>
std::size_t householder_factor(DenseMatrix<T>& W, DenseVector<T>& rhs,
                               std::vector<std::size_t>& piv,
                               double rank_tol) {
  const std::size_t m = W.rows();
  const std::size_t n = W.cols();
  piv.resize(n);
  for (std::size_t j = 0; j < n; ++j) piv[j] = j;

  double scale = 0.0;  // magnitude of the first (largest) diagonal
  std::vector<T> v(m);
  for (std::size_t k = 0; k < n && k < m; ++k) {
    // Pivot: remaining column with largest residual norm (recomputed
    // exactly; O(mn) per step is irrelevant at our sizes and avoids the
    // classic downdating instability).
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      auto col = W.column(j);
      for (std::size_t i = k; i < m; ++i) s += abs2(col[i]);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k) {
      auto ck = W.column(k);
      auto cb = W.column(best);
      for (std::size_t i = 0; i < m; ++i) std::swap(ck[i], cb[i]);
      std::swap(piv[k], piv[best]);
    }

    const double alpha = std::sqrt(std::max(best_norm, 0.0));
    if (k == 0) scale = alpha;
    if (alpha <= rank_tol * scale || alpha == 0.0) {
      return k;
    }

    // Householder vector v = x + s*alpha*e_k with s = x_k/|x_k| (or 1),
    // chosen so the update never cancels.
    auto colk = W.column(k);
    T s_phase;
    if constexpr (is_complex_v<T>) {
      const double a0 = std::abs(colk[k]);
      s_phase = (a0 > 0.0) ? colk[k] / T(a0) : T(1.0);
    } else {
      s_phase = (colk[k] >= 0) ? T(1) : T(-1);
    }
    for (std::size_t i = k; i < m; ++i) v[i] = colk[i];
    v[k] += s_phase * T(alpha);
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm2 += abs2(v[i]);

    // R(k,k) = -s*alpha; entries below become exactly zero.
    colk[k] = -s_phase * T(alpha);
    for (std::size_t i = k + 1; i < m; ++i) colk[i] = T{};

    const auto reflect = [&](std::span<T> c) {
      T w{};
      for (std::size_t i = k; i < m; ++i) w += conj_of(v[i]) * c[i];
      w *= T(2.0 / vnorm2);
      for (std::size_t i = k; i < m; ++i) c[i] -= w * v[i];
    };
    for (std::size_t j = k + 1; j < n; ++j) reflect(W.column(j));
    reflect(std::span<T>(rhs.data(), rhs.size()));
  }
  return std::min(n, m);
}

}  // namespace detail

// Minimum-norm-in-the-truncated-basis least squares over a column subset of
// A.  Columns judged linearly dependent (diagonal below rank_tol relative to
// the largest) receive zero coefficients.  Returns coefficients aligned with
// `cols`.
template <Scalar T>
std::vector<T> lstsq_over_columns(const DenseMatrix<T>& A,
                                  std::span<const std::size_t> cols,
                                  const DenseVector<T>& y,
                                  double rank_tol = 1e-12) {
  const std::size_t m = A.rows();
  const std::size_t n = cols.size();
  if (y.size() != m) {
    throw std::invalid_argument("lstsq_over_columns: rhs length mismatch");
  }
  for (std::size_t j : cols) {
    if (j >= A.cols()) {
      throw std::invalid_argument("lstsq_over_columns: column index out of range");
    }
  }
  if (n == 0) return {};

  DenseMatrix<T> W(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto src = A.column(cols[j]);
    auto dst = W.column(j);
    for (std::size_t i = 0; i < m; ++i) dst[i] = src[i];
  }
  DenseVector<T> rhs(m);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = y[i];

  std::vector<std::size_t> piv;
  const std::size_t rank = detail::householder_factor(W, rhs, piv, rank_tol);

  // Back-substitute R[0..rank)^2 x = (Q^H y)[0..rank).
  std::vector<T> xp(n, T{});
  for (std::size_t ii = rank; ii-- > 0;) {
    T acc = rhs[ii];
    for (std::size_t jj = ii + 1; jj < rank; ++jj) acc -= W(ii, jj) * xp[jj];
    xp[ii] = acc / W(ii, ii);
  }

  std::vector<T> x(n, T{});
  for (std::size_t j = 0; j < n; ++j) x[piv[j]] = xp[j];
  return x;
}

// Strict dense least squares: minimizes ||A x - y||_2 for a full matrix.
// Rank deficiency beyond tolerance throws SingularError.
template <Scalar T>
DenseVector<T> dense_lstsq(const DenseMatrix<T>& A, const DenseVector<T>& y,
                           double rank_tol = 1e-12) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (y.size() != m) {
    throw std::invalid_argument("dense_lstsq: rhs length mismatch");
  }
  if (n > m) {
    throw std::invalid_argument("dense_lstsq: underdetermined system (cols > rows)");
  }
  if (n == 0) return DenseVector<T>(0);

  DenseMatrix<T> W = A;
  DenseVector<T> rhs = y;
  std::vector<std::size_t> piv;
  const std::size_t rank = detail::householder_factor(W, rhs, piv, rank_tol);
  if (rank < n) {
    throw SingularError("dense_lstsq: rank deficient system");
  }

  std::vector<T> xp(n, T{});
  for (std::size_t ii = n; ii-- > 0;) {
    T acc = rhs[ii];
    for (std::size_t jj = ii + 1; jj < n; ++jj) acc -= W(ii, jj) * xp[jj];
    xp[ii] = acc / W(ii, ii);
  }
  DenseVector<T> x(n);
  for (std::size_t j = 0; j < n; ++j) x[piv[j]] = xp[j];
  return x;
}

}  // namespace pursuit::linalg
