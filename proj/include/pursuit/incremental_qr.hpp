// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Incrementally grown QR factorization over a column subset of a sensing
// matrix.  Columns are appended one at a time and orthogonalized against
// every previously accepted column with the *stabilized* (modified)
// Gram-Schmidt recursion: one projection subtracted at a time, never the
// classical one-shot sum, which loses orthogonality catastrophically on
// ill-conditioned inputs.
//
// When the first sweep cancels most of a column (the remainder kept less
// than 1/sqrt(2) of the original norm), a second sweep re-orthogonalizes
// the remainder; twice is enough to pin the new direction to the basis at
// roundoff level however coherent the dictionary is.  Without it a column
// barely above the dependence tolerance would leave Q with an
// orthogonality defect of roughly eps divided by the kept fraction, and
// later solves would drift off the true projection.
//
// Cost per accepted column is O(t * m) time and one length-m workspace
// allocation (t = columns held so far); stored columns are never copied or
// reallocated when the factorization grows.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "pursuit/dense.hpp"
#include "pursuit/scalar.hpp"

namespace pursuit::linalg {

namespace detail {
// Test hook: counts length-m workspace allocations performed by extend().
inline thread_local std::size_t qr_workspace_allocations = 0;
}  // namespace detail

template <Scalar T>
class IncrementalQR {
 public:
  explicit IncrementalQR(std::size_t ambient_rows, double lin_dep_tol = 1e-10)
      : rows_(ambient_rows), tol_(lin_dep_tol) {
    if (lin_dep_tol < 0.0) {
      throw std::invalid_argument("IncrementalQR: negative tolerance");
    }
  }

  std::size_t ambient_rows() const { return rows_; }
  std::size_t size() const { return selected_.size(); }
  double lin_dep_tol() const { return tol_; }
  const std::vector<std::size_t>& selected() const { return selected_; }
  const DenseVector<T>& q_column(std::size_t i) const { return q_[i]; }

  // R(i, j) for i <= j; diagonal entries are real and positive.
  T r_entry(std::size_t i, std::size_t j) const { return rcols_[j][i]; }

  // Append the columns of A named by new_indices, in order.  A column whose
  // orthogonal residual is at most lin_dep_tol times its original norm is
  // linearly dependent on the span held so far; it is skipped and reported
  // in the returned list, leaving the factorization untouched.
  std::vector<std::size_t> extend(const DenseMatrix<T>& A,
                                  std::span<const std::size_t> new_indices) {
    if (A.rows() != rows_) {
      throw std::invalid_argument("IncrementalQR::extend: row count mismatch");
    }
    for (std::size_t idx : new_indices) {
      if (idx >= A.cols()) {
        throw std::invalid_argument("IncrementalQR::extend: column index out of range");
      }
    }

    // Reject duplicates among the batch and against already held columns.
    for (std::size_t a = 0; a < new_indices.size(); ++a) {
      for (std::size_t b = a + 1; b < new_indices.size(); ++b) {
        if (new_indices[a] == new_indices[b]) {
          throw std::invalid_argument("IncrementalQR::extend: duplicate index in batch");
        }
      }
      for (std::size_t held : selected_) {
        if (held == new_indices[a]) {
          throw std::invalid_argument("IncrementalQR::extend: index already held");
        }
      }
    }

    std::vector<std::size_t> rejected;
    for (std::size_t idx : new_indices) {
      auto col = A.column(idx);
      const double orig_norm = norm2<T>(col);

      ++detail::qr_workspace_allocations;
      DenseVector<T> w(rows_);
      for (std::size_t i = 0; i < rows_; ++i) w[i] = col[i];

      std::vector<T> coeffs(q_.size());
      for (std::size_t i = 0; i < q_.size(); ++i) {
        const T c = dot(q_[i], w);
        coeffs[i] = c;
        axpy(-c, q_[i].span(), std::span<T>(w.data(), w.size()));
      }
      double rnorm = norm2(w);

      if (orig_norm == 0.0 || rnorm <= tol_ * orig_norm) {
        rejected.push_back(idx);
        continue;
      }

      if (rnorm < kReorthThreshold * orig_norm) {
        for (std::size_t i = 0; i < q_.size(); ++i) {
          const T c = dot(q_[i], w);
          coeffs[i] += c;
          axpy(-c, q_[i].span(), std::span<T>(w.data(), w.size()));
        }
        rnorm = norm2(w);
        if (rnorm <= tol_ * orig_norm) {
          rejected.push_back(idx);
          continue;
        }
      }

      scale(std::span<T>(w.data(), w.size()), 1.0 / rnorm);
      coeffs.push_back(T(rnorm));
      selected_.push_back(idx);
      rcols_.push_back(std::move(coeffs));
      q_.push_back(std::move(w));
    }
    return rejected;
  }

  // Least-squares coefficients over the held columns: back-substitution of
  // R x = Q^H y.  Result is aligned with selected(); empty when nothing is
  // held.
  std::vector<T> solve(const DenseVector<T>& y) const {
    if (y.size() != rows_) {
      throw std::invalid_argument("IncrementalQR::solve: rhs length mismatch");
    }
    const std::size_t t = selected_.size();
    std::vector<T> x(t, T{});
    if (t == 0) return x;

    std::vector<T> c(t);
    for (std::size_t i = 0; i < t; ++i) c[i] = dot(q_[i], y);

    for (std::size_t ii = t; ii-- > 0;) {
      T acc = c[ii];
      for (std::size_t jj = ii + 1; jj < t; ++jj) acc -= rcols_[jj][ii] * x[jj];
      x[ii] = acc / rcols_[ii][ii];
    }
    return x;
  }

  // Dense copies for inspection; test convenience, not used by algorithms.
  DenseMatrix<T> q_dense() const {
    DenseMatrix<T> Q(rows_, q_.size());
    for (std::size_t j = 0; j < q_.size(); ++j) {
      auto dst = Q.column(j);
      for (std::size_t i = 0; i < rows_; ++i) dst[i] = q_[j][i];
    }
    return Q;
  }

  DenseMatrix<T> r_dense() const {
    const std::size_t t = selected_.size();
    DenseMatrix<T> R(t, t);
    for (std::size_t j = 0; j < t; ++j) {
      for (std::size_t i = 0; i <= j; ++i) R(i, j) = rcols_[j][i];
    }
    return R;
  }

 private:
  // Kept fraction below which a second orthogonalization sweep runs.
  static constexpr double kReorthThreshold = 0.70710678118654752;

  std::size_t rows_;
  double tol_;
  std::vector<std::size_t> selected_;
  std::vector<DenseVector<T>> q_;
  std::vector<std::vector<T>> rcols_;  // rcols_[j][i] = R(i, j), i <= j
};

}  // namespace pursuit::linalg
