// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Dense vector / column-major dense matrix containers plus the handful of
// BLAS-1/2 kernels the rest of the library is built from.  Storage is
// column-major so that per-column access (the hot path of every pursuit
// algorithm) is contiguous.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "pursuit/scalar.hpp"

namespace pursuit::linalg {

template <Scalar T>
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t n, T fill = T{}) : v_(n, fill) {}
  DenseVector(std::initializer_list<T> xs) : v_(xs) {}
  explicit DenseVector(std::vector<T> xs) : v_(std::move(xs)) {}

  std::size_t size() const { return v_.size(); }
  T& operator[](std::size_t i) { return v_[i]; }
  const T& operator[](std::size_t i) const { return v_[i]; }
  T* data() { return v_.data(); }
  const T* data() const { return v_.data(); }
  std::span<const T> span() const { return {v_.data(), v_.size()}; }
  const std::vector<T>& values() const { return v_; }

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  bool operator==(const DenseVector&) const = default;

 private:
  std::vector<T> v_;
};

template <Scalar T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[j * rows_ + i]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return a_[j * rows_ + i];
  }

  std::span<const T> column(std::size_t j) const {
    return {a_.data() + j * rows_, rows_};
  }
  std::span<T> column(std::size_t j) {
    return {a_.data() + j * rows_, rows_};
  }

  const std::vector<T>& storage() const { return a_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;  // column-major
};

// Inner product conjugating the first argument: sum_i conj(a_i) * b_i.
template <Scalar T>
T dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  T acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += conj_of(a[i]) * b[i];
  return acc;
}

template <Scalar T>
T dot(const DenseVector<T>& a, const DenseVector<T>& b) {
  return dot<T>(a.span(), b.span());
}

template <Scalar T>
real_t<T> norm2_squared(std::span<const T> a) {
  real_t<T> acc{};
  for (const T& x : a) acc += abs2(x);
  return acc;
}

template <Scalar T>
real_t<T> norm2(std::span<const T> a) {
  return std::sqrt(norm2_squared(a));
}

template <Scalar T>
real_t<T> norm2(const DenseVector<T>& a) {
  return norm2<T>(a.span());
}

// y <- y + alpha * x
template <Scalar T>
void axpy(T alpha, std::span<const T> x, std::span<T> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("axpy: length mismatch");
  }
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

template <Scalar T>
void scale(std::span<T> x, real_t<T> alpha) {
  for (T& v : x) v *= alpha;
}

// result_i = sum_j A(i,j) x_j, accumulated column by column.
template <Scalar T>
DenseVector<T> matvec(const DenseMatrix<T>& A, const DenseVector<T>& x) {
  if (A.cols() != x.size()) {
    throw std::invalid_argument("matvec: dimension mismatch");
  }
  DenseVector<T> r(A.rows());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    const T xj = x[j];
    if (xj == T{}) continue;
    axpy(xj, A.column(j), std::span<T>(r.data(), r.size()));
  }
  return r;
}

// result_j = <col_j, r> with conjugation on the column; this is the
// correlation proxy A^H r used by every greedy pursuit.
template <Scalar T>
DenseVector<T> adjoint_matvec(const DenseMatrix<T>& A, const DenseVector<T>& r) {
  if (A.rows() != r.size()) {
    throw std::invalid_argument("adjoint_matvec: dimension mismatch");
  }
  DenseVector<T> u(A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    u[j] = dot<T>(A.column(j), r.span());
  }
  return u;
}

template <Scalar T>
bool all_finite(const DenseMatrix<T>& A) {
  for (const T& x : A.storage()) {
    if (!finite(x)) return false;
  }
  return true;
}

template <Scalar T>
bool all_finite(const DenseVector<T>& v) {
  for (const T& x : v) {
    if (!finite(x)) return false;
  }
  return true;
}

}  // namespace pursuit::linalg
