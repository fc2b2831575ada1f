// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Plain-text matrix exchange format:
//
//   <rows> <cols> real|complex
//   row 0: cols whitespace-separated entries (complex as "re im" pairs)
//   ...
//
// A vector is a <rows> 1 matrix.  Values are written with max_digits10
// precision so a write/read round trip is exact.
#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "pursuit/dense.hpp"

namespace pursuit::io {

using linalg::DenseMatrix;
using linalg::DenseVector;

// Malformed input is the caller's mistake, not an environment failure;
// kept distinct from std::runtime_error so the CLI can exit accordingly.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyMatrix =
    std::variant<DenseMatrix<double>, DenseMatrix<std::complex<double>>>;

namespace detail {

inline double next_number(std::istream& in, const char* what) {
  double v;
  if (!(in >> v)) {
    throw ParseError(std::string("matrix file: missing or malformed ") + what);
  }
  if (!std::isfinite(v)) {
    throw ParseError(std::string("matrix file: non-finite ") + what);
  }
  return v;
}

}  // namespace detail

inline AnyMatrix read_matrix(std::istream& in) {
  std::size_t rows = 0, cols = 0;
  std::string field;
  if (!(in >> rows >> cols >> field)) {
    throw ParseError("matrix file: malformed header (want: rows cols real|complex)");
  }
  if (rows == 0 || cols == 0) {
    throw ParseError("matrix file: empty shape in header");
  }
  if (field != "real" && field != "complex") {
    throw ParseError("matrix file: field must be 'real' or 'complex', got '" +
                     field + "'");
  }

  if (field == "real") {
    DenseMatrix<double> A(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        A(i, j) = detail::next_number(in, "entry");
      }
    }
    std::string extra;
    if (in >> extra) throw ParseError("matrix file: trailing data after entries");
    return A;
  }

  DenseMatrix<std::complex<double>> A(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = detail::next_number(in, "real part");
      const double im = detail::next_number(in, "imaginary part");
      A(i, j) = {re, im};
    }
  }
  std::string extra;
  if (in >> extra) throw ParseError("matrix file: trailing data after entries");
  return A;
}

inline AnyMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return read_matrix(in);
}

namespace detail {

inline void write_value(std::ostream& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace detail

inline void write_matrix(std::ostream& out, const DenseMatrix<double>& A) {
  out << A.rows() << ' ' << A.cols() << " real\n";
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (j) out << ' ';
      detail::write_value(out, A(i, j));
    }
    out << '\n';
  }
}

inline void write_matrix(std::ostream& out,
                         const DenseMatrix<std::complex<double>>& A) {
  out << A.rows() << ' ' << A.cols() << " complex\n";
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (j) out << ' ';
      detail::write_value(out, A(i, j).real());
      out << ' ';
      detail::write_value(out, A(i, j).imag());
    }
    out << '\n';
  }
}

template <linalg::Scalar T>
void write_vector(std::ostream& out, const DenseVector<T>& v) {
  DenseMatrix<T> M(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) M(i, 0) = v[i];
  write_matrix(out, M);
}

// Reads a <rows> 1 matrix of either field as a vector.
inline std::variant<DenseVector<double>, DenseVector<std::complex<double>>>
read_vector(std::istream& in) {
  AnyMatrix any = read_matrix(in);
  if (std::holds_alternative<DenseMatrix<double>>(any)) {
    const auto& M = std::get<DenseMatrix<double>>(any);
    if (M.cols() != 1) throw ParseError("vector file: expected a single column");
    DenseVector<double> v(M.rows());
    for (std::size_t i = 0; i < M.rows(); ++i) v[i] = M(i, 0);
    return v;
  }
  const auto& M = std::get<DenseMatrix<std::complex<double>>>(any);
  if (M.cols() != 1) throw ParseError("vector file: expected a single column");
  DenseVector<std::complex<double>> v(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i) v[i] = M(i, 0);
  return v;
}

}  // namespace pursuit::io
