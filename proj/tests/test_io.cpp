// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <sstream>

#include "oracles.hpp"
#include "pursuit/matrix_io.hpp"

using namespace pursuit;
using io::ParseError;
using linalg::DenseMatrix;
using linalg::DenseVector;
using C = std::complex<double>;

TEST_CASE("real matrices round trip exactly", "[io]") {
  const DenseMatrix<double> A = oracles::random_real_matrix(5, 3, 42);
  std::stringstream buf;
  io::write_matrix(buf, A);
  const auto back = io::read_matrix(buf);
  REQUIRE(std::holds_alternative<DenseMatrix<double>>(back));
  REQUIRE(std::get<DenseMatrix<double>>(back) == A);
}

TEST_CASE("complex matrices round trip exactly", "[io]") {
  const DenseMatrix<C> A = oracles::random_complex_matrix(4, 6, 43);
  std::stringstream buf;
  io::write_matrix(buf, A);
  const auto back = io::read_matrix(buf);
  REQUIRE(std::holds_alternative<DenseMatrix<C>>(back));
  REQUIRE(std::get<DenseMatrix<C>>(back) == A);
}

TEST_CASE("vectors are a single-column matrix on disk", "[io]") {
  const DenseVector<double> v{1.5, -2.0, 0.0};
  std::stringstream buf;
  io::write_vector(buf, v);
  REQUIRE(buf.str().rfind("3 1 real\n", 0) == 0);
  const auto back = io::read_vector(buf);
  REQUIRE(std::holds_alternative<DenseVector<double>>(back));
  REQUIRE(std::get<DenseVector<double>>(back) == v);
}

TEST_CASE("headers are validated", "[io]") {
  const auto rejects = [](const std::string& text) {
    std::istringstream in(text);
    REQUIRE_THROWS_AS(io::read_matrix(in), ParseError);
  };
  rejects("");
  rejects("garbage");
  rejects("2 2 quaternion\n1 0 0 1\n");
  rejects("0 2 real\n");
  rejects("2 2 real\n1 0 0\n");            // one entry short
  rejects("2 2 real\n1 0 0 1 7\n");        // trailing data
  rejects("1 1 real\nnot-a-number\n");
  rejects("1 1 real\n1e999\n");            // overflows to infinity
  rejects("1 1 complex\n1\n");             // missing imaginary part
}

TEST_CASE("read_vector insists on one column", "[io]") {
  std::istringstream in("2 2 real\n1 0 0 1\n");
  REQUIRE_THROWS_AS(io::read_vector(in), ParseError);
}
