// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "pursuit/sensing.hpp"

using namespace pursuit;
using sensing::SpatialTemporal;
using linalg::DenseMatrix;
using C = std::complex<double>;

TEST_CASE("generators are deterministic in the seed", "[sensing]") {
  REQUIRE(sensing::gen_gaussian(4, 8, 42) == sensing::gen_gaussian(4, 8, 42));
  REQUIRE(sensing::gen_bernoulli(4, 8, 7) == sensing::gen_bernoulli(4, 8, 7));
  REQUIRE(sensing::gen_fourier(4, 8, 9) == sensing::gen_fourier(4, 8, 9));
  REQUIRE_FALSE(sensing::gen_gaussian(4, 8, 42) == sensing::gen_gaussian(4, 8, 43));
}

TEST_CASE("gaussian shapes and degenerate size", "[sensing]") {
  const auto A = sensing::gen_gaussian(1, 1, 5);
  REQUIRE(A.rows() == 1);
  REQUIRE(A.cols() == 1);
  REQUIRE(std::isfinite(A(0, 0)));
  REQUIRE_THROWS_AS(sensing::gen_gaussian(0, 4, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(sensing::gen_gaussian(5, 4, 1), std::invalid_argument);
}

TEST_CASE("gaussian column norms concentrate at one", "[sensing]") {
  const auto A = sensing::gen_gaussian(200, 256, 11);
  double acc = 0.0;
  for (std::size_t j = 0; j < A.cols(); ++j) {
    acc += linalg::norm2_squared(A.column(j));
  }
  const double mean_sq_norm = acc / static_cast<double>(A.cols());
  REQUIRE(mean_sq_norm >= 0.85);
  REQUIRE(mean_sq_norm <= 1.15);
}

TEST_CASE("bernoulli entries have exact magnitude", "[sensing]") {
  const std::size_t m = 16;
  const auto A = sensing::gen_bernoulli(m, 32, 3);
  const double mag = 1.0 / std::sqrt(static_cast<double>(m));
  for (const double v : A.storage()) {
    REQUIRE(std::abs(v) == mag);
  }
}

TEST_CASE("bernoulli entry mean is centered", "[sensing]") {
  const std::size_t m = 256, n = 256;
  const auto A = sensing::gen_bernoulli(m, n, 13);
  double acc = 0.0;
  for (const double v : A.storage()) acc += v;
  // Entries are +-1/sqrt(m); the signed mean concentrates within
  // 3/sqrt(m*n) of zero on that scale.
  const double mean_of_signs =
      acc * std::sqrt(static_cast<double>(m)) / static_cast<double>(m * n);
  REQUIRE(std::abs(mean_of_signs) <=
          3.0 / std::sqrt(static_cast<double>(m) * static_cast<double>(n)));
}

TEST_CASE("full fourier matrix is unitary", "[sensing]") {
  const std::size_t n = 16;
  const auto A = sensing::gen_fourier(n, n, 21);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const C g = linalg::dot(A.column(a), A.column(b));
      const double target = a == b ? 1.0 : 0.0;
      REQUIRE(std::abs(std::abs(g) - target) <= 1e-12);
    }
  }
}

TEST_CASE("fourier columns are unit norm", "[sensing]") {
  const auto A = sensing::gen_fourier(12, 64, 22);
  for (std::size_t j = 0; j < A.cols(); ++j) {
    REQUIRE(std::abs(linalg::norm2(A.column(j)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("fourier row subsets vary across seeds", "[sensing]") {
  std::vector<std::vector<C>> draws;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    draws.push_back(sensing::gen_fourier(8, 32, seed).storage());
  }
  // C(32, 8) is ~10^7, so draws colliding wholesale would mean the subset
  // sampler is ignoring its seed.
  std::size_t collisions = 0;
  for (std::size_t a = 0; a < draws.size(); ++a) {
    for (std::size_t b = a + 1; b < draws.size(); ++b) {
      if (draws[a] == draws[b]) ++collisions;
    }
  }
  REQUIRE(collisions <= 1);
}

TEST_CASE("stap zero-frequency column is constant", "[sensing]") {
  const SpatialTemporal st{4, 3, 5, 5};
  const auto A = sensing::gen_stap(st);
  const double expect = 1.0 / std::sqrt(12.0);
  auto col = A.column(sensing::stap_column_index(st, 0, 0));
  for (std::size_t i = 0; i < A.rows(); ++i) {
    REQUIRE(std::abs(col[i] - C(expect, 0.0)) <= 1e-15);
  }
}

TEST_CASE("stap entries are unit modulus before normalization", "[sensing]") {
  const SpatialTemporal st{3, 4, 6, 7};
  const auto A = sensing::gen_stap(st);
  const double scale = 1.0 / std::sqrt(12.0);
  for (const C& v : A.storage()) {
    REQUIRE(std::abs(std::abs(v) - scale) <= 1e-15);
  }
  for (std::size_t j = 0; j < A.cols(); ++j) {
    REQUIRE(std::abs(linalg::norm2(A.column(j)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("stap default factorization yields 224x900", "[sensing]") {
  const auto A = sensing::gen_stap(SpatialTemporal{});
  REQUIRE(A.rows() == 224);
  REQUIRE(A.cols() == 900);
}

TEST_CASE("ric of orthonormal columns is zero", "[sensing]") {
  DenseMatrix<double> I(6, 6);
  for (std::size_t i = 0; i < 6; ++i) I(i, i) = 1.0;
  REQUIRE(sensing::ric_bruteforce(I, 3).delta <= 1e-12);
}

TEST_CASE("ric of duplicated columns is one", "[sensing]") {
  DenseMatrix<double> A(4, 3);
  A(0, 0) = 1.0;
  A(0, 1) = 1.0;  // identical to column 0
  A(1, 2) = 1.0;
  const auto est = sensing::ric_bruteforce(A, 2);
  REQUIRE(est.order == 2);
  REQUIRE(std::abs(est.delta - 1.0) <= 1e-12);
}

TEST_CASE("ric order two matches the pairwise closed form", "[sensing]") {
  const auto A = sensing::gen_gaussian(10, 20, 31);
  const double got = sensing::ric_bruteforce(A, 2).delta;
  const double want = oracles::ric2_pairwise_oracle(A);
  REQUIRE(std::abs(got - want) <= 1e-12);

  const auto F = sensing::gen_fourier(10, 12, 32);
  REQUIRE(std::abs(sensing::ric_bruteforce(F, 2).delta -
                   oracles::ric2_pairwise_oracle(F)) <= 1e-12);
}

TEST_CASE("ric is monotone in the order", "[sensing]") {
  const auto A = sensing::gen_gaussian(6, 10, 33);
  double prev = 0.0;
  for (std::size_t k = 1; k <= 4; ++k) {
    const double d = sensing::ric_bruteforce(A, k).delta;
    REQUIRE(d >= prev - 1e-14);
    prev = d;
  }
}

TEST_CASE("ric guard rejects oversized enumerations", "[sensing]") {
  const DenseMatrix<double> A(2, 40);
  REQUIRE_THROWS_AS(sensing::ric_bruteforce(A, 6), std::invalid_argument);
  REQUIRE_THROWS_AS(sensing::ric_bruteforce(A, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(sensing::ric_bruteforce(A, 41), std::invalid_argument);
}

TEST_CASE("partial fourier missing one row has closed-form ric", "[sensing]") {
  // Dropping a single DFT row leaves G = (1+1/m) I - (1/m) v v^H, whose
  // K-subset spectra give delta_K = (K-1)/m exactly, whichever row is gone.
  const std::size_t n = 17, m = 16;
  const auto A = sensing::gen_fourier(m, n, 77);
  for (std::size_t k = 2; k <= 4; ++k) {
    const double want = static_cast<double>(k - 1) / static_cast<double>(m);
    REQUIRE(std::abs(sensing::ric_bruteforce(A, k).delta - want) <= 1e-12);
  }
}
