// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "pursuit/sensing.hpp"
#include "pursuit/signals.hpp"

using namespace pursuit;
using signals::SparseSignal;
using linalg::DenseVector;
using C = std::complex<double>;

namespace {

std::vector<double> sorted_magnitudes(const SparseSignal<double>& x) {
  std::vector<double> mags;
  for (double v : x.values) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end());
  return mags;
}

}  // namespace

TEST_CASE("flat signals have unit magnitudes", "[signals]") {
  const auto x = signals::gen_sparse_signal<double>(32, 3, signals::Flat{}, 1);
  REQUIRE(x.sparsity() == 3);
  for (double v : x.values) REQUIRE(std::abs(v) == 1.0);
}

TEST_CASE("signal generation is deterministic and validated", "[signals]") {
  const auto a = signals::gen_sparse_signal<double>(64, 5, signals::Flat{}, 9);
  const auto b = signals::gen_sparse_signal<double>(64, 5, signals::Flat{}, 9);
  REQUIRE(a.support == b.support);
  REQUIRE(a.values == b.values);
  REQUIRE(std::is_sorted(a.support.begin(), a.support.end()));

  REQUIRE_THROWS_AS(signals::gen_sparse_signal<double>(4, 5, signals::Flat{}, 1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(signals::gen_sparse_signal<double>(4, 0, signals::Flat{}, 1),
                    std::invalid_argument);
}

TEST_CASE("exponential magnitudes form the geometric multiset", "[signals]") {
  const auto x = signals::gen_sparse_signal<double>(
      64, 4, signals::Exponential{0.5}, 3);
  const std::vector<double> want{0.125, 0.25, 0.5, 1.0};
  const std::vector<double> got = sorted_magnitudes(x);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    REQUIRE(std::abs(got[i] - want[i]) <= 1e-15);
  }
}

TEST_CASE("exponential dynamic range is exactly alpha^(S-1)", "[signals]") {
  const double alpha = 0.7;
  const auto x = signals::gen_sparse_signal<double>(
      100, 6, signals::Exponential{alpha}, 4);
  const auto mags = sorted_magnitudes(x);
  REQUIRE(mags.back() == 1.0);
  REQUIRE(std::abs(mags.front() - std::pow(alpha, 5)) <= 1e-15);
  REQUIRE_THROWS_AS(
      signals::gen_sparse_signal<double>(8, 2, signals::Exponential{1.0}, 1),
      std::invalid_argument);
}

TEST_CASE("polynomial magnitudes form the power-law multiset", "[signals]") {
  const auto x = signals::gen_sparse_signal<double>(
      64, 4, signals::Polynomial{0.5}, 5);
  const std::vector<double> want{0.0625, 0.25, 0.5625, 1.0};  // (i/4)^2
  const std::vector<double> got = sorted_magnitudes(x);
  for (std::size_t i = 0; i < want.size(); ++i) {
    REQUIRE(std::abs(got[i] - want[i]) <= 1e-15);
  }
}

TEST_CASE("polynomial exponent outside (0,1) is rejected", "[signals]") {
  for (double p : {0.0, 1.0, 1.5, -0.2}) {
    REQUIRE_THROWS_AS(
        signals::gen_sparse_signal<double>(16, 3, signals::Polynomial{p}, 1),
        std::invalid_argument);
  }
}

TEST_CASE("full-support flat signal is a dense sign vector", "[signals]") {
  const auto x = signals::gen_sparse_signal<double>(6, 6, signals::Flat{}, 8);
  REQUIRE(x.sparsity() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    REQUIRE(x.support[i] == i);
    REQUIRE(std::abs(x.values[i]) == 1.0);
  }
}

TEST_CASE("complex flat signals sit on the unit circle", "[signals]") {
  const auto x = signals::gen_sparse_signal<C>(32, 4, signals::Flat{}, 10);
  for (const C& v : x.values) REQUIRE(std::abs(std::abs(v) - 1.0) <= 1e-15);
}

TEST_CASE("piecewise flat builds contiguous constant runs", "[signals]") {
  const signals::PiecewiseFlat pw{3, 0.1, 1.0};
  const auto x = signals::gen_sparse_signal<double>(32, 8, pw, 6);
  REQUIRE(x.sparsity() == 8);

  // Count maximal runs and check one value per run.
  std::size_t runs = 1;
  for (std::size_t i = 1; i < x.support.size(); ++i) {
    if (x.support[i] == x.support[i - 1] + 1) {
      REQUIRE(x.values[i] == x.values[i - 1]);
    } else {
      ++runs;
    }
  }
  REQUIRE(runs == 3);

  double peak = 0.0;
  for (double v : x.values) {
    REQUIRE(std::abs(v) >= 0.1 - 1e-12);
    peak = std::max(peak, std::abs(v));
  }
  REQUIRE(std::abs(peak - 1.0) <= 1e-12);  // levels normalized to max 1
}

TEST_CASE("piecewise flat defaults and clamps its piece count", "[signals]") {
  // Default piece count is max(1, S/4).
  const auto dflt = signals::gen_sparse_signal<double>(
      64, 8, signals::PiecewiseFlat{}, 12);
  std::size_t runs = 1;
  for (std::size_t i = 1; i < dflt.support.size(); ++i) {
    if (dflt.support[i] != dflt.support[i - 1] + 1) ++runs;
  }
  REQUIRE(runs == 2);

  // More pieces than support cells clamps to S.
  const auto clamped = signals::gen_sparse_signal<double>(
      32, 3, signals::PiecewiseFlat{10, 0.5, 1.0}, 13);
  REQUIRE(clamped.sparsity() == 3);
}

TEST_CASE("measure of an empty support is zero", "[signals]") {
  SparseSignal<double> x;
  x.ambient_dim = 8;
  const auto A = sensing::gen_gaussian(4, 8, 14);
  const DenseVector<double> y = signals::measure(A, x);
  for (std::size_t i = 0; i < y.size(); ++i) REQUIRE(y[i] == 0.0);
}

TEST_CASE("measure through the identity embeds the signal", "[signals]") {
  linalg::DenseMatrix<double> I(8, 8);
  for (std::size_t i = 0; i < 8; ++i) I(i, i) = 1.0;
  const auto x = signals::gen_sparse_signal<double>(8, 3, signals::Flat{}, 15);
  const DenseVector<double> y = signals::measure(I, x);
  REQUIRE(y == x.dense());
}

TEST_CASE("measure agrees with a densified matvec", "[signals]") {
  const auto A = sensing::gen_gaussian(16, 40, 16);
  const auto x = signals::gen_sparse_signal<double>(
      40, 6, signals::Exponential{0.6}, 17);
  const DenseVector<double> fast = signals::measure(A, x);
  const DenseVector<double> slow = linalg::matvec(A, x.dense());
  for (std::size_t i = 0; i < fast.size(); ++i) {
    REQUIRE(std::abs(fast[i] - slow[i]) <= 1e-12);
  }
  SparseSignal<double> wrong;
  wrong.ambient_dim = 39;
  REQUIRE_THROWS_AS(signals::measure(A, wrong), std::invalid_argument);
}

TEST_CASE("noiseless sentinel passes the measurement through", "[signals]") {
  const DenseVector<double> y{1.0, -2.0, 0.5};
  const DenseVector<double> out =
      signals::add_noise(y, std::numeric_limits<double>::infinity(), 3);
  REQUIRE(out == y);
}

TEST_CASE("noise norm hits the requested snr exactly", "[signals]") {
  const DenseVector<double> y = oracles::random_vector<double>(64, 18);
  for (double snr : {0.0, 5.0, 20.0, 40.0}) {
    const DenseVector<double> out = signals::add_noise(y, snr, 19);
    double nn = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      nn += (out[i] - y[i]) * (out[i] - y[i]);
    }
    const double want = linalg::norm2(y) * std::pow(10.0, -snr / 20.0);
    REQUIRE(std::abs(std::sqrt(nn) - want) <= 1e-12 * linalg::norm2(y));
  }
}

TEST_CASE("twenty dB noise on a unit-norm vector has norm 0.1", "[signals]") {
  DenseVector<double> y(4, 0.5);  // norm exactly 1
  const DenseVector<double> out = signals::add_noise(y, 20.0, 20);
  double nn = 0.0;
  for (std::size_t i = 0; i < 4; ++i) nn += (out[i] - y[i]) * (out[i] - y[i]);
  REQUIRE(std::abs(std::sqrt(nn) - 0.1) <= 1e-12);
}

TEST_CASE("complex noise is rescaled the same way", "[signals]") {
  const DenseVector<C> y = oracles::random_vector<C>(32, 21);
  const DenseVector<C> out = signals::add_noise(y, 10.0, 22);
  double nn = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) nn += linalg::abs2(out[i] - y[i]);
  const double want = linalg::norm2(y) * std::pow(10.0, -0.5);
  REQUIRE(std::abs(std::sqrt(nn) - want) <= 1e-12 * linalg::norm2(y));
}

TEST_CASE("add_noise rejects zero measurements and bad snr", "[signals]") {
  const DenseVector<double> zero(4, 0.0);
  REQUIRE_THROWS_AS(signals::add_noise(zero, 10.0, 1), std::invalid_argument);
  const DenseVector<double> y(4, 1.0);
  REQUIRE_THROWS_AS(signals::add_noise(y, std::nan(""), 1), std::invalid_argument);
  REQUIRE_THROWS_AS(
      signals::add_noise(y, -std::numeric_limits<double>::infinity(), 1),
      std::invalid_argument);
}
