// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Greedy sparse recovery.  Three algorithms share one toolbox:
//
//  * amop    - adaptive-width orthogonal pursuit: per iteration it ranks the
//              correlation proxy, chooses how many new columns to take from
//              the relative-drop profile of the ranked magnitudes (annealed
//              by a decaying threshold), then least-squares fits over the
//              accumulated support via an incremental QR.
//  * omp     - classic one-column-per-iteration orthogonal pursuit; by
//              construction it must match amop with the selection width
//              pinned to 1, bit for bit.
//  * cosamp  - support-merge / prune baseline with batch least squares.
//
// All three are deterministic: ties in every ranking break toward the
// smaller column index.
#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pursuit/dense.hpp"
#include "pursuit/incremental_qr.hpp"
#include "pursuit/lstsq.hpp"
#include "pursuit/scalar.hpp"
#include "pursuit/signals.hpp"

namespace pursuit::recovery {

using linalg::DenseMatrix;
using linalg::DenseVector;
using signals::SparseSignal;

struct AmopConfig {
  double threshold = 0.3;     // relative-drop threshold T, in (0, 1)
  double halt_eps = 1e-6;     // halt when ||r|| / ||y|| drops below this
  std::size_t cap = 8;        // largest batch width K per iteration
  double beta_floor = 0.1;    // anneal floor for the decay multiplier
  double beta_decay = 0.9;    // per-round decay of the multiplier
  std::size_t max_iters = 100;
  double lin_dep_tol = 1e-10;

  void validate() const {
    if (!(threshold > 0.0) || !(threshold < 1.0)) {
      throw std::invalid_argument("AmopConfig: threshold outside (0, 1)");
    }
    if (!(halt_eps > 0.0)) {
      throw std::invalid_argument("AmopConfig: halt_eps must be positive");
    }
    if (cap == 0) throw std::invalid_argument("AmopConfig: cap must be positive");
    if (!(beta_floor > 0.0) || !(beta_floor < 1.0)) {
      throw std::invalid_argument("AmopConfig: beta_floor outside (0, 1)");
    }
    if (!(beta_decay > 0.0) || !(beta_decay < 1.0)) {
      throw std::invalid_argument("AmopConfig: beta_decay outside (0, 1)");
    }
    if (max_iters == 0) {
      throw std::invalid_argument("AmopConfig: max_iters must be positive");
    }
    if (lin_dep_tol < 0.0) {
      throw std::invalid_argument("AmopConfig: negative lin_dep_tol");
    }
  }
};

// Proxy magnitudes sorted descending with the permutation that produced the
// ordering; ties break toward the smaller index.
struct RankedProxy {
  std::vector<double> magnitudes;
  std::vector<std::size_t> perm;
};

enum class HaltReason {
  Converged,        // relative residual fell below halt_eps
  MaxIters,         // iteration budget exhausted
  SupportFull,      // support reached its cap of ambient_rows - 1 columns
  ZeroMeasurement,  // ||y|| == 0, nothing to recover
  Stagnated,        // no further progress is possible
};

inline const char* halt_reason_name(HaltReason h) {
  switch (h) {
    case HaltReason::Converged: return "Converged";
    case HaltReason::MaxIters: return "MaxIters";
    case HaltReason::SupportFull: return "SupportFull";
    case HaltReason::ZeroMeasurement: return "ZeroMeasurement";
    case HaltReason::Stagnated: return "Stagnated";
  }
  return "Unknown";
}

template <linalg::Scalar T>
struct RecoveryResult {
  SparseSignal<T> estimate;
  std::vector<std::size_t> support;      // in selection order (amop / omp)
  std::size_t iterations = 0;
  std::vector<double> residual_history;  // ||r||/||y|| after each iteration
  HaltReason halt_reason = HaltReason::Converged;
};

// Per-iteration diagnostics, populated only when a trace sink is passed.
struct IterationTrace {
  std::vector<std::size_t> chosen;            // indices picked this iteration
  std::vector<std::size_t> rejected;          // linearly dependent, skipped
  std::size_t k = 0;                          // batch width select_k returned
  double beta_final = 1.0;                    // multiplier when it returned
  bool triggered = false;                     // k came from a qualifying drop
  bool budget_clamped = false;                // k reduced by remaining budget
  std::vector<double> ranked_magnitudes;      // masked proxy, descending
};

struct AmopTrace {
  std::vector<IterationTrace> iterations;
};

template <linalg::Scalar T>
RankedProxy rank_proxy(const DenseVector<T>& u,
                       const std::vector<bool>* excluded = nullptr) {
  RankedProxy out;
  out.magnitudes.reserve(u.size());
  out.perm.reserve(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (excluded && (*excluded)[j]) continue;
    out.perm.push_back(j);
    out.magnitudes.push_back(linalg::abs_of(u[j]));
  }
  std::vector<std::size_t> order(out.perm.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (out.magnitudes[a] != out.magnitudes[b]) {
      return out.magnitudes[a] > out.magnitudes[b];
    }
    return out.perm[a] < out.perm[b];
  });
  RankedProxy sorted;
  sorted.magnitudes.reserve(order.size());
  sorted.perm.reserve(order.size());
  for (std::size_t i : order) {
    sorted.magnitudes.push_back(out.magnitudes[i]);
    sorted.perm.push_back(out.perm[i]);
  }
  return sorted;
}

struct KSelection {
  std::size_t k = 1;
  double beta_final = 1.0;
  bool triggered = false;       // the returned k is itself a qualifying drop
  bool budget_clamped = false;  // reduced to fit the remaining support budget
};

namespace detail {

// Batch-width rule.  With the decay multiplier beta starting at 1: the
// candidate width is the smallest k (counting kept entries) whose boundary
// drop (mag[k-1]-mag[k])/mag[k-1] exceeds threshold*beta.  A candidate
// within the cap wins immediately; otherwise beta decays until it falls
// below beta_floor, at which point the candidate is clamped to the cap (or,
// with no candidate at all, a single column is taken).
inline KSelection select_k_impl(const std::vector<double>& mags,
                                const AmopConfig& cfg,
                                std::size_t remaining_budget) {
  if (mags.empty() || !(mags[0] > 0.0)) {
    throw std::invalid_argument("select_k: no positive proxy magnitude");
  }
  if (remaining_budget == 0) {
    throw std::invalid_argument("select_k: zero remaining budget");
  }

  const std::size_t len = mags.size();
  KSelection sel;
  double beta = 1.0;
  while (true) {
    std::size_t candidate = 0;  // 0 = none
    for (std::size_t i = 1; i < len; ++i) {
      if (!(mags[i - 1] > 0.0)) break;  // zero tail, no further drops defined
      const double drop = (mags[i - 1] - mags[i]) / mags[i - 1];
      if (drop > cfg.threshold * beta) {
        candidate = i;
        break;
      }
    }
    if (candidate != 0 && candidate <= cfg.cap) {
      sel.k = candidate;
      sel.beta_final = beta;
      sel.triggered = true;
      break;
    }
    if (beta < cfg.beta_floor) {
      sel.k = candidate != 0 ? std::min(cfg.cap, candidate) : 1;
      sel.beta_final = beta;
      sel.triggered = false;
      break;
    }
    beta *= cfg.beta_decay;
  }

  if (sel.k > remaining_budget) {
    sel.k = remaining_budget;
    sel.budget_clamped = true;
  }
  return sel;
}

// Residual r = y - A_support * coeffs, shared verbatim by amop and omp so
// their arithmetic agrees bit for bit.
template <linalg::Scalar T>
DenseVector<T> residual_after_fit(const DenseMatrix<T>& A,
                                  const std::vector<std::size_t>& support,
                                  const std::vector<T>& coeffs,
                                  const DenseVector<T>& y) {
  DenseVector<T> r = y;
  for (std::size_t i = 0; i < support.size(); ++i) {
    linalg::axpy(-coeffs[i], A.column(support[i]),
                 std::span<T>(r.data(), r.size()));
  }
  return r;
}

// Estimate aligned to ascending indices; exact-zero coefficients dropped.
template <linalg::Scalar T>
SparseSignal<T> make_estimate(std::size_t ambient,
                              const std::vector<std::size_t>& support,
                              const std::vector<T>& coeffs) {
  std::vector<std::size_t> order(support.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  SparseSignal<T> x;
  x.ambient_dim = ambient;
  for (std::size_t i : order) {
    if (coeffs[i] == T{}) continue;
    x.support.push_back(support[i]);
    x.values.push_back(coeffs[i]);
  }
  return x;
}

}  // namespace detail

inline std::size_t select_k(const RankedProxy& ranked, const AmopConfig& cfg,
                            std::size_t remaining_budget) {
  return detail::select_k_impl(ranked.magnitudes, cfg, remaining_budget).k;
}

template <linalg::Scalar T>
RecoveryResult<T> amop(const DenseMatrix<T>& A, const DenseVector<T>& y,
                       const AmopConfig& cfg, AmopTrace* trace = nullptr) {
  cfg.validate();
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (y.size() != m) throw std::invalid_argument("amop: rhs length mismatch");

  RecoveryResult<T> res;
  const double ynorm = linalg::norm2(y);
  if (ynorm == 0.0) {
    res.estimate.ambient_dim = n;
    res.halt_reason = HaltReason::ZeroMeasurement;
    return res;
  }

  linalg::IncrementalQR<T> qr(m, cfg.lin_dep_tol);
  std::vector<bool> masked(n, false);
  std::vector<T> coeffs;
  DenseVector<T> r = y;

  while (true) {
    if (qr.size() + 1 >= m) {  // support is capped at m - 1 columns
      res.halt_reason = HaltReason::SupportFull;
      break;
    }
    if (res.iterations >= cfg.max_iters) {
      res.halt_reason = HaltReason::MaxIters;
      break;
    }

    const DenseVector<T> u = linalg::adjoint_matvec(A, r);
    const RankedProxy ranked = rank_proxy(u, &masked);
    if (ranked.magnitudes.empty() || !(ranked.magnitudes[0] > 0.0)) {
      // Residual is orthogonal to every column still available.
      res.halt_reason = HaltReason::Stagnated;
      break;
    }

    const std::size_t budget = (m - 1) - qr.size();
    const KSelection sel =
        detail::select_k_impl(ranked.magnitudes, cfg, budget);
    const std::vector<std::size_t> chosen(ranked.perm.begin(),
                                          ranked.perm.begin() + sel.k);

    const std::vector<std::size_t> rejected =
        qr.extend(A, std::span<const std::size_t>(chosen));
    for (std::size_t idx : chosen) masked[idx] = true;

    coeffs = qr.solve(y);
    r = detail::residual_after_fit(A, qr.selected(), coeffs, y);

    ++res.iterations;
    const double rel = linalg::norm2(r) / ynorm;
    res.residual_history.push_back(rel);

    if (trace) {
      IterationTrace it;
      it.chosen = chosen;
      it.rejected = rejected;
      it.k = sel.k;
      it.beta_final = sel.beta_final;
      it.triggered = sel.triggered;
      it.budget_clamped = sel.budget_clamped;
      it.ranked_magnitudes = ranked.magnitudes;
      trace->iterations.push_back(std::move(it));
    }

    if (rel < cfg.halt_eps) {
      res.halt_reason = HaltReason::Converged;
      break;
    }
  }

  res.support = qr.selected();
  res.estimate = detail::make_estimate(n, qr.selected(), coeffs);
  return res;
}

// Reference one-column-per-iteration pursuit.  Kept structurally independent
// of amop (its own argmax scan) precisely so the two can be compared.
template <linalg::Scalar T>
RecoveryResult<T> omp(const DenseMatrix<T>& A, const DenseVector<T>& y,
                      double halt_eps, std::size_t max_iters,
                      double lin_dep_tol = 1e-10) {
  if (!(halt_eps > 0.0)) throw std::invalid_argument("omp: halt_eps must be positive");
  if (max_iters == 0) throw std::invalid_argument("omp: max_iters must be positive");
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (y.size() != m) throw std::invalid_argument("omp: rhs length mismatch");

  RecoveryResult<T> res;
  const double ynorm = linalg::norm2(y);
  if (ynorm == 0.0) {
    res.estimate.ambient_dim = n;
    res.halt_reason = HaltReason::ZeroMeasurement;
    return res;
  }

  linalg::IncrementalQR<T> qr(m, lin_dep_tol);
  std::vector<bool> masked(n, false);
  std::vector<T> coeffs;
  DenseVector<T> r = y;

  while (true) {
    if (qr.size() + 1 >= m) {
      res.halt_reason = HaltReason::SupportFull;
      break;
    }
    if (res.iterations >= max_iters) {
      res.halt_reason = HaltReason::MaxIters;
      break;
    }

    const DenseVector<T> u = linalg::adjoint_matvec(A, r);
    std::size_t best = n;
    double best_mag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (masked[j]) continue;
      const double mag = linalg::abs_of(u[j]);
      if (mag > best_mag) {  // strict: ties keep the smaller index
        best_mag = mag;
        best = j;
      }
    }
    if (best == n) {
      res.halt_reason = HaltReason::Stagnated;
      break;
    }

    const std::size_t pick[1] = {best};
    qr.extend(A, std::span<const std::size_t>(pick, 1));
    masked[best] = true;

    coeffs = qr.solve(y);
    r = detail::residual_after_fit(A, qr.selected(), coeffs, y);

    ++res.iterations;
    const double rel = linalg::norm2(r) / ynorm;
    res.residual_history.push_back(rel);
    if (rel < halt_eps) {
      res.halt_reason = HaltReason::Converged;
      break;
    }
  }

  res.support = qr.selected();
  res.estimate = detail::make_estimate(n, qr.selected(), coeffs);
  return res;
}

// Support-merge / prune baseline.  Per iteration: merge the current support
// with the 2s strongest proxy coordinates, least-squares fit over the merged
// set (rank-truncated, so coherent dictionaries cannot blow it up), keep the
// s largest coefficients.  Halts on convergence, iteration budget, or three
// consecutive iterations improving the relative residual by less than 1e-7.
template <linalg::Scalar T>
RecoveryResult<T> cosamp(const DenseMatrix<T>& A, const DenseVector<T>& y,
                         std::size_t s, double halt_eps,
                         std::size_t max_iters) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (s == 0) throw std::invalid_argument("cosamp: sparsity must be positive");
  if (3 * s > m) {
    throw std::invalid_argument("cosamp: requires 3*s <= rows");
  }
  if (!(halt_eps > 0.0)) throw std::invalid_argument("cosamp: halt_eps must be positive");
  if (max_iters == 0) throw std::invalid_argument("cosamp: max_iters must be positive");
  if (y.size() != m) throw std::invalid_argument("cosamp: rhs length mismatch");

  RecoveryResult<T> res;
  const double ynorm = linalg::norm2(y);
  if (ynorm == 0.0) {
    res.estimate.ambient_dim = n;
    res.halt_reason = HaltReason::ZeroMeasurement;
    return res;
  }

  SparseSignal<T> xhat;
  xhat.ambient_dim = n;
  DenseVector<T> r = y;
  double prev_rel = 1.0;
  int stagnant = 0;

  while (true) {
    if (res.iterations >= max_iters) {
      res.halt_reason = HaltReason::MaxIters;
      break;
    }

    const DenseVector<T> u = linalg::adjoint_matvec(A, r);
    const RankedProxy ranked = rank_proxy(u);
    if (ranked.magnitudes.empty() || !(ranked.magnitudes[0] > 0.0)) {
      res.halt_reason = HaltReason::Stagnated;
      break;
    }

    std::vector<std::size_t> merged = xhat.support;
    const std::size_t take = std::min<std::size_t>(2 * s, ranked.perm.size());
    for (std::size_t i = 0; i < take; ++i) {
      if (!(ranked.magnitudes[i] > 0.0)) break;
      merged.push_back(ranked.perm[i]);
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    const std::vector<T> coeffs = linalg::lstsq_over_columns(
        A, std::span<const std::size_t>(merged), y);

    // Prune to the s largest coefficients (ties toward smaller index).
    std::vector<std::size_t> order(merged.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ma = linalg::abs_of(coeffs[a]);
      const double mb = linalg::abs_of(coeffs[b]);
      if (ma != mb) return ma > mb;
      return merged[a] < merged[b];
    });
    order.resize(std::min(s, order.size()));

    std::vector<std::size_t> kept_support;
    std::vector<T> kept_coeffs;
    for (std::size_t i : order) {
      if (coeffs[i] == T{}) continue;
      kept_support.push_back(merged[i]);
      kept_coeffs.push_back(coeffs[i]);
    }
    xhat = detail::make_estimate(n, kept_support, kept_coeffs);

    r = y;
    for (std::size_t i = 0; i < xhat.support.size(); ++i) {
      linalg::axpy(-xhat.values[i], A.column(xhat.support[i]),
                   std::span<T>(r.data(), r.size()));
    }

    ++res.iterations;
    const double rel = linalg::norm2(r) / ynorm;
    res.residual_history.push_back(rel);

    if (rel < halt_eps) {
      res.halt_reason = HaltReason::Converged;
      break;
    }
    if (prev_rel - rel < 1e-7) {
      if (++stagnant >= 3) {
        res.halt_reason = HaltReason::Stagnated;
        break;
      }
    } else {
      stagnant = 0;
    }
    prev_rel = rel;
  }

  res.support = xhat.support;
  res.estimate = xhat;
  return res;
}

}  // namespace pursuit::recovery
