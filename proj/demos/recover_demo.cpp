// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Minimal end-to-end usage: build a Gaussian measurement matrix, measure a
// sparse signal at 20 dB SNR, and recover it with all three solvers.
#include <cstdio>

#include "pursuit/pursuit.hpp"

int main() {
  using namespace pursuit;

  const std::size_t n = 256, m = 64, s = 6;
  const auto A = sensing::gen_gaussian(m, n, /*seed=*/7);
  const auto x = signals::gen_sparse_signal<double>(n, s, signals::Flat{}, 11);
  auto y = signals::measure(A, x);
  y = signals::add_noise(y, /*snr_db=*/20.0, /*seed=*/13);

  recovery::AmopConfig cfg;
  cfg.halt_eps = 0.1;  // matches the 20 dB noise floor
  cfg.cap = 6;

  const auto run = [&](const char* name, recovery::RecoveryResult<double> r) {
    std::printf("%-7s rel_error=%.4f iterations=%zu halt=%s\n", name,
                metrics::relative_error(x, r.estimate), r.iterations,
                recovery::halt_reason_name(r.halt_reason));
  };

  run("amop", recovery::amop(A, y, cfg));
  run("omp", recovery::omp(A, y, cfg.halt_eps, m));
  run("cosamp", recovery::cosamp(A, y, s, cfg.halt_eps, m));
  return 0;
}
