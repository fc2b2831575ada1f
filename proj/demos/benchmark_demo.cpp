// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Experiment-layer usage: describe a benchmark as JSON, run it, and print
// the aggregate CSV.  The same text, saved to a file, drives the CLI:
//   pursuit_cli run spec.json
#include <cstdio>

#include "pursuit/pursuit.hpp"

int main() {
  const char* spec_text = R"({
    "kind": "recovery_percentage",
    "ensemble": {"type": "gaussian"},
    "signal": {"model": "flat"},
    "n": 128,
    "sparsity": [4, 8],
    "m": [32, 48, 64],
    "trials": 25,
    "seed": 1,
    "algorithms": ["AMOP", "OMP", "CoSaMP"]
  })";

  const auto spec = pursuit::bench::parse_spec_text(spec_text);
  const auto out = pursuit::bench::run_experiment(spec);
  std::fputs(out.aggregate_csv.c_str(), stdout);
  return 0;
}
