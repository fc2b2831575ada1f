// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver.  Exit codes: 0 on success, 1 on bad user input
// (malformed spec, malformed matrix/vector file, CLI misuse), 2 on runtime
// failure.
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "pursuit/pursuit.hpp"

namespace {

using pursuit::linalg::DenseMatrix;
using pursuit::linalg::DenseVector;

// "-" means stdout.  Files are opened in binary mode so line endings stay LF.
void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_spec(const std::string& spec_path, std::optional<std::uint64_t> seed) {
  pursuit::bench::ExperimentSpec spec =
      pursuit::bench::parse_spec_text(read_text(spec_path));
  if (seed) spec.base_seed = *seed;
  const pursuit::bench::ExperimentOutput out = pursuit::bench::run_experiment(spec);
  write_text(spec.output, out.aggregate_csv);
  if (spec.output != "-") std::cerr << "wrote " << spec.output << "\n";
  if (out.trial_csv) {
    write_text(*spec.trial_output, *out.trial_csv);
    if (*spec.trial_output != "-") std::cerr << "wrote " << *spec.trial_output << "\n";
  }
  return 0;
}

struct RecoverOptions {
  std::string matrix_path;
  std::string y_path;
  std::string algo;
  std::string out = "-";
  double threshold = 0.3;
  double eps = 1e-6;
  std::size_t cap_k = 0;      // 0 = max(2, m/10)
  std::size_t sparsity = 0;   // required for cosamp
  std::size_t max_iters = 0;  // 0 = m
};

template <pursuit::linalg::Scalar T>
int do_recover(const DenseMatrix<T>& A, const DenseVector<T>& y,
               const RecoverOptions& opt) {
  namespace recovery = pursuit::recovery;
  const std::size_t m = A.rows();
  const std::size_t max_iters = opt.max_iters ? opt.max_iters : m;

  recovery::RecoveryResult<T> result;
  if (opt.algo == "amop") {
    recovery::AmopConfig cfg;
    cfg.threshold = opt.threshold;
    cfg.halt_eps = opt.eps;
    cfg.cap = opt.cap_k ? opt.cap_k : std::max<std::size_t>(2, m / 10);
    cfg.max_iters = max_iters;
    result = recovery::amop(A, y, cfg);
  } else if (opt.algo == "omp") {
    result = recovery::omp(A, y, opt.eps, max_iters);
  } else {
    if (opt.sparsity == 0) {
      throw pursuit::bench::SpecError("recover: cosamp requires --sparsity");
    }
    result = recovery::cosamp(A, y, opt.sparsity, opt.eps, max_iters);
  }

  std::ostringstream body;
  pursuit::io::write_vector(body, result.estimate.dense());
  write_text(opt.out, body.str());

  std::cerr << opt.algo << ": " << result.estimate.support.size()
            << " nonzeros, " << result.iterations << " iterations, halt="
            << recovery::halt_reason_name(result.halt_reason);
  if (!result.residual_history.empty()) {
    std::cerr << ", relative residual " << result.residual_history.back();
  }
  std::cerr << "\n";
  return 0;
}

int recover_cmd(const RecoverOptions& opt) {
  namespace io = pursuit::io;
  const io::AnyMatrix any_a = io::read_matrix_file(opt.matrix_path);
  std::ifstream yin(opt.y_path, std::ios::binary);
  if (!yin) throw std::runtime_error("cannot open file: " + opt.y_path);
  const auto any_y = io::read_vector(yin);

  if (std::holds_alternative<DenseMatrix<double>>(any_a)) {
    if (!std::holds_alternative<DenseVector<double>>(any_y)) {
      throw io::ParseError("recover: matrix is real but vector is complex");
    }
    return do_recover(std::get<DenseMatrix<double>>(any_a),
                      std::get<DenseVector<double>>(any_y), opt);
  }
  if (!std::holds_alternative<DenseVector<std::complex<double>>>(any_y)) {
    throw io::ParseError(
        "recover: matrix is complex but vector is real; rewrite the vector "
        "with a complex header");
  }
  return do_recover(std::get<DenseMatrix<std::complex<double>>>(any_a),
                    std::get<DenseVector<std::complex<double>>>(any_y), opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse recovery benchmark driver"};
  app.set_version_flag("--version", pursuit::kVersion);
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed_override;
  app.add_option("--seed", seed_override,
                 "Override the base seed of the executed experiment")
      ->expected(1);

  // run <spec.json>
  std::string spec_path;
  CLI::App* run = app.add_subcommand("run", "Run an experiment spec (JSON)");
  run->add_option("spec", spec_path, "Path to the experiment spec")->required();

  // analyze pmin / analyze drange
  CLI::App* analyze = app.add_subcommand("analyze", "Closed-form tables");
  analyze->require_subcommand(1);

  std::size_t k_max = 20;
  std::vector<double> t_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::string pmin_out = "-";
  CLI::App* pmin = analyze->add_subcommand(
      "pmin", "Worst-case energy fraction captured per selection round");
  pmin->add_option("--k-max", k_max, "Largest selection cap K");
  pmin->add_option("--t", t_values, "Threshold values")->delimiter(',');
  pmin->add_option("--out", pmin_out, "Output path (- for stdout)");

  std::size_t s_max = 36;
  std::vector<double> noise_values = {0.0, 0.1};
  std::string drange_out = "-";
  CLI::App* drange = analyze->add_subcommand(
      "drange", "Smallest recoverable element norm as sparsity grows");
  drange->add_option("--s-max", s_max, "Largest sparsity");
  drange->add_option("--noise", noise_values, "Noise bounds")->delimiter(',');
  drange->add_option("--out", drange_out, "Output path (- for stdout)");

  // recover
  RecoverOptions ropt;
  CLI::App* recover =
      app.add_subcommand("recover", "Recover a sparse vector from files");
  recover->add_option("--matrix", ropt.matrix_path, "Measurement matrix file")
      ->required();
  recover->add_option("--y", ropt.y_path, "Measurement vector file")->required();
  recover->add_option("--algo", ropt.algo, "Algorithm: amop, omp or cosamp")
      ->required()
      ->check(CLI::IsMember({"amop", "omp", "cosamp"}));
  recover->add_option("--t", ropt.threshold, "Selection threshold (amop)");
  recover->add_option("--eps", ropt.eps, "Halting residual ratio");
  recover->add_option("--cap-k", ropt.cap_k, "Per-iteration cap (amop)");
  recover->add_option("--sparsity", ropt.sparsity, "Target sparsity (cosamp)");
  recover->add_option("--max-iters", ropt.max_iters, "Iteration limit");
  recover->add_option("--out", ropt.out, "Output path (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed()) return run_spec(spec_path, seed_override);
    if (pmin->parsed()) {
      pursuit::bench::ExperimentSpec spec;
      spec.kind = pursuit::bench::ExperimentKind::PminTable;
      spec.k_max = k_max;
      spec.t_values = t_values;
      spec.output = pmin_out;
      if (seed_override) spec.base_seed = *seed_override;
      write_text(pmin_out, pursuit::bench::run_experiment(spec).aggregate_csv);
      return 0;
    }
    if (drange->parsed()) {
      pursuit::bench::ExperimentSpec spec;
      spec.kind = pursuit::bench::ExperimentKind::DynamicRangeCurve;
      spec.s_max = s_max;
      spec.noise_values = noise_values;
      spec.output = drange_out;
      if (seed_override) spec.base_seed = *seed_override;
      write_text(drange_out, pursuit::bench::run_experiment(spec).aggregate_csv);
      return 0;
    }
    return recover_cmd(ropt);
  } catch (const pursuit::bench::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const pursuit::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
