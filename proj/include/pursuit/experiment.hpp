// Copyright 2026 The pursuit Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Benchmark harness: declarative experiment specs (JSON), deterministic
// seed derivation, trial execution, and CSV rendering.
//
// Determinism contract: everything an aggregate CSV contains is a pure
// function of the resolved spec, so reruns are byte-identical.  Wall-clock
// timings appear only in the optional per-trial CSV.  Per-trial seeds are
// derived by hashing (n, m, S, snr, trial, algorithm) into the base seed,
// so results do not depend on execution order and any single trial can be
// reproduced in isolation.
#pragma once

#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "pursuit/dense.hpp"
#include "pursuit/metrics.hpp"
#include "pursuit/recovery.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/sensing.hpp"
#include "pursuit/signals.hpp"
#include "pursuit/version.hpp"

namespace pursuit::bench {

using nlohmann::json;

// A malformed or inconsistent experiment spec; distinct from runtime
// failures so the CLI can exit 1 vs 2.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  RecoveryPercentage,
  NoiseSweep,
  StapSupport,
  PminTable,
  DynamicRangeCurve,
};

enum class Algo { Amop, Omp, Cosamp };

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Amop: return "AMOP";
    case Algo::Omp: return "OMP";
    case Algo::Cosamp: return "CoSaMP";
  }
  return "?";
}

inline const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::RecoveryPercentage: return "recovery_percentage";
    case ExperimentKind::NoiseSweep: return "noise_sweep";
    case ExperimentKind::StapSupport: return "stap_support";
    case ExperimentKind::PminTable: return "pmin_table";
    case ExperimentKind::DynamicRangeCurve: return "dynamic_range_curve";
  }
  return "?";
}

// Optional overrides for the adaptive algorithm; anything unset follows the
// benchmark policy (threshold 0.3, cap max(2, m/10), halt_eps 1e-6 noiseless
// or 10^(-snr/20) noisy, max_iters m).
struct AmopOverrides {
  std::optional<double> threshold;
  std::optional<double> halt_eps;
  std::optional<std::size_t> cap_k;
  std::optional<double> beta_floor;
  std::optional<double> beta_decay;
  std::optional<std::size_t> max_iters;
  std::optional<double> lin_dep_tol;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::RecoveryPercentage;
  sensing::MeasurementEnsemble ensemble = sensing::Gaussian{};
  signals::SignalModel signal = signals::Flat{};
  std::size_t n = 256;
  std::vector<std::size_t> sparsity = {4};
  std::vector<std::size_t> m_list = {64};
  std::vector<double> snr_db;  // empty = noiseless
  std::size_t trials = 100;
  std::uint64_t base_seed = 1;
  std::vector<Algo> algorithms = {Algo::Amop};
  AmopOverrides amop;
  std::string output = "result.csv";
  std::optional<std::string> trial_output;
  // Analysis-table parameters (pmin_table / dynamic_range_curve).
  std::size_t k_max = 20;
  std::vector<double> t_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t s_max = 36;
  std::vector<double> noise_values = {0.0, 0.1};

  bool noiseless() const { return snr_db.empty(); }
};

inline constexpr double kNoiselessSnr = std::numeric_limits<double>::infinity();
inline constexpr double kSuccessTol = 1e-6;

// ---------------------------------------------------------------------------
// Spec parsing / serialization
// ---------------------------------------------------------------------------

namespace detail {

inline void check_keys(const json& obj, const char* what,
                       std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw SpecError(std::string(what) + ": unknown key '" + key + "'");
    }
  }
}

inline double as_finite_double(const json& v, const std::string& field) {
  if (!v.is_number()) throw SpecError(field + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SpecError(field + ": must be finite");
  return d;
}

inline std::size_t as_positive_size(const json& v, const std::string& field) {
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > 0) {
    return static_cast<std::size_t>(v.get<std::uint64_t>());
  }
  if (v.is_number_integer() && v.get<long long>() > 0) {
    return static_cast<std::size_t>(v.get<long long>());
  }
  throw SpecError(field + ": expected a positive integer");
}

inline std::uint64_t as_seed(const json& v, const std::string& field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(v.get<long long>());
  }
  throw SpecError(field + ": expected a nonnegative integer");
}

inline sensing::MeasurementEnsemble parse_ensemble(const json& j) {
  if (!j.is_object()) throw SpecError("ensemble: expected an object");
  if (!j.contains("type")) throw SpecError("ensemble.type: missing");
  if (!j.at("type").is_string()) throw SpecError("ensemble.type: expected a string");
  const std::string type = j.at("type").get<std::string>();
  if (type == "gaussian" || type == "bernoulli" || type == "fourier") {
    check_keys(j, "ensemble", {"type"});
    if (type == "gaussian") return sensing::Gaussian{};
    if (type == "bernoulli") return sensing::Bernoulli{};
    return sensing::Fourier{};
  }
  if (type == "spatial_temporal") {
    check_keys(j, "ensemble",
               {"type", "n_elements", "n_pulses", "spatial_grid", "doppler_grid"});
    sensing::SpatialTemporal st;
    if (j.contains("n_elements")) st.n_elements = as_positive_size(j.at("n_elements"), "ensemble.n_elements");
    if (j.contains("n_pulses")) st.n_pulses = as_positive_size(j.at("n_pulses"), "ensemble.n_pulses");
    if (j.contains("spatial_grid")) st.spatial_grid = as_positive_size(j.at("spatial_grid"), "ensemble.spatial_grid");
    if (j.contains("doppler_grid")) st.doppler_grid = as_positive_size(j.at("doppler_grid"), "ensemble.doppler_grid");
    return st;
  }
  throw SpecError("ensemble.type: unknown ensemble '" + type + "'");
}

inline signals::SignalModel parse_signal(const json& j) {
  if (!j.is_object()) throw SpecError("signal: expected an object");
  if (!j.contains("model")) throw SpecError("signal.model: missing");
  if (!j.at("model").is_string()) throw SpecError("signal.model: expected a string");
  const std::string model = j.at("model").get<std::string>();
  if (model == "flat") {
    check_keys(j, "signal", {"model"});
    return signals::Flat{};
  }
  if (model == "exponential") {
    check_keys(j, "signal", {"model", "alpha"});
    signals::Exponential e;
    if (j.contains("alpha")) {
      e.alpha = as_finite_double(j.at("alpha"), "signal.alpha");
      if (!(e.alpha > 0.0) || !(e.alpha < 1.0)) {
        throw SpecError("signal.alpha: must lie in (0, 1)");
      }
    }
    return e;
  }
  if (model == "polynomial") {
    check_keys(j, "signal", {"model", "p"});
    signals::Polynomial p;
    if (j.contains("p")) {
      p.p = as_finite_double(j.at("p"), "signal.p");
      if (!(p.p > 0.0) || !(p.p < 1.0)) {
        throw SpecError("signal.p: must lie in (0, 1)");
      }
    }
    return p;
  }
  if (model == "piecewise_flat") {
    check_keys(j, "signal", {"model", "n_pieces", "level_range"});
    signals::PiecewiseFlat pw;
    if (j.contains("n_pieces")) {
      const json& np = j.at("n_pieces");
      if (np.is_string() && np.get<std::string>() == "auto") {
        pw.n_pieces = 0;
      } else if (np.is_number_integer() && np.get<long long>() >= 1) {
        pw.n_pieces = static_cast<std::size_t>(np.get<long long>());
      } else {
        throw SpecError("signal.n_pieces: expected a positive integer or \"auto\"");
      }
    }
    if (j.contains("level_range")) {
      const json& lr = j.at("level_range");
      if (!lr.is_array() || lr.size() != 2) {
        throw SpecError("signal.level_range: expected [low, high]");
      }
      pw.level_lo = as_finite_double(lr.at(0), "signal.level_range[0]");
      pw.level_hi = as_finite_double(lr.at(1), "signal.level_range[1]");
      if (!(pw.level_lo > 0.0) || pw.level_hi < pw.level_lo) {
        throw SpecError("signal.level_range: need 0 < low <= high");
      }
    }
    return pw;
  }
  throw SpecError("signal.model: unknown model '" + model + "'");
}

inline ExperimentKind parse_kind(const json& v) {
  if (!v.is_string()) throw SpecError("kind: expected a string");
  const std::string s = v.get<std::string>();
  if (s == "recovery_percentage") return ExperimentKind::RecoveryPercentage;
  if (s == "noise_sweep") return ExperimentKind::NoiseSweep;
  if (s == "stap_support") return ExperimentKind::StapSupport;
  if (s == "pmin_table") return ExperimentKind::PminTable;
  if (s == "dynamic_range_curve") return ExperimentKind::DynamicRangeCurve;
  throw SpecError("kind: unknown experiment kind '" + s + "'");
}

inline Algo parse_algo(const json& v) {
  if (!v.is_string()) throw SpecError("algorithms: expected strings");
  const std::string s = v.get<std::string>();
  if (s == "AMOP") return Algo::Amop;
  if (s == "OMP") return Algo::Omp;
  if (s == "CoSaMP") return Algo::Cosamp;
  throw SpecError("algorithms: unknown algorithm '" + s +
                  "' (expected AMOP, OMP or CoSaMP)");
}

}  // namespace detail

// Validates cross-field consistency; called by parse_spec and run_experiment.
inline void validate_spec(const ExperimentSpec& spec) {
  using detail::check_keys;
  if (spec.trials == 0) throw SpecError("trials: must be positive");
  if (spec.n == 0) throw SpecError("n: must be positive");
  if (spec.algorithms.empty()) throw SpecError("algorithms: must be nonempty");
  for (std::size_t i = 0; i < spec.algorithms.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.algorithms.size(); ++j) {
      if (spec.algorithms[i] == spec.algorithms[j]) {
        throw SpecError("algorithms: duplicate entry");
      }
    }
  }
  if (spec.amop.threshold && (!(*spec.amop.threshold > 0.0) || !(*spec.amop.threshold < 1.0))) {
    throw SpecError("amop.threshold: must lie in (0, 1)");
  }
  if (spec.amop.halt_eps && !(*spec.amop.halt_eps > 0.0)) {
    throw SpecError("amop.halt_eps: must be positive");
  }
  if (spec.amop.cap_k && *spec.amop.cap_k == 0) {
    throw SpecError("amop.cap_k: must be positive");
  }
  if (spec.amop.beta_floor && (!(*spec.amop.beta_floor > 0.0) || !(*spec.amop.beta_floor < 1.0))) {
    throw SpecError("amop.beta_floor: must lie in (0, 1)");
  }
  if (spec.amop.beta_decay && (!(*spec.amop.beta_decay > 0.0) || !(*spec.amop.beta_decay < 1.0))) {
    throw SpecError("amop.beta_decay: must lie in (0, 1)");
  }
  if (spec.amop.max_iters && *spec.amop.max_iters == 0) {
    throw SpecError("amop.max_iters: must be positive");
  }
  if (spec.amop.lin_dep_tol && *spec.amop.lin_dep_tol < 0.0) {
    throw SpecError("amop.lin_dep_tol: must be nonnegative");
  }

  const bool is_stap = std::holds_alternative<sensing::SpatialTemporal>(spec.ensemble);
  switch (spec.kind) {
    case ExperimentKind::PminTable:
      if (spec.k_max == 0) throw SpecError("k_max: must be positive");
      if (spec.t_values.empty()) throw SpecError("t_values: must be nonempty");
      for (double t : spec.t_values) {
        if (!(t > 0.0) || !(t < 1.0)) throw SpecError("t_values: entries must lie in (0, 1)");
      }
      return;
    case ExperimentKind::DynamicRangeCurve:
      if (spec.s_max < 2) throw SpecError("s_max: must be at least 2");
      if (spec.noise_values.empty()) throw SpecError("noise_values: must be nonempty");
      for (double e : spec.noise_values) {
        if (!(e >= 0.0)) throw SpecError("noise_values: entries must be nonnegative");
      }
      return;
    case ExperimentKind::StapSupport: {
      if (!is_stap) {
        throw SpecError("ensemble: stap_support requires the spatial_temporal ensemble");
      }
      if (!spec.noiseless()) {
        throw SpecError("snr_db: stap_support runs noiseless");
      }
      const auto& st = std::get<sensing::SpatialTemporal>(spec.ensemble);
      const std::size_t rows = st.n_elements * st.n_pulses;
      const std::size_t cols = st.spatial_grid * st.doppler_grid;
      if (spec.n != cols) {
        throw SpecError("n: must equal spatial_grid * doppler_grid for stap_support");
      }
      if (spec.m_list.size() != 1 || spec.m_list[0] != rows) {
        throw SpecError("m: must equal [n_elements * n_pulses] for stap_support");
      }
      if (spec.sparsity.size() != 1) {
        throw SpecError("sparsity: stap_support sweeps a single sparsity");
      }
      break;
    }
    case ExperimentKind::RecoveryPercentage:
      if (is_stap) {
        throw SpecError("ensemble: spatial_temporal is only valid for stap_support");
      }
      if (!spec.noiseless()) {
        throw SpecError("snr_db: recovery_percentage runs noiseless");
      }
      break;
    case ExperimentKind::NoiseSweep:
      if (is_stap) {
        throw SpecError("ensemble: spatial_temporal is only valid for stap_support");
      }
      if (spec.sparsity.size() != 1) {
        throw SpecError("sparsity: noise_sweep sweeps a single sparsity");
      }
      break;
  }

  if (spec.sparsity.empty()) throw SpecError("sparsity: must be nonempty");
  if (spec.m_list.empty()) throw SpecError("m: must be nonempty");
  for (std::size_t s : spec.sparsity) {
    if (s == 0) throw SpecError("sparsity: entries must be positive");
    if (s > spec.n) throw SpecError("sparsity: entries must not exceed n");
  }
  if (!is_stap) {
    for (std::size_t m : spec.m_list) {
      if (m == 0) throw SpecError("m: entries must be positive");
      if (m > spec.n) throw SpecError("m: entries must not exceed n");
    }
  }
  for (Algo a : spec.algorithms) {
    if (a != Algo::Cosamp) continue;
    for (std::size_t s : spec.sparsity) {
      for (std::size_t m : spec.m_list) {
        if (3 * s > m) {
          throw SpecError("algorithms: CoSaMP requires 3*sparsity <= m");
        }
      }
    }
  }
}

inline ExperimentSpec parse_spec(const json& root) {
  if (!root.is_object()) throw SpecError("spec: expected a JSON object");
  detail::check_keys(root, "spec",
                     {"kind", "ensemble", "signal", "n", "sparsity", "m",
                      "snr_db", "trials", "seed", "algorithms", "amop",
                      "output", "trial_output", "k_max", "t_values", "s_max",
                      "noise_values"});
  if (!root.contains("kind")) throw SpecError("kind: missing");

  ExperimentSpec spec;
  spec.kind = detail::parse_kind(root.at("kind"));
  if (root.contains("ensemble")) spec.ensemble = detail::parse_ensemble(root.at("ensemble"));
  if (root.contains("signal")) spec.signal = detail::parse_signal(root.at("signal"));

  // STAP dimensions are determined by the dictionary; fill before validate.
  if (const auto* st = std::get_if<sensing::SpatialTemporal>(&spec.ensemble)) {
    if (!root.contains("n")) spec.n = st->spatial_grid * st->doppler_grid;
    if (!root.contains("m")) spec.m_list = {st->n_elements * st->n_pulses};
  }

  if (root.contains("n")) spec.n = detail::as_positive_size(root.at("n"), "n");
  if (root.contains("sparsity")) {
    const json& arr = root.at("sparsity");
    if (!arr.is_array() || arr.empty()) throw SpecError("sparsity: expected a nonempty array");
    spec.sparsity.clear();
    for (const json& v : arr) spec.sparsity.push_back(detail::as_positive_size(v, "sparsity"));
  }
  if (root.contains("m")) {
    const json& arr = root.at("m");
    if (!arr.is_array() || arr.empty()) throw SpecError("m: expected a nonempty array");
    spec.m_list.clear();
    for (const json& v : arr) spec.m_list.push_back(detail::as_positive_size(v, "m"));
  }
  if (root.contains("snr_db")) {
    const json& v = root.at("snr_db");
    if (v.is_string()) {
      if (v.get<std::string>() != "noiseless") {
        throw SpecError("snr_db: expected \"noiseless\" or an array of numbers");
      }
      spec.snr_db.clear();
    } else if (v.is_array()) {
      if (v.empty()) throw SpecError("snr_db: array must be nonempty");
      spec.snr_db.clear();
      for (const json& e : v) spec.snr_db.push_back(detail::as_finite_double(e, "snr_db"));
    } else {
      throw SpecError("snr_db: expected \"noiseless\" or an array of numbers");
    }
  }
  if (root.contains("trials")) spec.trials = detail::as_positive_size(root.at("trials"), "trials");
  if (root.contains("seed")) spec.base_seed = detail::as_seed(root.at("seed"), "seed");
  if (root.contains("algorithms")) {
    const json& arr = root.at("algorithms");
    if (!arr.is_array() || arr.empty()) throw SpecError("algorithms: expected a nonempty array");
    spec.algorithms.clear();
    for (const json& v : arr) spec.algorithms.push_back(detail::parse_algo(v));
  }
  if (root.contains("amop")) {
    const json& a = root.at("amop");
    if (!a.is_object()) throw SpecError("amop: expected an object");
    detail::check_keys(a, "amop",
                       {"threshold", "halt_eps", "cap_k", "beta_floor",
                        "beta_decay", "max_iters", "lin_dep_tol"});
    // "auto" marks a policy-resolved field; accepted so serialized specs
    // parse back unchanged.
    const auto is_auto = [](const json& v) {
      return v.is_string() && v.get<std::string>() == "auto";
    };
    if (a.contains("threshold")) spec.amop.threshold = detail::as_finite_double(a.at("threshold"), "amop.threshold");
    if (a.contains("halt_eps") && !is_auto(a.at("halt_eps"))) spec.amop.halt_eps = detail::as_finite_double(a.at("halt_eps"), "amop.halt_eps");
    if (a.contains("cap_k") && !is_auto(a.at("cap_k"))) spec.amop.cap_k = detail::as_positive_size(a.at("cap_k"), "amop.cap_k");
    if (a.contains("beta_floor")) spec.amop.beta_floor = detail::as_finite_double(a.at("beta_floor"), "amop.beta_floor");
    if (a.contains("beta_decay")) spec.amop.beta_decay = detail::as_finite_double(a.at("beta_decay"), "amop.beta_decay");
    if (a.contains("max_iters") && !is_auto(a.at("max_iters"))) spec.amop.max_iters = detail::as_positive_size(a.at("max_iters"), "amop.max_iters");
    if (a.contains("lin_dep_tol")) spec.amop.lin_dep_tol = detail::as_finite_double(a.at("lin_dep_tol"), "amop.lin_dep_tol");
  }
  if (root.contains("output")) {
    if (!root.at("output").is_string()) throw SpecError("output: expected a string");
    spec.output = root.at("output").get<std::string>();
  }
  if (root.contains("trial_output")) {
    const json& v = root.at("trial_output");
    if (v.is_null()) {
      spec.trial_output.reset();
    } else if (v.is_string()) {
      spec.trial_output = v.get<std::string>();
    } else {
      throw SpecError("trial_output: expected a string or null");
    }
  }
  if (root.contains("k_max")) spec.k_max = detail::as_positive_size(root.at("k_max"), "k_max");
  if (root.contains("t_values")) {
    const json& arr = root.at("t_values");
    if (!arr.is_array() || arr.empty()) throw SpecError("t_values: expected a nonempty array");
    spec.t_values.clear();
    for (const json& v : arr) spec.t_values.push_back(detail::as_finite_double(v, "t_values"));
  }
  if (root.contains("s_max")) spec.s_max = detail::as_positive_size(root.at("s_max"), "s_max");
  if (root.contains("noise_values")) {
    const json& arr = root.at("noise_values");
    if (!arr.is_array() || arr.empty()) throw SpecError("noise_values: expected a nonempty array");
    spec.noise_values.clear();
    for (const json& v : arr) spec.noise_values.push_back(detail::as_finite_double(v, "noise_values"));
  }

  validate_spec(spec);
  return spec;
}

inline ExperimentSpec parse_spec_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("spec: invalid JSON: ") + e.what());
  }
  return parse_spec(root);
}

// Complete spec with every default materialized; embedded in CSV headers.
inline json serialize_spec(const ExperimentSpec& spec) {
  json j;
  j["kind"] = kind_name(spec.kind);

  json ens;
  if (std::holds_alternative<sensing::Gaussian>(spec.ensemble)) {
    ens["type"] = "gaussian";
  } else if (std::holds_alternative<sensing::Bernoulli>(spec.ensemble)) {
    ens["type"] = "bernoulli";
  } else if (std::holds_alternative<sensing::Fourier>(spec.ensemble)) {
    ens["type"] = "fourier";
  } else {
    const auto& st = std::get<sensing::SpatialTemporal>(spec.ensemble);
    ens["type"] = "spatial_temporal";
    ens["n_elements"] = st.n_elements;
    ens["n_pulses"] = st.n_pulses;
    ens["spatial_grid"] = st.spatial_grid;
    ens["doppler_grid"] = st.doppler_grid;
  }
  j["ensemble"] = ens;

  json sig;
  if (std::holds_alternative<signals::Flat>(spec.signal)) {
    sig["model"] = "flat";
  } else if (const auto* e = std::get_if<signals::Exponential>(&spec.signal)) {
    sig["model"] = "exponential";
    sig["alpha"] = e->alpha;
  } else if (const auto* p = std::get_if<signals::Polynomial>(&spec.signal)) {
    sig["model"] = "polynomial";
    sig["p"] = p->p;
  } else {
    const auto& pw = std::get<signals::PiecewiseFlat>(spec.signal);
    sig["model"] = "piecewise_flat";
    if (pw.n_pieces == 0) {
      sig["n_pieces"] = "auto";
    } else {
      sig["n_pieces"] = pw.n_pieces;
    }
    sig["level_range"] = {pw.level_lo, pw.level_hi};
  }
  j["signal"] = sig;

  j["n"] = spec.n;
  j["sparsity"] = spec.sparsity;
  j["m"] = spec.m_list;
  if (spec.noiseless()) {
    j["snr_db"] = "noiseless";
  } else {
    j["snr_db"] = spec.snr_db;
  }
  j["trials"] = spec.trials;
  j["seed"] = spec.base_seed;
  json algos = json::array();
  for (Algo a : spec.algorithms) algos.push_back(algo_name(a));
  j["algorithms"] = algos;

  json amop;
  amop["threshold"] = spec.amop.threshold ? json(*spec.amop.threshold) : json(0.3);
  amop["halt_eps"] = spec.amop.halt_eps ? json(*spec.amop.halt_eps) : json("auto");
  amop["cap_k"] = spec.amop.cap_k ? json(*spec.amop.cap_k) : json("auto");
  amop["beta_floor"] = spec.amop.beta_floor ? json(*spec.amop.beta_floor) : json(0.1);
  amop["beta_decay"] = spec.amop.beta_decay ? json(*spec.amop.beta_decay) : json(0.9);
  amop["max_iters"] = spec.amop.max_iters ? json(*spec.amop.max_iters) : json("auto");
  amop["lin_dep_tol"] = spec.amop.lin_dep_tol ? json(*spec.amop.lin_dep_tol) : json(1e-10);
  j["amop"] = amop;

  j["output"] = spec.output;
  j["trial_output"] = spec.trial_output ? json(*spec.trial_output) : json(nullptr);
  j["k_max"] = spec.k_max;
  j["t_values"] = spec.t_values;
  j["s_max"] = spec.s_max;
  j["noise_values"] = spec.noise_values;
  return j;
}

// ---------------------------------------------------------------------------
// Seed derivation and per-point configuration
// ---------------------------------------------------------------------------

// Stable per-trial seed: order-sensitive hash chain over the sweep point.
inline std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::size_t n,
                                       std::size_t m, std::size_t s,
                                       double snr, std::size_t trial,
                                       Algo algo) {
  std::uint64_t h = rng::splitmix64(base_seed);
  h = rng::chain(h, static_cast<std::uint64_t>(n));
  h = rng::chain(h, static_cast<std::uint64_t>(m));
  h = rng::chain(h, static_cast<std::uint64_t>(s));
  h = rng::chain(h, std::bit_cast<std::uint64_t>(snr));
  h = rng::chain(h, static_cast<std::uint64_t>(trial));
  h = rng::chain(h, static_cast<std::uint64_t>(algo));
  return h;
}

// Benchmark policy for the adaptive config at a sweep point.
inline recovery::AmopConfig resolve_amop_config(const ExperimentSpec& spec,
                                                std::size_t m, double snr) {
  recovery::AmopConfig cfg;
  cfg.threshold = spec.amop.threshold.value_or(0.3);
  cfg.halt_eps = spec.amop.halt_eps
                     ? *spec.amop.halt_eps
                     : (std::isinf(snr) ? 1e-6 : std::pow(10.0, -snr / 20.0));
  cfg.cap = spec.amop.cap_k.value_or(std::max<std::size_t>(2, m / 10));
  cfg.beta_floor = spec.amop.beta_floor.value_or(0.1);
  cfg.beta_decay = spec.amop.beta_decay.value_or(0.9);
  cfg.max_iters = spec.amop.max_iters.value_or(m);
  cfg.lin_dep_tol = spec.amop.lin_dep_tol.value_or(1e-10);
  return cfg;
}

// ---------------------------------------------------------------------------
// Trial execution
// ---------------------------------------------------------------------------

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Algo algo = Algo::Amop;
  std::size_t s = 0;
  std::size_t m = 0;
  double snr = kNoiselessSnr;
  bool success = false;
  double rel_error = 0.0;
  std::size_t iterations = 0;
  recovery::HaltReason halt = recovery::HaltReason::Converged;
  double wall_ms = 0.0;
  std::array<std::size_t, 3> hits{};          // stap_support only
  std::array<std::size_t, 3> false_alarms{};  // stap_support only
};

// One trial's fully materialized inputs; what the runner recovers from.
template <linalg::Scalar T>
struct TrialInstance {
  linalg::DenseMatrix<T> matrix;  // empty when a fixed dictionary is used
  signals::SparseSignal<T> signal;
  linalg::DenseVector<T> measurement;
  recovery::AmopConfig config;
  std::uint64_t seed = 0;
};

namespace detail {

template <linalg::Scalar T>
linalg::DenseMatrix<T> make_matrix(const sensing::MeasurementEnsemble& ens,
                                   std::size_t m, std::size_t n,
                                   std::uint64_t seed);

template <>
inline linalg::DenseMatrix<double> make_matrix<double>(
    const sensing::MeasurementEnsemble& ens, std::size_t m, std::size_t n,
    std::uint64_t seed) {
  if (std::holds_alternative<sensing::Gaussian>(ens)) {
    return sensing::gen_gaussian(m, n, seed);
  }
  return sensing::gen_bernoulli(m, n, seed);
}

template <>
inline linalg::DenseMatrix<std::complex<double>>
make_matrix<std::complex<double>>(const sensing::MeasurementEnsemble& ens,
                                  std::size_t m, std::size_t n,
                                  std::uint64_t seed) {
  if (std::holds_alternative<sensing::Fourier>(ens)) {
    return sensing::gen_fourier(m, n, seed);
  }
  return sensing::gen_stap(std::get<sensing::SpatialTemporal>(ens));
}

}  // namespace detail

// Rebuilds the exact inputs of one benchmark trial from the seed chain.
// When a fixed dictionary is supplied (spatial-temporal ensembles), the
// returned matrix member stays empty and the dictionary is the matrix.
template <linalg::Scalar T>
TrialInstance<T> build_trial_instance(const ExperimentSpec& spec,
                                      const linalg::DenseMatrix<T>* fixed_dictionary,
                                      std::size_t m, std::size_t s, double snr,
                                      std::size_t trial, Algo algo) {
  TrialInstance<T> inst;
  inst.seed = derive_trial_seed(spec.base_seed, spec.n, m, s, snr, trial, algo);
  const std::uint64_t seed_matrix = rng::chain(inst.seed, 1);
  const std::uint64_t seed_signal = rng::chain(inst.seed, 2);
  const std::uint64_t seed_noise = rng::chain(inst.seed, 3);

  const linalg::DenseMatrix<T>* A = fixed_dictionary;
  if (!A) {
    inst.matrix = detail::make_matrix<T>(spec.ensemble, m, spec.n, seed_matrix);
    A = &inst.matrix;
  }
  inst.signal = signals::gen_sparse_signal<T>(spec.n, s, spec.signal, seed_signal);
  inst.measurement = signals::measure(*A, inst.signal);
  if (!std::isinf(snr)) {
    inst.measurement = signals::add_noise(inst.measurement, snr, seed_noise);
  }
  inst.config = resolve_amop_config(spec, m, snr);
  return inst;
}

namespace detail {

template <linalg::Scalar T>
TrialRecord run_trial(const ExperimentSpec& spec,
                      const linalg::DenseMatrix<T>* fixed_dictionary,
                      std::size_t m, std::size_t s, double snr,
                      std::size_t trial, Algo algo) {
  const TrialInstance<T> inst =
      build_trial_instance<T>(spec, fixed_dictionary, m, s, snr, trial, algo);
  const linalg::DenseMatrix<T>* A =
      fixed_dictionary ? fixed_dictionary : &inst.matrix;
  const signals::SparseSignal<T>& x = inst.signal;
  const linalg::DenseVector<T>& y = inst.measurement;
  const recovery::AmopConfig& cfg = inst.config;

  TrialRecord rec;
  rec.trial = trial;
  rec.algo = algo;
  rec.s = s;
  rec.m = m;
  rec.snr = snr;
  rec.seed = inst.seed;

  const auto t0 = std::chrono::steady_clock::now();
  recovery::RecoveryResult<T> result;
  switch (algo) {
    case Algo::Amop:
      result = recovery::amop(*A, y, cfg);
      break;
    case Algo::Omp:
      result = recovery::omp(*A, y, cfg.halt_eps, cfg.max_iters, cfg.lin_dep_tol);
      break;
    case Algo::Cosamp:
      result = recovery::cosamp(*A, y, s, cfg.halt_eps, cfg.max_iters);
      break;
  }
  const auto t1 = std::chrono::steady_clock::now();
  rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  rec.iterations = result.iterations;
  rec.halt = result.halt_reason;
  rec.rel_error = result.estimate.support.empty()
                      ? 1.0
                      : metrics::relative_error(x, result.estimate);
  rec.success = metrics::exact_recovery(x, result.estimate, kSuccessTol);

  if (spec.kind == ExperimentKind::StapSupport) {
    const auto& st = std::get<sensing::SpatialTemporal>(spec.ensemble);
    const metrics::GridShape grid{st.spatial_grid, st.doppler_grid};
    // Estimated support ranked: the |s| strongest estimated cells, so every
    // algorithm is scored on the same number of detections.
    std::vector<std::size_t> order(result.estimate.support.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ma = linalg::abs_of(result.estimate.values[a]);
      const double mb = linalg::abs_of(result.estimate.values[b]);
      if (ma != mb) return ma > mb;
      return result.estimate.support[a] < result.estimate.support[b];
    });
    order.resize(std::min(order.size(), s));
    std::vector<std::size_t> est;
    est.reserve(order.size());
    for (std::size_t i : order) est.push_back(result.estimate.support[i]);
    std::sort(est.begin(), est.end());

    for (std::size_t tol = 0; tol < 3; ++tol) {
      const metrics::SupportMetrics sm = metrics::support_metrics(
          std::span<const std::size_t>(x.support.data(), x.support.size()),
          std::span<const std::size_t>(est.data(), est.size()), grid, tol);
      rec.hits[tol] = sm.hits;
      rec.false_alarms[tol] = sm.false_alarms;
    }
  }
  return rec;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Aggregation and CSV rendering
// ---------------------------------------------------------------------------

struct RecoveryPercentageRow {
  std::string ensemble, signal_model;
  std::size_t n, s, m;
  Algo algo;
  std::size_t trials, successes;
  double percentage;
};

struct NoiseSweepRow {
  double snr_db;
  std::size_t m;
  Algo algo;
  std::size_t trials;
  double median_rel_error, mean_rel_error, q10, q90;
};

struct StapRow {
  std::size_t tolerance;
  Algo algo;
  double mean_hits, mean_false_alarms;
};

struct PminRow {
  std::size_t k;
  double t, p_min, romp_bound;
};

struct DrangeRow {
  std::size_t s;
  double noise_bound, min_element_norm;
};

struct ExperimentOutput {
  std::string aggregate_csv;
  std::optional<std::string> trial_csv;
  std::vector<RecoveryPercentageRow> recovery_rows;
  std::vector<NoiseSweepRow> noise_rows;
  std::vector<StapRow> stap_rows;
  std::vector<PminRow> pmin_rows;
  std::vector<DrangeRow> drange_rows;
  std::vector<TrialRecord> trial_records;
};

namespace detail {

inline std::string fmt_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Linear-interpolation quantile on ascending values.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty set");
  if (sorted.size() == 1) return sorted[0];
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline std::string csv_header(const ExperimentSpec& spec) {
  std::string out;
  out += "# pursuit v";
  out += kVersion;
  out += "\n# kind: ";
  out += kind_name(spec.kind);
  out += "\n# seed: ";
  out += std::to_string(spec.base_seed);
  out += "\n# spec: ";
  out += serialize_spec(spec).dump();
  out += "\n";
  return out;
}

}  // namespace detail

inline ExperimentOutput run_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  ExperimentOutput out;
  std::string& csv = out.aggregate_csv;
  csv = detail::csv_header(spec);

  if (spec.kind == ExperimentKind::PminTable) {
    csv += "K,T,p_min,romp_bound\n";
    for (std::size_t k = 1; k <= spec.k_max; ++k) {
      for (double t : spec.t_values) {
        PminRow row{k, t, metrics::p_min(k, t), 0.5};
        out.pmin_rows.push_back(row);
        csv += std::to_string(k) + "," + detail::fmt_g9(t) + "," +
               detail::fmt_g9(row.p_min) + "," + detail::fmt_g9(row.romp_bound) + "\n";
      }
    }
    return out;
  }

  if (spec.kind == ExperimentKind::DynamicRangeCurve) {
    csv += "s,noise_bound,min_element_norm\n";
    for (std::size_t s = 2; s <= spec.s_max; ++s) {
      for (double e : spec.noise_values) {
        DrangeRow row{s, e, metrics::dynamic_range_curve(s, e)};
        out.drange_rows.push_back(row);
        csv += std::to_string(s) + "," + detail::fmt_g9(e) + "," +
               detail::fmt_g9(row.min_element_norm) + "\n";
      }
    }
    return out;
  }

  // Trial-based kinds.  The STAP dictionary is deterministic and large, so
  // it is built once and shared across trials.
  const bool is_stap = spec.kind == ExperimentKind::StapSupport;
  linalg::DenseMatrix<std::complex<double>> stap_dict;
  if (is_stap) {
    stap_dict = sensing::gen_stap(std::get<sensing::SpatialTemporal>(spec.ensemble));
  }
  const bool complex_field =
      is_stap || std::holds_alternative<sensing::Fourier>(spec.ensemble);

  const std::vector<double> snrs =
      spec.noiseless() ? std::vector<double>{kNoiselessSnr} : spec.snr_db;

  for (std::size_t s : spec.sparsity) {
    for (std::size_t m : spec.m_list) {
      for (double snr : snrs) {
        for (Algo algo : spec.algorithms) {
          for (std::size_t trial = 0; trial < spec.trials; ++trial) {
            TrialRecord rec;
            if (complex_field) {
              rec = detail::run_trial<std::complex<double>>(
                  spec, is_stap ? &stap_dict : nullptr, m, s, snr, trial, algo);
            } else {
              rec = detail::run_trial<double>(spec, nullptr, m, s, snr, trial,
                                              algo);
            }
            out.trial_records.push_back(rec);
          }
        }
      }
    }
  }

  const auto records_for = [&](std::size_t s, std::size_t m, double snr,
                               Algo algo) {
    std::vector<const TrialRecord*> recs;
    for (const TrialRecord& r : out.trial_records) {
      if (r.s == s && r.m == m && r.algo == algo &&
          (std::isinf(snr) ? std::isinf(r.snr) : r.snr == snr)) {
        recs.push_back(&r);
      }
    }
    return recs;
  };

  if (spec.kind == ExperimentKind::RecoveryPercentage) {
    const std::string ens = serialize_spec(spec)["ensemble"]["type"].get<std::string>();
    const std::string sig = serialize_spec(spec)["signal"]["model"].get<std::string>();
    csv += "ensemble,signal_model,N,S,m,algorithm,trials,successes,percentage\n";
    for (std::size_t s : spec.sparsity) {
      for (std::size_t m : spec.m_list) {
        for (Algo algo : spec.algorithms) {
          std::size_t successes = 0;
          for (const TrialRecord* r : records_for(s, m, kNoiselessSnr, algo)) {
            if (r->success) ++successes;
          }
          RecoveryPercentageRow row{ens,
                                    sig,
                                    spec.n,
                                    s,
                                    m,
                                    algo,
                                    spec.trials,
                                    successes,
                                    100.0 * static_cast<double>(successes) /
                                        static_cast<double>(spec.trials)};
          out.recovery_rows.push_back(row);
          csv += ens + "," + sig + "," + std::to_string(spec.n) + "," +
                 std::to_string(s) + "," + std::to_string(m) + "," +
                 algo_name(algo) + "," + std::to_string(spec.trials) + "," +
                 std::to_string(successes) + "," +
                 detail::fmt_g9(row.percentage) + "\n";
        }
      }
    }
  } else if (spec.kind == ExperimentKind::NoiseSweep) {
    csv += "snr_db,m,algorithm,trials,median_rel_error,mean_rel_error,q10,q90\n";
    const std::size_t s = spec.sparsity[0];
    for (std::size_t m : spec.m_list) {
      for (double snr : snrs) {
        for (Algo algo : spec.algorithms) {
          std::vector<double> errs;
          for (const TrialRecord* r : records_for(s, m, snr, algo)) {
            errs.push_back(r->rel_error);
          }
          double mean = 0.0;
          for (double e : errs) mean += e;
          mean /= static_cast<double>(errs.size());
          std::vector<double> sorted = errs;
          std::sort(sorted.begin(), sorted.end());
          NoiseSweepRow row{snr,
                            m,
                            algo,
                            spec.trials,
                            detail::quantile_sorted(sorted, 0.5),
                            mean,
                            detail::quantile_sorted(sorted, 0.1),
                            detail::quantile_sorted(sorted, 0.9)};
          out.noise_rows.push_back(row);
          csv += detail::fmt_g9(snr) + "," + std::to_string(m) + "," +
                 algo_name(algo) + "," + std::to_string(spec.trials) + "," +
                 detail::fmt_g9(row.median_rel_error) + "," +
                 detail::fmt_g9(row.mean_rel_error) + "," +
                 detail::fmt_g9(row.q10) + "," + detail::fmt_g9(row.q90) + "\n";
        }
      }
    }
  } else {  // StapSupport
    csv += "tolerance,algorithm,mean_hits,mean_false_alarms\n";
    const std::size_t s = spec.sparsity[0];
    const std::size_t m = spec.m_list[0];
    for (std::size_t tol = 0; tol < 3; ++tol) {
      for (Algo algo : spec.algorithms) {
        double hits = 0.0, fas = 0.0;
        std::size_t count = 0;
        for (const TrialRecord* r : records_for(s, m, kNoiselessSnr, algo)) {
          hits += static_cast<double>(r->hits[tol]);
          fas += static_cast<double>(r->false_alarms[tol]);
          ++count;
        }
        StapRow row{tol, algo, hits / static_cast<double>(count),
                    fas / static_cast<double>(count)};
        out.stap_rows.push_back(row);
        csv += std::to_string(tol) + "," + algo_name(algo) + "," +
               detail::fmt_g9(row.mean_hits) + "," +
               detail::fmt_g9(row.mean_false_alarms) + "\n";
      }
    }
  }

  // Optional per-trial table (the only place wall-clock time appears).
  if (spec.trial_output) {
    std::string t = detail::csv_header(spec);
    if (spec.kind == ExperimentKind::StapSupport) {
      t += "trial,seed,algorithm,S,rel_error,iterations,halt_reason,"
           "hits_tol0,false_alarms_tol0,hits_tol1,false_alarms_tol1,"
           "hits_tol2,false_alarms_tol2,wall_ms\n";
    } else if (spec.kind == ExperimentKind::NoiseSweep) {
      t += "trial,seed,algorithm,S,m,snr_db,rel_error,iterations,halt_reason,"
           "wall_ms\n";
    } else {
      t += "trial,seed,algorithm,S,m,success,rel_error,iterations,halt_reason,"
           "wall_ms\n";
    }
    for (const TrialRecord& r : out.trial_records) {
      t += std::to_string(r.trial) + "," + std::to_string(r.seed) + "," +
           algo_name(r.algo) + "," + std::to_string(r.s);
      if (spec.kind == ExperimentKind::StapSupport) {
        t += "," + detail::fmt_g9(r.rel_error) + "," +
             std::to_string(r.iterations) + "," +
             recovery::halt_reason_name(r.halt);
        for (std::size_t tol = 0; tol < 3; ++tol) {
          t += "," + std::to_string(r.hits[tol]) + "," +
               std::to_string(r.false_alarms[tol]);
        }
      } else if (spec.kind == ExperimentKind::NoiseSweep) {
        t += "," + std::to_string(r.m) + "," + detail::fmt_g9(r.snr) + "," +
             detail::fmt_g9(r.rel_error) + "," + std::to_string(r.iterations) +
             "," + recovery::halt_reason_name(r.halt);
      } else {
        t += "," + std::to_string(r.m) + "," + (r.success ? "1" : "0") + "," +
             detail::fmt_g9(r.rel_error) + "," + std::to_string(r.iterations) +
             "," + recovery::halt_reason_name(r.halt);
      }
      t += "," + detail::fmt_g9(r.wall_ms) + "\n";
    }
    out.trial_csv = t;
  }

  return out;
}

}  // namespace pursuit::bench
