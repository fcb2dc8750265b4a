// Copyright 2026 The riccati Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "riccati/bounds.hpp"
#include "riccati/errors.hpp"
#include "riccati/floquet.hpp"
#include "riccati/gramian.hpp"
#include "riccati/model.hpp"
#include "riccati/oracle.hpp"
#include "riccati/quadrature.hpp"
#include "riccati/random_models.hpp"
#include "riccati/special_case.hpp"
#include "riccati/spectral.hpp"
#include "riccati/steady_state.hpp"

namespace {

// Insertion-ordered JSON keeps reports readable; fingerprints use the
// sorted-key variant below for canonicalization.
using json = nlohmann::ordered_json;
using riccati::IntegratorConfig;
using riccati::InvalidInputError;
using riccati::LoadedModel;
using riccati::Matrix;
using riccati::ModelTriple;
using riccati::MissingInitialConditionError;
using riccati::NumericalError;
using riccati::SteadyState;
using riccati::Tolerances;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitSuiteFailure = 4;
constexpr std::uint64_t kDefaultSeed = 42;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

// FNV-1a 64-bit over the canonical (sorted-key, compact) serialization of
// the model; stable across runs and platforms for identical inputs.
std::string fingerprint(const LoadedModel& loaded) {
  nlohmann::json canonical;
  canonical["dim"] = loaded.model.dim;
  canonical["A"] = matrix_json(loaded.model.A);
  canonical["R"] = matrix_json(loaded.model.R);
  canonical["S"] = matrix_json(loaded.model.S);
  if (loaded.Q.has_value()) canonical["Q"] = matrix_json(*loaded.Q);
  const std::string text = canonical.dump();

  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  auto parse_number = [&text](const std::string& token) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size() || !std::isfinite(v)) {
        throw std::invalid_argument(token);
      }
      return v;
    } catch (const std::exception&) {
      throw InvalidInputError("cannot parse grid value '" + token + "' in '" +
                              text + "'");
    }
  };

  if (text.find(':') != std::string::npos) {
    // start:step:end, inclusive of the endpoint up to round-off.
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) {
      throw InvalidInputError("grid range must be start:step:end, got '" +
                              text + "'");
    }
    const double start = parse_number(parts[0]);
    const double step = parse_number(parts[1]);
    const double end = parse_number(parts[2]);
    if (step <= 0.0 || end < start) {
      throw InvalidInputError(
          "grid range needs step > 0 and end >= start, got '" + text + "'");
    }
    const auto count =
        static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) grid.push_back(start + k * step);
  } else {
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) grid.push_back(parse_number(token));
  }
  if (grid.empty()) {
    throw InvalidInputError("grid '" + text + "' is empty");
  }
  return grid;
}

Matrix parse_matrix_node(const nlohmann::json& node, int dim,
                         const std::string& what) {
  if (!node.is_array() || static_cast<int>(node.size()) != dim) {
    throw InvalidInputError(what + ": expected " + std::to_string(dim) +
                            " rows");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& row = node.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw InvalidInputError(what + ": row " + std::to_string(i) +
                              " does not have " + std::to_string(dim) +
                              " entries");
    }
    for (int j = 0; j < dim; ++j) {
      if (!row.at(j).is_number()) {
        throw InvalidInputError(what + ": non-numeric entry at (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                ")");
      }
      m(i, j) = row.at(j).get<double>();
    }
  }
  return m;
}

// A standalone matrix file: either a bare array of rows or {"Q": rows}.
Matrix load_matrix_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInputError("cannot open matrix file: " + path);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInputError("matrix file " + path + ": " + e.what());
  }
  if (doc.is_object()) {
    if (!doc.contains("Q")) {
      throw InvalidInputError("matrix file " + path +
                              ": object form must contain field Q");
    }
    doc = doc["Q"];
  }
  return parse_matrix_node(doc, dim, path);
}

struct CommonOptions {
  std::string out_path;
  bool pretty = false;
  Tolerances tol;
  IntegratorConfig integrator;
};

void attach_common(CLI::App& app, CommonOptions& opt) {
  app.add_option("--out", opt.out_path, "Write the JSON report to this path");
  app.add_flag("--pretty", opt.pretty, "Indent the JSON report");
  app.add_option("--care-tol", opt.tol.care_tol,
                 "Relative residual tolerance for the algebraic solve");
  app.add_option("--lyap-tol", opt.tol.lyap_tol,
                 "Relative residual tolerance for the Lyapunov solve");
  app.add_option("--sym-tol", opt.tol.sym_tol, "Symmetry check tolerance");
  app.add_option("--psd-tol", opt.tol.psd_tol,
                 "Definiteness clamp tolerance");
  app.add_option("--mono-tol", opt.tol.mono_tol,
                 "Loewner monotonicity slack");
  app.add_option("--check-tol", opt.tol.check_tol,
                 "Relative slack applied to envelope checks");
  app.add_option("--rel-tol", opt.integrator.rel_tol,
                 "Integrator relative tolerance");
  app.add_option("--abs-tol", opt.integrator.abs_tol,
                 "Integrator absolute tolerance");
}

void emit_report(const json& report, const CommonOptions& opt) {
  const std::string text = opt.pretty ? report.dump(2) : report.dump();
  if (opt.out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(opt.out_path);
    if (!out) {
      throw InvalidInputError("cannot open output file: " + opt.out_path);
    }
    out << text << "\n";
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& explicit_seed) {
  if (explicit_seed.has_value()) return *explicit_seed;
  if (const char* env = std::getenv("RICCATI_SEED")) {
    try {
      std::size_t used = 0;
      const std::string text(env);
      const std::uint64_t seed = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return seed;
    } catch (const std::exception&) {
      throw InvalidInputError(
          "RICCATI_SEED must be a non-negative integer, got '" +
          std::string(env) + "'");
    }
  }
  return kDefaultSeed;
}

LoadedModel load_and_validate(const std::string& path, const Tolerances& tol) {
  const LoadedModel loaded = riccati::load_model_file(path);
  const riccati::ValidationReport report =
      riccati::validate(loaded.model, tol);
  if (!report.pass) {
    std::ostringstream msg;
    msg << "model validation failed:";
    for (const auto& entry : report.entries) {
      if (!entry.pass) {
        msg << " " << entry.name << " (witness=" << entry.witness << ")";
      }
    }
    throw InvalidInputError(msg.str());
  }
  return loaded;
}

Matrix require_q(const LoadedModel& loaded, const Tolerances& tol,
                 const char* command) {
  if (!loaded.Q.has_value()) {
    throw MissingInitialConditionError(
        std::string(command) +
        ": model file carries no initial condition Q");
  }
  riccati::check_initial_condition(loaded.model, *loaded.Q, tol);
  return *loaded.Q;
}

json timing_json(double load_ms, double compute_ms, double total_ms) {
  json t;
  t["load"] = load_ms;
  t["compute"] = compute_ms;
  t["total"] = total_ms;
  return t;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int run_solve(const std::string& model_path, const CommonOptions& opt) {
  const auto start = Clock::now();
  const LoadedModel loaded = load_and_validate(model_path, opt.tol);
  const double load_ms = ms_since(start);

  const auto compute_start = Clock::now();
  const SteadyState ss = riccati::steady_state(loaded.model, opt.tol);
  const double compute_ms = ms_since(compute_start);

  json report;
  report["command"] = "solve";
  report["model"] = {{"path", model_path},
                     {"fingerprint", fingerprint(loaded)},
                     {"dim", loaded.model.dim}};
  json outputs;
  outputs["P_inf"] = matrix_json(ss.P_inf);
  outputs["P_inf_minus"] = matrix_json(ss.P_inf_minus);
  outputs["B"] = matrix_json(ss.B);
  outputs["S_inf"] = matrix_json(ss.S_inf);
  outputs["care_residual"] = ss.care_residual;
  outputs["care_residual_minus"] = ss.care_residual_minus;
  outputs["lyap_residual"] = ss.lyap_residual;
  outputs["cond_S_inf"] = ss.cond_S_inf;
  outputs["cond_warning"] = ss.cond_warning;
  outputs["spectral_abscissa_B"] = riccati::spectral_abscissa(ss.B);
  report["outputs"] = std::move(outputs);
  report["checks"] = {{"pass", 3}, {"fail", 0}};  // the three residual gates
  report["timings_ms"] =
      timing_json(load_ms, compute_ms, ms_since(start));
  emit_report(report, opt);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// flow
// ---------------------------------------------------------------------------

json trajectory_json(const riccati::Trajectory& traj) {
  json out;
  out["method"] = traj.method;
  out["times"] = traj.times;
  json values = json::array();
  for (const Matrix& v : traj.values) values.push_back(matrix_json(v));
  out["values"] = std::move(values);
  if (traj.method == "oracle") out["error_estimate"] = traj.error_estimate;
  return out;
}

int run_flow(const std::string& model_path, const std::string& grid_text,
             const std::string& method, const CommonOptions& opt) {
  const auto start = Clock::now();
  const LoadedModel loaded = load_and_validate(model_path, opt.tol);
  const Matrix q = require_q(loaded, opt.tol, "flow");
  const std::vector<double> grid = parse_grid(grid_text);
  const double load_ms = ms_since(start);

  const auto compute_start = Clock::now();
  json outputs;
  std::optional<riccati::Trajectory> closed;
  std::optional<riccati::Trajectory> oracle;
  if (method == "closed" || method == "both") {
    const SteadyState ss = riccati::steady_state(loaded.model, opt.tol);
    closed = riccati::flow_curve(ss, q, grid, opt.tol);
    outputs["closed"] = trajectory_json(*closed);
  }
  if (method == "oracle" || method == "both") {
    oracle = riccati::integrate_riccati(loaded.model, q, grid, opt.integrator);
    outputs["oracle"] = trajectory_json(*oracle);
  }
  if (method == "both") {
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::max(
          worst, riccati::spectral_norm(closed->values[i] - oracle->values[i]) /
                     (1.0 + riccati::spectral_norm(oracle->values[i])));
    }
    outputs["max_discrepancy"] = worst;
  }
  const double compute_ms = ms_since(compute_start);

  json report;
  report["command"] = "flow";
  report["model"] = {{"path", model_path},
                     {"fingerprint", fingerprint(loaded)},
                     {"dim", loaded.model.dim}};
  report["outputs"] = std::move(outputs);
  report["checks"] = {{"pass", 0}, {"fail", 0}};
  report["timings_ms"] = timing_json(load_ms, compute_ms, ms_since(start));
  emit_report(report, opt);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// semigroup
// ---------------------------------------------------------------------------

int run_semigroup(const std::string& model_path, double s, double t,
                  const CommonOptions& opt) {
  const auto start = Clock::now();
  const LoadedModel loaded = load_and_validate(model_path, opt.tol);
  const Matrix q = require_q(loaded, opt.tol, "semigroup");
  if (!(std::isfinite(s) && std::isfinite(t)) || s < 0.0 || t < s) {
    throw InvalidInputError("semigroup: need 0 <= s <= t");
  }
  const double load_ms = ms_since(start);

  const auto compute_start = Clock::now();
  const SteadyState ss = riccati::steady_state(loaded.model, opt.tol);
  const Matrix phi_s = riccati::flow(ss, q, s, opt.tol);
  const riccati::FloquetFactor factor =
      riccati::c_matrix(ss, phi_s, t - s, opt.tol);
  const double compute_ms = ms_since(compute_start);

  json report;
  report["command"] = "semigroup";
  report["model"] = {{"path", model_path},
                     {"fingerprint", fingerprint(loaded)},
                     {"dim", loaded.model.dim}};
  json outputs;
  outputs["s"] = s;
  outputs["t"] = t;
  outputs["E"] = matrix_json(factor.E);
  outputs["norm_E"] = riccati::spectral_norm(factor.E);
  outputs["phi_s"] = matrix_json(phi_s);
  outputs["factors"] = {{"tau", t - s},
                        {"exp_tauB", matrix_json(factor.exp_tB)},
                        {"C", matrix_json(factor.C)},
                        {"C_inv", matrix_json(factor.C_inv)},
                        {"cond_C", factor.cond_C}};
  report["outputs"] = std::move(outputs);
  report["checks"] = {{"pass", 0}, {"fail", 0}};
  report["timings_ms"] = timing_json(load_ms, compute_ms, ms_since(start));
  emit_report(report, opt);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

int run_bounds(const std::string& model_path, const std::string& grid_text,
               double delta, const std::string& q2_path,
               const CommonOptions& opt) {
  const auto start = Clock::now();
  const LoadedModel loaded = load_and_validate(model_path, opt.tol);
  const Matrix q = require_q(loaded, opt.tol, "bounds");
  std::optional<Matrix> q2;
  if (!q2_path.empty()) {
    q2 = load_matrix_file(q2_path, loaded.model.dim);
    riccati::check_initial_condition(loaded.model, *q2, opt.tol);
  }
  const std::vector<double> grid = parse_grid(grid_text);
  const double load_ms = ms_since(start);

  const auto compute_start = Clock::now();
  const SteadyState ss = riccati::steady_state(loaded.model, opt.tol);
  const riccati::BoundsReport bounds =
      riccati::verify_envelopes(ss, q, q2, grid, delta, opt.tol);
  const double compute_ms = ms_since(compute_start);

  int pass = 0;
  int fail = 0;
  for (const auto& check : bounds.envelope_checks) {
    (check.pass ? pass : fail) += 1;
  }

  json report;
  report["command"] = "bounds";
  report["model"] = {{"path", model_path},
                     {"fingerprint", fingerprint(loaded)},
                     {"dim", loaded.model.dim}};
  report["outputs"] = json::parse(riccati::to_json(bounds));
  report["checks"] = {{"pass", pass}, {"fail", fail}};
  report["timings_ms"] = timing_json(load_ms, compute_ms, ms_since(start));
  emit_report(report, opt);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct SuiteCheck {
  std::string name;
  double observed = 0;
  double bound = 0;
  bool pass = false;
};

void add_check(std::vector<SuiteCheck>& checks, const std::string& name,
               double observed, double bound) {
  checks.push_back({name, observed, bound, observed <= bound});
}

// The full invariant suite for one validated model: residual gates, the
// factorization-vs-integration comparison, evolution-family laws, the
// implicit integral representation, envelope bounds, and Gramian
// monotonicity/limit.
std::vector<SuiteCheck> run_suite(const ModelTriple& model, const Matrix& q1,
                                  const Matrix& q2, const CommonOptions& opt) {
  std::vector<SuiteCheck> checks;
  const SteadyState ss = riccati::steady_state(model, opt.tol);

  const double r_norm = riccati::spectral_norm(model.R);
  const double s_norm = riccati::spectral_norm(model.S);
  add_check(checks, "care_residual", ss.care_residual,
            opt.tol.care_tol * r_norm);
  add_check(checks, "care_residual_minus", ss.care_residual_minus,
            opt.tol.care_tol * r_norm);
  add_check(checks, "lyap_residual", ss.lyap_residual,
            opt.tol.lyap_tol * s_norm);

  // Factorization vs direct integration.
  {
    const std::vector<double> grid = {0.3, 1.0, 2.7};
    const auto closed = riccati::flow_transition_curve(ss, q1, grid, opt.tol);
    const auto oracle =
        riccati::integrate_flow_transition(model, q1, grid, opt.integrator);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::max(
          worst,
          riccati::spectral_norm(closed.first.values[i] -
                                 oracle.first.values[i]) /
              (1.0 + riccati::spectral_norm(oracle.first.values[i])));
      worst = std::max(
          worst,
          riccati::spectral_norm(closed.second.values[i] -
                                 oracle.second.values[i]) /
              (1.0 + riccati::spectral_norm(oracle.second.values[i])));
    }
    add_check(checks, "floquet_vs_oracle", worst, 1e-6);
  }

  // Evolution-family laws.
  {
    double worst_flow = 0.0;
    double worst_cocycle = 0.0;
    for (double s : {0.3, 1.7}) {
      for (double t : {0.3, 1.7}) {
        const Matrix once = riccati::flow(ss, q1, s + t, opt.tol);
        const Matrix twice =
            riccati::flow(ss, riccati::flow(ss, q1, s, opt.tol), t, opt.tol);
        worst_flow = std::max(
            worst_flow, riccati::spectral_norm(once - twice) /
                            (1.0 + riccati::spectral_norm(once)));

        const Matrix whole = riccati::transition(ss, q1, s + t, opt.tol);
        const Matrix glued =
            riccati::transition_two_time(ss, q1, s, s + t, opt.tol) *
            riccati::transition(ss, q1, s, opt.tol);
        worst_cocycle = std::max(
            worst_cocycle, riccati::spectral_norm(whole - glued) /
                               (1.0 + riccati::spectral_norm(whole)));
      }
    }
    add_check(checks, "flow_semigroup", worst_flow, 1e-9);
    add_check(checks, "transition_cocycle", worst_cocycle, 1e-9);
  }

  // Implicit integral representation at t = 2.
  {
    const double t = 2.0;
    const Matrix e_t = riccati::transition(ss, q1, t, opt.tol);
    const Matrix integral =
        riccati::integrate_matrix(
            [&](double s) {
              const Matrix e_st =
                  riccati::transition_two_time(ss, q1, s, t, opt.tol);
              const Matrix phi_s = riccati::flow(ss, q1, s, opt.tol);
              return Matrix(e_st * (model.R + phi_s * model.S * phi_s) *
                            e_st.transpose());
            },
            0.0, t, 1e-9, 1e-12)
            .value;
    const Matrix direct = riccati::flow(ss, q1, t, opt.tol);
    const Matrix reconstructed = e_t * q1 * e_t.transpose() + integral;
    add_check(checks, "implicit_representation",
              riccati::spectral_norm(reconstructed - direct) /
                  (1.0 + riccati::spectral_norm(direct)),
              1e-6);
  }

  // Envelope bounds over a dyadic grid.
  {
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(0.01 * (1 << k));
    grid.push_back(20.0);
    const riccati::BoundsReport bounds =
        riccati::verify_envelopes(ss, q1, q2, grid, 0.5, opt.tol);
    int failed = 0;
    for (const auto& check : bounds.envelope_checks) {
      if (!check.pass) ++failed;
    }
    add_check(checks, "envelopes", static_cast<double>(failed), 0.0);
  }

  // Gramian monotonicity and long-horizon limit.
  {
    const std::vector<double> grid = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
    const auto curve = riccati::gramian_curve(ss.B, model.S, grid);
    const double s_inf_norm = riccati::spectral_norm(ss.S_inf);
    double worst = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
      const double lmin =
          riccati::lambda_min_sym(curve[i].S_t - curve[i - 1].S_t);
      worst = std::max(worst, -lmin / s_inf_norm);
    }
    add_check(checks, "gramian_monotone", worst, opt.tol.mono_tol);

    const double horizon =
        60.0 / std::abs(riccati::spectral_abscissa(ss.B));
    const Matrix s_far = riccati::gramian_at(ss.B, model.S, horizon).S_t;
    add_check(checks, "gramian_limit",
              riccati::spectral_norm(s_far - ss.S_inf) / s_inf_norm, 1e-8);
  }

  return checks;
}

int run_verify(const std::string& model_path,
               const std::vector<std::uint64_t>& random_spec,
               const CommonOptions& opt) {
  const auto start = Clock::now();
  if (model_path.empty() == random_spec.empty()) {
    throw InvalidInputError(
        "verify: pass exactly one of a model file or --random r n [seed]");
  }

  struct Case {
    ModelTriple model;
    Matrix q1;
    Matrix q2;
    std::string fp;
  };
  std::vector<Case> cases;

  if (!model_path.empty()) {
    const LoadedModel loaded = load_and_validate(model_path, opt.tol);
    std::mt19937_64 rng(resolve_seed(std::nullopt));
    Case c;
    c.model = loaded.model;
    c.q1 = loaded.Q.has_value() ? *loaded.Q
                                : riccati::random_psd(loaded.model.dim, rng);
    c.q2 = riccati::random_psd(loaded.model.dim, rng);
    c.fp = fingerprint(loaded);
    cases.push_back(std::move(c));
  } else {
    if (random_spec.size() < 2 || random_spec.size() > 3) {
      throw InvalidInputError("verify: --random expects r n [seed]");
    }
    const int r = static_cast<int>(random_spec[0]);
    const int n = static_cast<int>(random_spec[1]);
    if (r < 1 || n < 1) {
      throw InvalidInputError("verify: --random needs r >= 1 and n >= 1");
    }
    const std::uint64_t seed = resolve_seed(
        random_spec.size() == 3 ? std::optional<std::uint64_t>(random_spec[2])
                                : std::nullopt);
    for (int i = 0; i < n; ++i) {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
      Case c;
      c.model = riccati::random_model(r, rng);
      c.q1 = riccati::random_psd(r, rng);
      c.q2 = riccati::random_psd(r, rng);
      LoadedModel as_loaded;
      as_loaded.model = c.model;
      c.fp = fingerprint(as_loaded);
      cases.push_back(std::move(c));
    }
  }
  const double load_ms = ms_since(start);

  const auto compute_start = Clock::now();
  int total_pass = 0;
  int total_fail = 0;
  json case_reports = json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::vector<SuiteCheck> checks =
        run_suite(cases[i].model, cases[i].q1, cases[i].q2, opt);
    json entries = json::array();
    for (const auto& check : checks) {
      (check.pass ? total_pass : total_fail) += 1;
      entries.push_back({{"name", check.name},
                         {"observed", check.observed},
                         {"bound", check.bound},
                         {"pass", check.pass}});
    }
    case_reports.push_back({{"case", i},
                            {"fingerprint", cases[i].fp},
                            {"dim", cases[i].model.dim},
                            {"checks", std::move(entries)}});
  }
  const double compute_ms = ms_since(compute_start);

  json report;
  report["command"] = "verify";
  report["cases"] = std::move(case_reports);
  report["checks"] = {{"pass", total_pass}, {"fail", total_fail}};
  report["timings_ms"] = timing_json(load_ms, compute_ms, ms_since(start));
  emit_report(report, opt);
  return total_fail == 0 ? kExitOk : kExitSuiteFailure;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

int run_bench(const std::vector<int>& r_list, int t_points, int runs,
              const std::optional<std::uint64_t>& seed_opt,
              const CommonOptions& opt) {
  const auto start = Clock::now();
  if (t_points < 2 || runs < 1) {
    throw InvalidInputError("bench: need --t-points >= 2 and --runs >= 1");
  }
  for (int r : r_list) {
    if (r < 1) throw InvalidInputError("bench: r must be >= 1");
  }
  const std::uint64_t seed = resolve_seed(seed_opt);

  std::vector<double> grid;
  grid.reserve(t_points);
  for (int i = 0; i < t_points; ++i) {
    grid.push_back(0.05 + i * (5.0 - 0.05) / (t_points - 1));
  }

  IntegratorConfig oracle_cfg = opt.integrator;
  oracle_cfg.rel_tol = 1e-10;
  oracle_cfg.abs_tol = 1e-12;

  json results = json::array();
  for (int r : r_list) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r));
    const ModelTriple model = riccati::random_model(r, rng);
    const Matrix q = riccati::random_psd(r, rng);

    std::vector<double> closed_ms;
    std::vector<double> oracle_ms;
    for (int run = 0; run < runs; ++run) {
      const auto c0 = Clock::now();
      const SteadyState ss = riccati::steady_state(model, opt.tol);
      const auto curve = riccati::flow_transition_curve(ss, q, grid, opt.tol);
      (void)curve;
      closed_ms.push_back(ms_since(c0));

      const auto o0 = Clock::now();
      const auto oracle =
          riccati::integrate_flow_transition(model, q, grid, oracle_cfg);
      (void)oracle;
      oracle_ms.push_back(ms_since(o0));
    }
    const double closed_med = median(closed_ms);
    const double oracle_med = median(oracle_ms);
    results.push_back({{"r", r},
                       {"t_points", t_points},
                       {"runs", runs},
                       {"closed_ms_median", closed_med},
                       {"oracle_ms_median", oracle_med},
                       {"speedup", oracle_med / closed_med},
                       {"closed_faster", closed_med < oracle_med}});
  }

  json report;
  report["command"] = "bench";
  report["outputs"] = std::move(results);
  report["checks"] = {{"pass", 0}, {"fail", 0}};
  report["timings_ms"] = timing_json(0.0, ms_since(start), ms_since(start));
  emit_report(report, opt);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Transition semigroups and flows of time-invariant matrix "
      "Riccati equations"};
  app.require_subcommand(1);
  CommonOptions opt;
  attach_common(app, opt);

  std::string model_path;
  std::string grid_text = "1.0";
  std::string method = "closed";
  double s_time = 0.0;
  double t_time = 1.0;
  double delta = 0.5;
  std::string q2_path;
  std::vector<std::uint64_t> random_spec;
  std::vector<int> bench_r = {4, 8};
  int t_points = 50;
  int runs = 5;
  std::uint64_t seed_value = 0;

  CLI::App* solve = app.add_subcommand("solve", "Fixed points and residuals");
  solve->add_option("model", model_path, "Model JSON file")->required();
  solve->fallthrough();

  CLI::App* flow = app.add_subcommand("flow", "Evaluate the flow on a grid");
  flow->add_option("model", model_path, "Model JSON file")->required();
  flow->add_option("--t", grid_text,
                   "Time grid: comma list or start:step:end")
      ->required();
  flow->add_option("--method", method, "closed | oracle | both")
      ->check(CLI::IsMember({"closed", "oracle", "both"}));
  flow->fallthrough();

  CLI::App* semigroup =
      app.add_subcommand("semigroup", "Two-time transition matrix");
  semigroup->add_option("model", model_path, "Model JSON file")->required();
  semigroup->add_option("--s", s_time, "Start time")->required();
  semigroup->add_option("--t", t_time, "End time")->required();
  semigroup->fallthrough();

  CLI::App* bounds =
      app.add_subcommand("bounds", "Envelope bounds and contraction constants");
  bounds->add_option("model", model_path, "Model JSON file")->required();
  bounds->add_option("--t", grid_text,
                     "Time grid: comma list or start:step:end")
      ->required();
  bounds->add_option("--delta", delta, "Burn-in horizon for chi_delta");
  bounds->add_option("--q2", q2_path,
                     "Second initial condition (JSON matrix file)");
  bounds->fallthrough();

  CLI::App* verify =
      app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("model", model_path, "Model JSON file");
  verify
      ->add_option("--random", random_spec,
                   "Generate models: r n [seed] (seed falls back to "
                   "RICCATI_SEED, then 42)")
      ->expected(2, 3);
  verify->fallthrough();

  CLI::App* bench = app.add_subcommand(
      "bench", "Closed-form path vs direct integration wall clock");
  bench->add_option("--r", bench_r, "Model sizes to benchmark")
      ->delimiter(',');
  bench->add_option("--t-points", t_points, "Grid points per size");
  bench->add_option("--runs", runs, "Runs per path (median reported)");
  CLI::Option* seed_opt =
      bench->add_option("--seed", seed_value, "Model generation seed");
  bench->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (solve->parsed()) return run_solve(model_path, opt);
    if (flow->parsed()) return run_flow(model_path, grid_text, method, opt);
    if (semigroup->parsed())
      return run_semigroup(model_path, s_time, t_time, opt);
    if (bounds->parsed())
      return run_bounds(model_path, grid_text, delta, q2_path, opt);
    if (verify->parsed()) return run_verify(model_path, random_spec, opt);
    if (bench->parsed()) {
      std::optional<std::uint64_t> explicit_seed;
      if (seed_opt->count() > 0) explicit_seed = seed_value;
      return run_bench(bench_r, t_points, runs, explicit_seed, opt);
    }
    throw InvalidInputError("no subcommand given");
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
