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

#include "riccati/model.hpp"

#include <fstream>
#include <sstream>

#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "riccati/errors.hpp"
#include "riccati/spectral.hpp"

namespace riccati {

namespace {

using nlohmann::json;

Matrix parse_matrix(const json& j, const std::string& name, int dim) {
  if (!j.is_array()) {
    throw InvalidInputError("load_model: field \"" + name +
                            "\" is not an array of rows");
  }
  const int rows = static_cast<int>(j.size());
  if (rows != dim) {
    throw InvalidInputError("load_model: \"" + name + "\" has " +
                            std::to_string(rows) + " rows, expected " +
                            std::to_string(dim));
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw InvalidInputError("load_model: \"" + name + "\" row " +
                              std::to_string(i) + " does not have " +
                              std::to_string(dim) + " entries (matrix must be square)");
    }
    for (int k = 0; k < dim; ++k) {
      const json& entry = row.at(k);
      if (!entry.is_number()) {
        throw InvalidInputError("load_model: \"" + name + "\" entry (" +
                                std::to_string(i) + "," + std::to_string(k) +
                                ") is not a number");
      }
      m(i, k) = entry.get<double>();
    }
  }
  return m;
}

}  // namespace

LoadedModel load_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInputError(std::string("load_model: JSON parse error: ") +
                            e.what());
  }
  if (!doc.is_object()) {
    throw InvalidInputError("load_model: document is not a JSON object");
  }
  if (!doc.contains("dim")) {
    throw InvalidInputError("load_model: missing field dim");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() <= 0) {
    throw InvalidInputError("load_model: dim must be a positive integer");
  }
  const int dim = doc["dim"].get<int>();

  for (const char* field : {"A", "R", "S"}) {
    if (!doc.contains(field)) {
      throw InvalidInputError(std::string("load_model: missing field ") +
                              field);
    }
  }

  LoadedModel out;
  out.model.dim = dim;
  out.model.A = parse_matrix(doc["A"], "A", dim);
  out.model.R = parse_matrix(doc["R"], "R", dim);
  out.model.S = parse_matrix(doc["S"], "S", dim);
  if (doc.contains("Q")) {
    out.Q = parse_matrix(doc["Q"], "Q", dim);
  }
  return out;
}

LoadedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInputError("load_model: cannot open file: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_model(buffer.str());
}

int kalman_rank(const Matrix& a, const Matrix& c) {
  const int r = static_cast<int>(a.rows());
  // Scaling A^k C by gamma^k (gamma > 0) rescales each block inside its own
  // column space, so the rank is unchanged — but it stops the later blocks
  // from dwarfing the early ones and dragging the SVD threshold past genuine
  // singular values.  Normalize both factors before powering.
  const double a_scale = std::max(1.0, spectral_norm(a));
  const double c_scale = spectral_norm(c);
  if (c_scale == 0.0) return 0;
  const Matrix a_hat = a / a_scale;
  Matrix kalman(r, r * r);
  Matrix block = c / c_scale;
  for (int k = 0; k < r; ++k) {
    kalman.middleCols(k * r, r) = block;
    block = a_hat * block;
  }
  Eigen::JacobiSVD<Matrix> svd(kalman);
  const Vector& sigma = svd.singularValues();
  if (sigma.size() == 0) return 0;
  const double threshold = r * sigma(0) * 1e-12;
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++rank;
  }
  return rank;
}

ValidationReport validate(const ModelTriple& model, const Tolerances& tol) {
  ValidationReport report;
  auto add = [&report](const std::string& name, bool pass, double witness,
                       const std::string& detail) {
    report.entries.push_back({name, pass, witness, detail});
  };

  const bool finite = model.A.allFinite() && model.R.allFinite() &&
                      model.S.allFinite() && model.dim > 0 &&
                      model.A.rows() == model.dim &&
                      model.A.cols() == model.dim &&
                      model.R.rows() == model.dim &&
                      model.R.cols() == model.dim &&
                      model.S.rows() == model.dim &&
                      model.S.cols() == model.dim;
  add("finite_and_consistent", finite, finite ? 1.0 : 0.0,
      "all entries finite, all matrices dim x dim");
  if (!finite) {
    report.pass = false;
    return report;
  }

  auto check_sym_psd = [&](const std::string& name, const Matrix& m) {
    const double scale = 1.0 + spectral_norm(m);
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    add(name + "_symmetric", asym <= tol.sym_tol * scale, asym,
        "max |M - M^T| entry vs sym_tol*(1+||M||)");
    const double lmin = lambda_min_sym(m);
    add(name + "_psd", lmin >= -tol.psd_tol * scale, lmin,
        "lambda_min vs -psd_tol*(1+||M||)");
  };
  check_sym_psd("R", model.R);
  check_sym_psd("S", model.S);

  // The rank hypotheses take the symmetric PSD square roots; matrices that
  // already failed symmetry/definiteness are clamped through their
  // symmetric part so the report stays complete.
  auto halved = [&tol](const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m));
    Vector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return Matrix(es.eigenvectors() * root.asDiagonal() *
                  es.eigenvectors().transpose());
  };
  const int ctrl_rank = kalman_rank(model.A, halved(model.R));
  add("controllability_rank", ctrl_rank == model.dim,
      static_cast<double>(ctrl_rank), "rank of [R^1/2, A R^1/2, ...]");
  const int obs_rank = kalman_rank(model.A.transpose(), halved(model.S));
  add("observability_rank", obs_rank == model.dim,
      static_cast<double>(obs_rank), "rank of [S^1/2, A^T S^1/2, ...]");

  report.pass = true;
  for (const auto& entry : report.entries) {
    report.pass = report.pass && entry.pass;
  }
  return report;
}

void require_valid(const ModelTriple& model, const Tolerances& tol) {
  ValidationReport report = validate(model, tol);
  if (report.pass) return;
  std::string msg = "model validation failed:";
  for (const auto& entry : report.entries) {
    if (!entry.pass) {
      msg += " [" + entry.name + " witness=" + std::to_string(entry.witness) +
             "]";
    }
  }
  throw InvalidInputError(msg);
}

Matrix riccati_drift(const ModelTriple& model, const Matrix& p) {
  if (p.rows() != model.dim || p.cols() != model.dim) {
    throw InvalidInputError("riccati_drift: P is " + std::to_string(p.rows()) +
                            "x" + std::to_string(p.cols()) + ", expected " +
                            std::to_string(model.dim) + "x" +
                            std::to_string(model.dim));
  }
  const Matrix ap = model.A * p;
  // A P + P A^T is symmetric by construction when assembled as X + X^T.
  return symmetrize(ap + ap.transpose() + model.R - p * model.S * p);
}

void check_initial_condition(const ModelTriple& model, const Matrix& q,
                             const Tolerances& tol) {
  if (q.rows() != model.dim || q.cols() != model.dim) {
    throw InvalidInputError("initial condition Q is " +
                            std::to_string(q.rows()) + "x" +
                            std::to_string(q.cols()) + ", expected " +
                            std::to_string(model.dim) + "x" +
                            std::to_string(model.dim));
  }
  if (!q.allFinite()) {
    throw InvalidInputError("initial condition Q has non-finite entries");
  }
  const double scale = 1.0 + spectral_norm(q);
  const double asym = (q - q.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.sym_tol * scale) {
    throw InvalidInputError("initial condition Q is not symmetric (residual " +
                            std::to_string(asym) + ")");
  }
  const double lmin = lambda_min_sym(q);
  if (lmin < -tol.psd_tol * scale) {
    throw InvalidInputError(
        "initial condition Q is not positive semi-definite (lambda_min " +
        std::to_string(lmin) + ")");
  }
}

}  // namespace riccati
