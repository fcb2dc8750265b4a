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

#include <random>
#include <string>

#include <doctest.h>

#include "riccati/errors.hpp"
#include "riccati/model.hpp"
#include "riccati/random_models.hpp"
#include "test_helpers.hpp"

using riccati::InvalidInputError;
using riccati::LoadedModel;
using riccati::Matrix;
using riccati::ModelTriple;
using riccati::ValidationReport;
using riccati_test::make_model;
using riccati_test::mat;
using riccati_test::max_abs_diff;
using riccati_test::scalar_model;

namespace {

const char* kScalarJson =
    R"({"dim": 1, "A": [[0.0]], "R": [[1.0]], "S": [[1.0]], "Q": [[0.0]]})";

}  // namespace

TEST_CASE("load_model parses a scalar model with initial condition") {
  const LoadedModel loaded = riccati::load_model(kScalarJson);
  CHECK(loaded.model.dim == 1);
  CHECK(loaded.model.A(0, 0) == 0.0);
  CHECK(loaded.model.R(0, 0) == 1.0);
  CHECK(loaded.model.S(0, 0) == 1.0);
  REQUIRE(loaded.Q.has_value());
  CHECK((*loaded.Q)(0, 0) == 0.0);
}

TEST_CASE("load_model parses a 2x2 model without initial condition") {
  const LoadedModel loaded = riccati::load_model(
      R"({"dim": 2,
          "A": [[0.0, 1.0], [0.0, 0.0]],
          "R": [[1.0, 0.0], [0.0, 1.0]],
          "S": [[1.0, 0.0], [0.0, 1.0]]})");
  CHECK(loaded.model.dim == 2);
  CHECK(loaded.model.A(0, 1) == 1.0);
  CHECK_FALSE(loaded.Q.has_value());
}

TEST_CASE("load_model rejects malformed documents") {
  CHECK_THROWS_AS(riccati::load_model("not json"), InvalidInputError);
  CHECK_THROWS_AS(
      riccati::load_model(R"({"dim": 1, "A": [[0.0]], "R": [[1.0]]})"),
      InvalidInputError);  // missing S
  CHECK_THROWS_AS(
      riccati::load_model(
          R"({"dim": 2, "A": [[0.0]], "R": [[1.0]], "S": [[1.0]]})"),
      InvalidInputError);  // dim mismatch
  CHECK_THROWS_AS(
      riccati::load_model(
          R"({"dim": 1, "A": [[0.0, 1.0]], "R": [[1.0]], "S": [[1.0]]})"),
      InvalidInputError);  // ragged row
  CHECK_THROWS_AS(
      riccati::load_model(
          R"({"dim": 1, "A": [["x"]], "R": [[1.0]], "S": [[1.0]]})"),
      InvalidInputError);  // non-numeric entry
  CHECK_THROWS_AS(
      riccati::load_model(
          R"({"dim": 0, "A": [], "R": [], "S": []})"),
      InvalidInputError);  // empty model
}

TEST_CASE("load_model error messages name the offending field") {
  try {
    riccati::load_model(R"({"dim": 1, "A": [[0.0]], "R": [[1.0]]})");
    FAIL("expected InvalidInputError");
  } catch (const InvalidInputError& e) {
    CHECK(std::string(e.what()).find("S") != std::string::npos);
  }
}

TEST_CASE("validate accepts the canonical well-posed models") {
  const ValidationReport report = riccati::validate(scalar_model());
  CHECK(report.pass);
  for (const auto& entry : report.entries) CHECK(entry.pass);

  const ModelTriple iso = make_model(Matrix::Zero(2, 2), Matrix::Identity(2, 2),
                                     Matrix::Identity(2, 2));
  CHECK(riccati::validate(iso).pass);
}

TEST_CASE("validate flags an uncontrollable source term") {
  // R = 0 makes the controllability matrix vanish identically.
  const ModelTriple m = make_model(Matrix::Zero(2, 2), Matrix::Zero(2, 2),
                                   Matrix::Identity(2, 2));
  const ValidationReport report = riccati::validate(m);
  CHECK_FALSE(report.pass);
  bool found = false;
  for (const auto& entry : report.entries) {
    if (entry.name == "controllability_rank") {
      found = true;
      CHECK_FALSE(entry.pass);
      CHECK(entry.witness == doctest::Approx(0.0));
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(riccati::require_valid(m), InvalidInputError);
}

TEST_CASE("validate accepts rank-deficient R when A spreads it") {
  // With A the shift and R touching only the second coordinate the pair
  // (A, R^{1/2}) is still controllable: [R12, A R12] has full row rank.
  const ModelTriple m =
      make_model(mat({{0.0, 1.0}, {0.0, 0.0}}), mat({{0.0, 0.0}, {0.0, 1.0}}),
                 Matrix::Identity(2, 2));
  const ValidationReport report = riccati::validate(m);
  CHECK(report.pass);
}

TEST_CASE("validate flags asymmetric or indefinite quadratic terms") {
  const ModelTriple asym = make_model(
      Matrix::Zero(2, 2), mat({{1.0, 0.5}, {0.0, 1.0}}), Matrix::Identity(2, 2));
  CHECK_FALSE(riccati::validate(asym).pass);

  const ModelTriple indef =
      make_model(Matrix::Zero(2, 2), Matrix::Identity(2, 2),
                 mat({{1.0, 0.0}, {0.0, -1.0}}));
  CHECK_FALSE(riccati::validate(indef).pass);
}

TEST_CASE("validate is deterministic") {
  std::mt19937_64 rng(3);
  const ModelTriple m = riccati::random_model(4, rng);
  const ValidationReport a = riccati::validate(m);
  const ValidationReport b = riccati::validate(m);
  REQUIRE(a.entries.size() == b.entries.size());
  for (size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].name == b.entries[i].name);
    CHECK(a.entries[i].pass == b.entries[i].pass);
    CHECK(a.entries[i].witness == b.entries[i].witness);
  }
}

TEST_CASE("kalman_rank on hand-computed pairs") {
  // (0, I) is controllable; (0, 0) is not.
  CHECK(riccati::kalman_rank(Matrix::Zero(2, 2), Matrix::Identity(2, 2)) == 2);
  CHECK(riccati::kalman_rank(Matrix::Zero(2, 2), Matrix::Zero(2, 2)) == 0);
  // Shift pair reaching the whole space from the last coordinate.
  CHECK(riccati::kalman_rank(mat({{0.0, 1.0}, {0.0, 0.0}}),
                             mat({{0.0, 0.0}, {0.0, 1.0}})) == 2);
  // Diagonal A with a source confined to one eigendirection.
  CHECK(riccati::kalman_rank(mat({{1.0, 0.0}, {0.0, 2.0}}),
                             mat({{1.0, 0.0}, {0.0, 0.0}})) == 1);
}

TEST_CASE("riccati_drift scalar values and stationarity") {
  const ModelTriple m = scalar_model();
  CHECK(riccati::riccati_drift(m, mat({{0.0}}))(0, 0) == doctest::Approx(1.0));
  // +-1 are the two fixed points of p' = 1 - p^2.
  CHECK(riccati::riccati_drift(m, mat({{1.0}}))(0, 0) == doctest::Approx(0.0));
  CHECK(riccati::riccati_drift(m, mat({{-1.0}}))(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("riccati_drift returns an exactly symmetric matrix") {
  std::mt19937_64 rng(17);
  const ModelTriple m = riccati::random_model(5, rng);
  const Matrix q = riccati::random_psd(5, rng);
  const Matrix d = riccati::riccati_drift(m, q);
  CHECK(max_abs_diff(d, d.transpose()) == 0.0);
}

TEST_CASE("drift differences factor through the closed-loop matrices") {
  // Lambda(Q1) - Lambda(Q2) = (A - Q1 S)(Q1 - Q2) + (Q1 - Q2)(A - Q2 S)^T.
  std::mt19937_64 rng(19);
  const ModelTriple m = riccati::random_model(4, rng);
  const Matrix q1 = riccati::random_psd(4, rng);
  const Matrix q2 = riccati::random_psd(4, rng);
  const Matrix lhs =
      riccati::riccati_drift(m, q1) - riccati::riccati_drift(m, q2);
  const Matrix rhs = (m.A - q1 * m.S) * (q1 - q2) +
                     (q1 - q2) * (m.A - q2 * m.S).transpose();
  const double scale = lhs.norm() + 1.0;
  CHECK(max_abs_diff(lhs, rhs) < 1e-12 * scale);
}

TEST_CASE("riccati_drift rejects mismatched dimensions") {
  CHECK_THROWS_AS(riccati::riccati_drift(scalar_model(), Matrix::Zero(2, 2)),
                  InvalidInputError);
}

TEST_CASE("check_initial_condition enforces symmetry and positivity") {
  const ModelTriple m = make_model(Matrix::Zero(2, 2), Matrix::Identity(2, 2),
                                   Matrix::Identity(2, 2));
  CHECK_NOTHROW(riccati::check_initial_condition(m, Matrix::Zero(2, 2)));
  CHECK_NOTHROW(riccati::check_initial_condition(m, Matrix::Identity(2, 2)));
  CHECK_THROWS_AS(
      riccati::check_initial_condition(m, mat({{1.0, 0.5}, {0.0, 1.0}})),
      InvalidInputError);
  CHECK_THROWS_AS(
      riccati::check_initial_condition(m, mat({{1.0, 0.0}, {0.0, -1.0}})),
      InvalidInputError);
  CHECK_THROWS_AS(riccati::check_initial_condition(m, Matrix::Zero(3, 3)),
                  InvalidInputError);
}
