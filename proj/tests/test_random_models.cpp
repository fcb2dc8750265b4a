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

#include <doctest.h>

#include "riccati/model.hpp"
#include "riccati/random_models.hpp"
#include "riccati/special_case.hpp"
#include "riccati/spectral.hpp"
#include "test_helpers.hpp"

using riccati::Matrix;
using riccati::ModelTriple;
using riccati_test::max_abs_diff;

TEST_CASE("uniform01 stays in [0, 1) and is deterministic per seed") {
  std::mt19937_64 a(42);
  std::mt19937_64 b(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = riccati::uniform01(a);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == riccati::uniform01(b));
  }
}

TEST_CASE("random matrices are reproducible and in range") {
  std::mt19937_64 a(7);
  std::mt19937_64 b(7);
  const Matrix m1 = riccati::random_uniform_matrix(5, a);
  const Matrix m2 = riccati::random_uniform_matrix(5, b);
  CHECK(max_abs_diff(m1, m2) == 0.0);
  CHECK(m1.cwiseAbs().maxCoeff() <= 1.0);
  CHECK(m1.rows() == 5);
}

TEST_CASE("random_psd is symmetric positive semidefinite") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix p = riccati::random_psd(4, rng);
    CHECK(max_abs_diff(p, p.transpose()) == 0.0);
    CHECK(riccati::lambda_min_sym(p) >= -1e-12);
  }
}

TEST_CASE("random_model passes validation by construction") {
  std::mt19937_64 rng(13);
  for (int r : {1, 2, 5, 8}) {
    const ModelTriple m = riccati::random_model(r, rng);
    CHECK(m.dim == r);
    CHECK(riccati::validate(m).pass);
    CHECK(m.A.cwiseAbs().maxCoeff() <= 1.0);
    // The ridge keeps R and S uniformly definite.
    CHECK(riccati::lambda_min_sym(m.R) >= 0.1 - 1e-12);
    CHECK(riccati::lambda_min_sym(m.S) >= 0.1 - 1e-12);
  }
}

TEST_CASE("random_model_seeded pins the same model as a fresh engine") {
  const ModelTriple a = riccati::random_model_seeded(4, 1234);
  std::mt19937_64 rng(1234);
  const ModelTriple b = riccati::random_model(4, rng);
  CHECK(max_abs_diff(a.A, b.A) == 0.0);
  CHECK(max_abs_diff(a.R, b.R) == 0.0);
  CHECK(max_abs_diff(a.S, b.S) == 0.0);
}

TEST_CASE("different seeds give different models") {
  const ModelTriple a = riccati::random_model_seeded(3, 1);
  const ModelTriple b = riccati::random_model_seeded(3, 2);
  CHECK(max_abs_diff(a.A, b.A) > 0.0);
}

TEST_CASE("random_commuting_model satisfies the structured hypotheses") {
  std::mt19937_64 rng(17);
  for (int r : {2, 4, 6}) {
    const ModelTriple m = riccati::random_commuting_model(r, rng);
    CHECK(riccati::validate(m).pass);
    CHECK(riccati::commuting_check(m).accepted);
  }
}
