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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riccati/tolerances.hpp"
#include "riccati/types.hpp"

namespace riccati {

// Problem data for the quadratic matrix flow
//
//   d/dt P = Lambda(P) = A P + P A^T + R - P S P.
//
// R is the constant source term, S the quadratic term; both are required
// to be symmetric PSD, with (A, R^{1/2}) controllable and (A, S^{1/2})
// observable for the steady-state theory to apply.
struct ModelTriple {
  int dim = 0;
  Matrix A;
  Matrix R;
  Matrix S;
};

// A model file may carry an initial condition Q; operations that need one
// fail with MissingInitialConditionError when it is absent.
struct LoadedModel {
  ModelTriple model;
  std::optional<Matrix> Q;
};

struct ValidationEntry {
  std::string name;    // e.g. "R_symmetric", "controllability_rank"
  bool pass = false;
  double witness = 0;  // residual, eigenvalue, or rank — see `detail`
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool pass = false;
};

// Parse a JSON document {"dim": r, "A": [[...]], "R": [[...]], "S": [[...]],
// "Q": [[...]] optional}; matrices are arrays of rows.  Enforces dimension
// consistency but does not run validate().
LoadedModel load_model(const std::string& json_text);
LoadedModel load_model_file(const std::string& path);

// Checks every structural hypothesis and reports witnesses instead of
// throwing: symmetry residuals of R and S, their smallest eigenvalues, and
// the Kalman ranks of (A, R^{1/2}) and (A^T, S^{1/2}).
ValidationReport validate(const ModelTriple& model, const Tolerances& tol = {});

// Throwing variant of validate() for operations whose precondition is a
// validated model; the message lists every failed entry.
void require_valid(const ModelTriple& model, const Tolerances& tol = {});

// Numerical rank of the block Kalman matrix [C, A C, ..., A^{r-1} C] via
// singular values with threshold r * ||K|| * 1e-12.
int kalman_rank(const Matrix& a, const Matrix& c);

// Lambda(P) = A P + P A^T + R - P S P, exactly symmetrized.
Matrix riccati_drift(const ModelTriple& model, const Matrix& p);

// Throws unless q is an r x r symmetric PSD matrix (within tolerances).
void check_initial_condition(const ModelTriple& model, const Matrix& q,
                             const Tolerances& tol = {});

}  // namespace riccati
