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

#include "riccati/model.hpp"
#include "riccati/tolerances.hpp"
#include "riccati/types.hpp"

namespace riccati {

// The stabilizing fixed point of Lambda and its companions:
//   P_inf       SPD solution of A P + P A^T + R - P S P = 0,
//   B           = A - P_inf S, Hurwitz,
//   S_inf       solution of B^T S_inf + S_inf B + S = 0, SPD,
//   P_inf_minus = P_inf - S_inf^{-1}, the negative-definite fixed point.
// The defining model is carried along so downstream evaluations need only
// this struct.
struct SteadyState {
  ModelTriple model;
  Matrix P_inf;
  Matrix B;
  Matrix S_inf;
  Matrix P_inf_minus;

  double care_residual = 0;        // ||Lambda(P_inf)|| (absolute)
  double care_residual_minus = 0;  // ||Lambda(P_inf_minus)||
  double lyap_residual = 0;        // ||B^T S_inf + S_inf B + S||
  double cond_S_inf = 0;
  bool cond_warning = false;       // cond(S_inf) > cond_warn
};

struct CareSolution {
  Matrix P_inf;
  Matrix B;        // A - P_inf S
  double residual; // ||Lambda(P_inf)||
};

// Stabilizing CARE solution via the stable invariant subspace of the 2r x 2r
// Hamiltonian, recovered from an ordered complex Schur decomposition, with a
// Newton defect-correction step if the residual is above tolerance.  Throws
// NumericalError when no r-dimensional stable subspace exists (violated
// hypotheses) or the residual will not come down.
CareSolution solve_care(const ModelTriple& model, const Tolerances& tol = {});

// Solves B^T X + X B + S = 0 for Hurwitz B by complex Schur reduction and
// column-wise back substitution.  Throws InvalidInputError if B is not
// Hurwitz, NumericalError if the triangular system is singular.
Matrix solve_lyapunov(const Matrix& b, const Matrix& s,
                      const Tolerances& tol = {});

// P_inf - S_inf^{-1}, the inverse applied through a factorization solve.
// Throws NumericalError when S_inf is numerically singular.
Matrix negative_fixed_point(const Matrix& p_inf, const Matrix& s_inf);

// Composition: solve_care + solve_lyapunov + negative_fixed_point, with the
// full invariant list verified (residuals, Hurwitz B, definiteness, the
// Loewner gap lambda_min(S_inf^{-1} - P_inf) > 0).  Errors carry the failing
// stage in the message.
SteadyState steady_state(const ModelTriple& model, const Tolerances& tol = {});

}  // namespace riccati
