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
#include <vector>

#include "riccati/model.hpp"
#include "riccati/tolerances.hpp"
#include "riccati/types.hpp"

namespace riccati {

// The structured model class with fully closed-form solutions: S SPD and
// S A = A^T S >= 0.  Under these hypotheses S^{1/2} A S^{-1/2} is symmetric
// PSD and every steady-state quantity reduces to symmetric square roots.
struct CommutingModel {
  ModelTriple model;
  // Cached factors of S used by every closed-form evaluation.
  Matrix S_half;
  Matrix S_half_inv;
};

struct CommutingCheck {
  bool accepted = false;
  std::vector<ValidationEntry> witnesses;  // per-hypothesis pass/fail
  std::optional<CommutingModel> certified;
};

// Certifies (or rejects with witnesses) the structural hypotheses; never
// throws on rejection — rejection is a value.
CommutingCheck commuting_check(const ModelTriple& model,
                               const Tolerances& tol = {});

struct CommutingFixedPoints {
  Matrix P_inf;        // [A + W] S^{-1}
  Matrix P_inf_minus;  // [A - W] S^{-1}
  Matrix B;            // -W
  Matrix W;            // (A^2 + R S)^{1/2}, positive-real-part root
};

// Closed-form fixed points.  W is computed through the similarity
// S^{1/2} (.) S^{-1/2}: the transformed A^2 + RS is symmetric PSD, its
// principal root transforms back to the wanted root of the original.
CommutingFixedPoints closed_fixed_points(const CommutingModel& cm,
                                         const Tolerances& tol = {});

// Closed-form transition matrix
//   E_t(Q) = e^{tB} D [e^{2tB} D + (Q - P_inf_minus)(I - e^{2tB^T})]^{-1},
// with D = P_inf - P_inf_minus.  The transpose in the last factor is not a
// typo: S e^{2tB} S^{-1} = e^{2tB^T} because S B = B^T S, and pulling the
// S^{1/2}-frame derivation back to the original coordinates lands the
// conjugated exponential on that term.  Throws NumericalError if the
// bracket is numerically singular (theory excludes it).
Matrix closed_transition(const CommutingModel& cm, const Matrix& q, double t,
                         const Tolerances& tol = {});

// Closed-form Gramian S_t = -1/2 S B^{-1} (I - e^{2tB}).
Matrix closed_gramian(const CommutingModel& cm, double t,
                      const Tolerances& tol = {});

struct StructuralIdentities {
  double gap_residual = 0;   // ||(P_inf - P_inf_minus) + 2 B S^{-1}||
  double b_residual = 0;     // ||B + 1/2 (P_inf - P_inf_minus) S||
  bool pass = false;
};

// Verifies P_inf - P_inf_minus = -2 B S^{-1} and
// B = -1/2 (P_inf - P_inf_minus) S within 1e-9 * scale.
StructuralIdentities structural_identities(const CommutingModel& cm,
                                           const Tolerances& tol = {});

}  // namespace riccati
