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

#include <utility>
#include <vector>

#include "riccati/steady_state.hpp"
#include "riccati/tolerances.hpp"
#include "riccati/types.hpp"

namespace riccati {

// The factorization at the heart of this library: the transition matrix of
// the time-varying system driven by A - phi_t(Q) S splits into a constant
// exponential and a bounded corrector,
//
//   E_t(Q) = e^{tB} C_t(Q)^{-1},   C_t(Q) = I + (Q - P_inf) S_t,
//
// so e^{tB} carries all the decay while C_t stays bounded and invertible.
struct FloquetFactor {
  double t = 0;
  Matrix Q;
  Matrix exp_tB;
  Matrix C;
  Matrix C_inv;
  Matrix E;       // exp_tB * C_inv
  double cond_C = 0;  // 1-norm condition estimate of C (diagnostic)
};

// Builds C_t(Q) = I + (Q - P_inf) S_t and inverts it by partially pivoted
// LU with one refinement pass.  C is invertible in exact arithmetic; a
// numerically singular C is reported as NumericalError, never regularized.
FloquetFactor c_matrix(const SteadyState& steady, const Matrix& q, double t,
                       const Tolerances& tol = {});

// E_t(Q) = e^{tB} C_t(Q)^{-1}; E_0 = I and E_t(P_inf) = e^{tB}.
Matrix transition(const SteadyState& steady, const Matrix& q, double t,
                  const Tolerances& tol = {});

// Two-time transition E_{s,t}(Q) = E_{t-s}(phi_s(Q)) for 0 <= s <= t.
Matrix transition_two_time(const SteadyState& steady, const Matrix& q,
                           double s, double t, const Tolerances& tol = {});

// Flow in closed form:
//   phi_t(Q) = P_inf + e^{tB} [I + (Q - P_inf) S_t]^{-1} (Q - P_inf) e^{tB^T}.
// Output symmetrized; eigenvalues in (-psd_tol*scale, 0) are clamped to
// zero, anything more negative raises NumericalError.
Matrix flow(const SteadyState& steady, const Matrix& q, double t,
            const Tolerances& tol = {});

// flow() over a sorted time grid (closed-form evaluation at each point).
Trajectory flow_curve(const SteadyState& steady, const Matrix& q,
                      const std::vector<double>& grid,
                      const Tolerances& tol = {});

// Amortized closed-form evaluation of phi_t(Q) and E_t(Q) over a whole
// grid: the steady state supplies S_inf once, each point costs one r x r
// exponential plus a handful of products, with the Gramian recovered from
// the same exponential through the exact identity
//   S_t = S_inf - e^{tB^T} S_inf e^{tB}.
// This is the path to use when many grid points share one model.
std::pair<Trajectory, Trajectory> flow_transition_curve(
    const SteadyState& steady, const Matrix& q, const std::vector<double>& grid,
    const Tolerances& tol = {});

// Difference of flows without subtractive cancellation:
//   phi_t(Q1) - phi_t(Q2) = e^{tB} C_t(Q1)^{-1} (Q1-Q2) C_t(Q2)^{-T} e^{tB^T}.
Matrix flow_difference(const SteadyState& steady, const Matrix& q1,
                       const Matrix& q2, double t, const Tolerances& tol = {});

// Difference of transitions by the same rearrangement:
//   E_t(Q1) - E_t(Q2) = e^{tB} C_t(Q1)^{-1} (Q2-Q1) S_t C_t(Q2)^{-1}.
Matrix transition_difference(const SteadyState& steady, const Matrix& q1,
                             const Matrix& q2, double t,
                             const Tolerances& tol = {});

// Derivative of the flow in direction H (H symmetric):
//   Dphi_t(Q) . H = E_t(Q) H E_t(Q)^T.
Matrix frechet_derivative(const SteadyState& steady, const Matrix& q,
                          const Matrix& h, double t,
                          const Tolerances& tol = {});

}  // namespace riccati
