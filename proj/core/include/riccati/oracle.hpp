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

#include "riccati/model.hpp"
#include "riccati/types.hpp"

namespace riccati {

// Configuration of the adaptive embedded Runge-Kutta 5(4) integrator.
// Defaults are tight enough that closed-form-vs-integration comparisons at
// 1e-6 attribute any discrepancy to the closed form.
struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 1e100;  // effectively unbounded
  // Validity window for both tolerances.
  static constexpr double kTolMin = 1e-13;
  static constexpr double kTolMax = 1e-2;
};

// Integrates d/dt P = Lambda(P) from P_0 = Q, returning values at the grid
// points (the stepper lands on them exactly; symmetry of P is re-imposed
// after every accepted step).  Throws NumericalError on step-size underflow,
// reporting the failing time.
Trajectory integrate_riccati(const ModelTriple& model, const Matrix& q,
                             const std::vector<double>& grid,
                             const IntegratorConfig& config = {});

// Integrates the transition ODE d/du E = (A - phi_u(Q) S) E from E_s = I up
// to u = t, co-integrating phi in the same state vector so both see
// identical time points.  Returns E_{s,t}(Q).
Matrix integrate_transition(const ModelTriple& model, const Matrix& q,
                            double s, double t,
                            const IntegratorConfig& config = {});

// One joint sweep from 0 collecting both phi_t(Q) and E_t(Q) = E_{0,t}(Q)
// at every grid point; far cheaper than one transition integration per
// grid time.
std::pair<Trajectory, Trajectory> integrate_flow_transition(
    const ModelTriple& model, const Matrix& q, const std::vector<double>& grid,
    const IntegratorConfig& config = {});

// Exact solution of the one-dimensional problem
//   dp = 2 a p + r - s p^2,  p_0 = q,
// via the scalar fixed points p_inf = (a + w)/s, p_inf_minus = (a - w)/s,
// w = sqrt(a^2 + r s), B = -w.  Returns (phi_t(q), E_t(q)).
struct ScalarSolution {
  double phi = 0;
  double E = 0;
};
ScalarSolution scalar_analytic(double a, double r, double s, double q,
                               double t);

}  // namespace riccati
