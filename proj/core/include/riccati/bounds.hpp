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
#include <utility>
#include <vector>

#include "riccati/steady_state.hpp"
#include "riccati/tolerances.hpp"
#include "riccati/types.hpp"

namespace riccati {

// One pointwise inequality test: observed quantity vs explicit bound.
struct EnvelopeCheck {
  double t = 0;
  std::string name;    // "E_vs_chi", "Cinv_vs_chi_delta", ...
  double observed = 0;
  double bound = 0;
  bool pass = false;
};

// Exponential envelope ||e^{tB}|| <= alpha * e^{-beta t}.  Two candidates
// are on offer: the resolvent-free estimate built from ||B|| and the
// spectral abscissa (alpha = (a/gamma)^{r-1}, beta = -(1-gamma) sigma(B),
// a = 2||B||/|sigma(B)|), and, when the logarithmic norm is already
// negative, the sharper (alpha, beta) = (1, -mu(B)).
struct CoppelEnvelope {
  double a = 0;
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
  bool from_log_norm = false;  // true when the (1, -mu(B)) variant won
};

struct ContractionConstants {
  double chi_phi_delta = 0;  // chi_delta^2
  double chi_E_delta = 0;    // ||S_inf|| * chi_phi_delta
  double chi_phi_pair = 0;   // chi(Q1) * chi(Q2)
  double chi_E_pair = 0;     // ||S_inf|| * chi_phi_pair
};

struct BoundsReport {
  double chi_Q = 0;
  double delta = 0;
  double chi_delta = 0;
  CoppelEnvelope coppel;
  ContractionConstants constants;
  std::vector<EnvelopeCheck> envelope_checks;
  // Empirical eigenvalue envelope of the flow trajectory over the grid
  // (reported only; no constant from theory to compare against).
  double traj_eig_min = 0;
  double traj_eig_max = 0;
  bool all_pass = false;
};

// chi(Q) = ||(P_inf_minus)^{-1}|| * (||P_inf - P_inf_minus|| + ||Q - P_inf||).
// Uniform bound on ||C_t(Q)^{-1}|| over all t >= 0; the leading factor is
// 1/lambda_min(-P_inf_minus), the constant the estimate's derivation
// actually yields.
double chi(const SteadyState& steady, const Matrix& q);

// chi_delta = [lambda_min(S_delta) * lambda_min(-P_inf_minus)]^{-1}, the
// initial-condition-free bound on ||C_t(Q)^{-1}|| valid for t >= delta.
// Non-increasing in delta.
double chi_delta(const SteadyState& steady, double delta);

// See CoppelEnvelope.  gamma must lie in (0,1); B must be Hurwitz.  Of the
// candidate envelopes the one with the smaller integral alpha/beta is
// selected.
CoppelEnvelope coppel_envelope(const Matrix& b, double gamma = 0.5);

// The four contraction constants of the decay estimates for flow and
// transition differences.
ContractionConstants contraction_constants(const SteadyState& steady,
                                           double delta, const Matrix& q1,
                                           const Matrix& q2);

// Evaluates every envelope inequality pointwise on the grid:
//   (i)   ||E_t(Q)||        <= chi(Q) * ||e^{tB}||          for all t,
//   (ii)  ||E_t(Q)||        <= chi_delta * ||e^{tB}||       for t >= delta,
//   (iii) ||C_t(Q)^{-1}||   <= chi(Q)  (all t)  and  <= chi_delta (t >= delta),
//   (iv)  ||phi_t(Q1) - phi_t(Q2)|| <= chi_phi * ||e^{tB}||^2 * ||Q1 - Q2||,
//   (v)   ||E_t(Q1) - E_t(Q2)||     <= chi_E  * ||e^{tB}||  * ||Q1 - Q2||,
//   plus the selected exponential envelope against ||e^{tB}|| itself.
// (iv) and (v) run only when q2 is provided.  Violations are recorded as
// failed checks, never thrown.
BoundsReport verify_envelopes(const SteadyState& steady, const Matrix& q1,
                              const std::optional<Matrix>& q2,
                              const std::vector<double>& t_grid, double delta,
                              const Tolerances& tol = {});

struct QuadraticGrowthResult {
  double c = 0;                 // smallest c covering the whole sample
  std::vector<double> margins;  // per pair: c*(1+||Q1||^2+||Q2||^2) - max(chi)
  bool quadratic = false;       // every margin nonnegative for the fitted c
};

// Fits the smallest c with max(chi_phi, chi_E) <= c*(1 + ||Q1||^2 + ||Q2||^2)
// over a sample of initial-condition pairs.
QuadraticGrowthResult quadratic_growth_check(
    const SteadyState& steady,
    const std::vector<std::pair<Matrix, Matrix>>& pairs);

// Flat JSON rendering of the report (envelope_checks as an array).
std::string to_json(const BoundsReport& report, bool pretty = false);

}  // namespace riccati
