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

namespace riccati {

// Central knobs for every residual and definiteness check in the library.
// All of them are relative: a residual is compared against
// tol * (1 + ||reference||) or tol * ||reference|| as documented at the
// point of use.
struct Tolerances {
  // Symmetry check: max |M - M^T| entry against sym_tol * (1 + ||M||).
  double sym_tol = 1e-10;
  // Definiteness check: lambda_min(M) >= -psd_tol * (1 + ||M||).
  double psd_tol = 1e-10;
  // Algebraic equation residual ||A P + P A^T + R - P S P|| vs care_tol * ||R||.
  double care_tol = 1e-9;
  // Linear (Lyapunov) residual against lyap_tol * ||right-hand side||.
  double lyap_tol = 1e-9;
  // Slack for monotonicity comparisons of Gramian values, scaled by the
  // limit Gramian's norm.
  double mono_tol = 1e-9;
  // General verification slack for the invariant suite.
  double check_tol = 1e-9;
  // Condition number above which results are flagged as ill-conditioned.
  double cond_warn = 1e12;
};

}  // namespace riccati
