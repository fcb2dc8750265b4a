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

#include <functional>

#include "riccati/types.hpp"

namespace riccati {

struct QuadratureResult {
  Matrix value;
  double error_estimate = 0;
  int segments = 0;
};

// Adaptive Gauss-Kronrod (7-15 pair) quadrature of a matrix-valued
// integrand over [a, b]: the segment with the largest Kronrod-vs-Gauss
// discrepancy is bisected until the summed estimate meets
// max(abs_tol, rel_tol * ||integral||_F).  Verification-path workhorse.
// Throws NumericalError if the tolerance is unreachable within the segment
// budget.
QuadratureResult integrate_matrix(const std::function<Matrix(double)>& f,
                                  double a, double b, double rel_tol = 1e-9,
                                  double abs_tol = 1e-13);

}  // namespace riccati
