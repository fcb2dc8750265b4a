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

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace riccati {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A trajectory of matrix values sampled on an increasing time grid.
// `method` records which evaluation path produced the values
// ("closed_form", "integrated", ...) so downstream reports can say
// where a number came from.
struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> values;
  std::string method;
  // Accumulated local-error bound for integrated trajectories; zero for
  // closed-form evaluation.
  double error_estimate = 0.0;
};

// (M + M^T)/2.  Used wherever a result is symmetric in exact arithmetic
// but floating point drifts the off-diagonal halves apart.
inline Matrix symmetrize(const Matrix& m) {
  return 0.5 * (m + m.transpose());
}

inline bool all_finite(const Matrix& m) {
  return m.allFinite();
}

}  // namespace riccati
