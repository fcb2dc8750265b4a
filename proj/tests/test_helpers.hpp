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

#include <initializer_list>
#include <vector>

#include "riccati/model.hpp"
#include "riccati/types.hpp"

namespace riccati_test {

using riccati::Matrix;
using riccati::ModelTriple;

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows.begin()->size());
  Matrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline ModelTriple make_model(const Matrix& a, const Matrix& r,
                              const Matrix& s) {
  ModelTriple model;
  model.dim = static_cast<int>(a.rows());
  model.A = a;
  model.R = r;
  model.S = s;
  return model;
}

// The one-dimensional reference problem a=0, r=1, s=1 used throughout:
// flow tanh(t), transition sech(t), fixed points +-1.
inline ModelTriple scalar_model() {
  return make_model(mat({{0.0}}), mat({{1.0}}), mat({{1.0}}));
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace riccati_test
