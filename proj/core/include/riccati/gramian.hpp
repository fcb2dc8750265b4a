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

#include <vector>

#include "riccati/types.hpp"

namespace riccati {

// Finite-horizon observability Gramian S_t = int_0^t e^{sB^T} S e^{sB} ds.
struct GramianValue {
  double t = 0;
  Matrix S_t;
};

// Gramian by the block-exponential identity: with
//   M = [[-B^T, S], [0, B]],  e^{tM} = [[e^{-tB^T}, G], [0, e^{tB}]],
// one has S_t = (e^{tB})^T G.  For large t * ||B|| the e^{-tB^T} block is
// explosive, so the horizon is split and the exact doubling identity
// S_{2h} = S_h + e^{hB^T} S_h e^{hB} reassembles the result.
GramianValue gramian_at(const Matrix& b, const Matrix& s, double t);

// gramian_at over a sorted nonnegative grid.  Throws InvalidInputError on
// an unsorted grid.
std::vector<GramianValue> gramian_curve(const Matrix& b, const Matrix& s,
                                        const std::vector<double>& grid);

}  // namespace riccati
