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

#include "riccati/gramian.hpp"

#include <cmath>

#include "riccati/errors.hpp"
#include "riccati/spectral.hpp"

namespace riccati {

namespace {

// Largest t*||B|| handed to the block exponential in one piece.  The
// top-left block of e^{tM} is e^{-tB^T}, which grows like e^{t||B||}; past
// this point the horizon is halved and the doubling identity used instead.
constexpr double kBlockHorizon = 8.0;

// One-shot Van Loan evaluation, valid while e^{-tB^T} stays tame.
Matrix gramian_block(const Matrix& b, const Matrix& s, double t) {
  const int r = static_cast<int>(b.rows());
  Matrix m = Matrix::Zero(2 * r, 2 * r);
  m.topLeftCorner(r, r) = -b.transpose();
  m.topRightCorner(r, r) = s;
  m.bottomRightCorner(r, r) = b;
  const Matrix f = expm(m, t);
  // f = [[e^{-tB^T}, G], [0, e^{tB}]] with G = e^{-tB^T} S_t, so
  // S_t = (e^{tB})^T G.
  return symmetrize(f.bottomRightCorner(r, r).transpose() *
                    f.topRightCorner(r, r));
}

}  // namespace

GramianValue gramian_at(const Matrix& b, const Matrix& s, double t) {
  if (b.rows() != b.cols() || s.rows() != s.cols() || b.rows() != s.rows()) {
    throw InvalidInputError("gramian_at: dimension mismatch");
  }
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidInputError("gramian_at: time must be finite and >= 0");
  }
  const int r = static_cast<int>(b.rows());
  if (t == 0.0) {
    return GramianValue{0.0, Matrix::Zero(r, r)};
  }

  const double bnorm = spectral_norm(b);
  int halvings = 0;
  double h = t;
  while (h * bnorm > kBlockHorizon && halvings < 60) {
    h *= 0.5;
    ++halvings;
  }

  Matrix s_h = gramian_block(b, s, h);
  if (halvings == 0) {
    return GramianValue{t, s_h};
  }
  // S_{2h} = S_h + e^{hB^T} S_h e^{hB}, doubling h back up to t.
  Matrix e_h = expm(b, h);
  for (int k = 0; k < halvings; ++k) {
    s_h = symmetrize(s_h + e_h.transpose() * s_h * e_h);
    if (k + 1 < halvings) e_h = e_h * e_h;
  }
  return GramianValue{t, s_h};
}

std::vector<GramianValue> gramian_curve(const Matrix& b, const Matrix& s,
                                        const std::vector<double>& grid) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] <= grid[i + 1])) {
      throw InvalidInputError("gramian_curve: grid is not sorted");
    }
  }
  std::vector<GramianValue> out;
  out.reserve(grid.size());
  for (double t : grid) {
    out.push_back(gramian_at(b, s, t));
  }
  return out;
}

}  // namespace riccati
