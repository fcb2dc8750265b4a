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

#include "riccati/random_models.hpp"

#include <string>

#include "riccati/errors.hpp"
#include "riccati/spectral.hpp"

namespace riccati {

namespace {

constexpr double kRidge = 0.1;  // R = G G^T + 0.1 I, S = H H^T + 0.1 I

}  // namespace

double uniform01(std::mt19937_64& rng) {
  // Top 53 bits of the raw stream; bit-identical on every platform, unlike
  // std::uniform_real_distribution.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Matrix random_uniform_matrix(int r, std::mt19937_64& rng) {
  Matrix m(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      m(i, j) = 2.0 * uniform01(rng) - 1.0;
    }
  }
  return m;
}

Matrix random_psd(int r, std::mt19937_64& rng) {
  const Matrix g = random_uniform_matrix(r, rng);
  return symmetrize(g * g.transpose());
}

ModelTriple random_model(int r, std::mt19937_64& rng, int max_attempts) {
  if (r <= 0) {
    throw InvalidInputError("random_model: dimension must be positive");
  }
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    ModelTriple model;
    model.dim = r;
    model.A = random_uniform_matrix(r, rng);
    const Matrix g = random_uniform_matrix(r, rng);
    const Matrix h = random_uniform_matrix(r, rng);
    model.R = symmetrize(g * g.transpose()) + kRidge * Matrix::Identity(r, r);
    model.S = symmetrize(h * h.transpose()) + kRidge * Matrix::Identity(r, r);
    if (validate(model).pass) {
      return model;
    }
  }
  throw NumericalError("random_model: " + std::to_string(max_attempts) +
                       " consecutive draws failed validation");
}

ModelTriple random_commuting_model(int r, std::mt19937_64& rng) {
  if (r <= 0) {
    throw InvalidInputError("random_commuting_model: dimension must be positive");
  }
  // S SPD and A = S^{-1/2} K S^{1/2} with K symmetric PSD give
  // S A = S^{1/2} K S^{1/2} = A^T S, symmetric PSD by construction.
  const Matrix h = random_uniform_matrix(r, rng);
  const Matrix s = symmetrize(h * h.transpose()) +
                   kRidge * Matrix::Identity(r, r);
  const Matrix k_seed = random_uniform_matrix(r, rng);
  const Matrix k = symmetrize(k_seed * k_seed.transpose());
  const Matrix g = random_uniform_matrix(r, rng);

  const Matrix s_half = sqrt_psd(s);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const Matrix s_half_inv =
      symmetrize(es.eigenvectors() *
                 es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                 es.eigenvectors().transpose());

  ModelTriple model;
  model.dim = r;
  model.A = s_half_inv * k * s_half;
  model.R = symmetrize(g * g.transpose()) + kRidge * Matrix::Identity(r, r);
  model.S = s;
  return model;
}

ModelTriple random_model_seeded(int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_model(r, rng);
}

Matrix random_psd_seeded(int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_psd(r, rng);
}

}  // namespace riccati
