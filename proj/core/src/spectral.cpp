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

#include "riccati/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "riccati/errors.hpp"

namespace riccati {

namespace {

void require_finite(const Matrix& m, const char* op) {
  if (!m.allFinite()) {
    throw InvalidInputError(std::string(op) + ": matrix has non-finite entries");
  }
  if (m.rows() != m.cols()) {
    throw InvalidInputError(std::string(op) + ": matrix is not square");
  }
}

}  // namespace

double spectral_norm(const Matrix& m) {
  require_finite(m, "spectral_norm");
  if (m.rows() == 0) return 0.0;
  if (m.rows() == 1) return std::abs(m(0, 0));
  return m.jacobiSvd().singularValues()(0);
}

double log_norm(const Matrix& m) {
  require_finite(m, "log_norm");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("log_norm: eigen decomposition failed");
  }
  return es.eigenvalues().maxCoeff();
}

double lambda_min_sym(const Matrix& m) {
  require_finite(m, "lambda_min_sym");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("lambda_min_sym: eigen decomposition failed");
  }
  return es.eigenvalues().minCoeff();
}

double spectral_abscissa(const Matrix& m) {
  require_finite(m, "spectral_abscissa");
  Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("spectral_abscissa: eigen decomposition failed");
  }
  return es.eigenvalues().real().maxCoeff();
}

SpectralSummary spectral_summary(const Matrix& m) {
  return SpectralSummary{
      spectral_norm(m),
      log_norm(m),
      spectral_abscissa(m),
      lambda_min_sym(m),
  };
}

Matrix expm(const Matrix& m, double t) {
  require_finite(m, "expm");
  if (!std::isfinite(t)) {
    throw InvalidInputError("expm: non-finite time");
  }
  Matrix result = (t * m).exp();  // scaling-and-squaring Pade
  if (!result.allFinite()) {
    throw NumericalError("expm: overflow (t * ||M|| too large)");
  }
  return result;
}

Matrix sqrt_psd(const Matrix& m, const Tolerances& tol) {
  require_finite(m, "sqrt_psd");
  const double scale = 1.0 + spectral_norm(m);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol.sym_tol * scale) {
    throw InvalidInputError("sqrt_psd: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m));
  if (es.info() != Eigen::Success) {
    throw NumericalError("sqrt_psd: eigen decomposition failed");
  }
  Vector lambda = es.eigenvalues();
  if (lambda.minCoeff() < -tol.psd_tol * scale) {
    throw InvalidInputError("sqrt_psd: matrix is indefinite beyond tolerance");
  }
  // Principal root, deterministically: clamp round-off negatives to zero.
  Vector root = lambda.cwiseMax(0.0).cwiseSqrt();
  return symmetrize(es.eigenvectors() * root.asDiagonal() *
                    es.eigenvectors().transpose());
}

}  // namespace riccati
