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

#include "riccati/special_case.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "riccati/errors.hpp"
#include "riccati/spectral.hpp"

namespace riccati {

CommutingCheck commuting_check(const ModelTriple& model,
                               const Tolerances& tol) {
  CommutingCheck out;
  auto add = [&out](const std::string& name, bool pass, double witness,
                    const std::string& detail) {
    out.witnesses.push_back({name, pass, witness, detail});
  };

  const Matrix sa = model.S * model.A;
  const double s_min = lambda_min_sym(model.S);
  add("S_positive_definite", s_min > 0.0, s_min, "lambda_min(S) > 0");

  const double sa_scale = 1.0 + spectral_norm(sa);
  const double sa_asym = (sa - model.A.transpose() * model.S)
                             .cwiseAbs()
                             .maxCoeff();
  add("SA_symmetric", sa_asym <= tol.sym_tol * sa_scale, sa_asym,
      "||S A - A^T S|| vs sym_tol*(1+||SA||)");

  const double sa_min = lambda_min_sym(sa);
  add("SA_psd", sa_min >= -tol.psd_tol * sa_scale, sa_min,
      "lambda_min((SA + A^T S)/2)");

  out.accepted = true;
  for (const auto& w : out.witnesses) out.accepted = out.accepted && w.pass;
  if (!out.accepted) return out;

  CommutingModel cm;
  cm.model = model;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(model.S));
  if (es.info() != Eigen::Success) {
    throw NumericalError("commuting_check: eigen decomposition of S failed");
  }
  const Vector lambda = es.eigenvalues();
  cm.S_half = symmetrize(es.eigenvectors() *
                         lambda.cwiseSqrt().asDiagonal() *
                         es.eigenvectors().transpose());
  cm.S_half_inv = symmetrize(es.eigenvectors() *
                             lambda.cwiseSqrt().cwiseInverse().asDiagonal() *
                             es.eigenvectors().transpose());
  out.certified = std::move(cm);
  return out;
}

CommutingFixedPoints closed_fixed_points(const CommutingModel& cm,
                                         const Tolerances& tol) {
  const ModelTriple& model = cm.model;
  // Transform to the symmetric picture: A_bar = S^1/2 A S^-1/2 is symmetric
  // under the certified hypotheses and A_bar^2 + R_bar is symmetric PSD, so
  // its principal root is available; transforming back gives the root of
  // A^2 + R S with positive-real-part eigenvalues.
  const Matrix a_bar = cm.S_half * model.A * cm.S_half_inv;
  const Matrix r_bar = cm.S_half * model.R * cm.S_half;
  const Matrix root_bar =
      sqrt_psd(symmetrize(a_bar * a_bar + r_bar), tol);
  const Matrix w = cm.S_half_inv * root_bar * cm.S_half;

  CommutingFixedPoints out;
  out.W = w;
  out.B = -w;
  // S^{-1} applied as S^{-1/2} * S^{-1/2} against the cached factors.
  const Matrix s_inv = cm.S_half_inv * cm.S_half_inv;
  out.P_inf = symmetrize((model.A + w) * s_inv);
  out.P_inf_minus = symmetrize((model.A - w) * s_inv);
  return out;
}

Matrix closed_transition(const CommutingModel& cm, const Matrix& q, double t,
                         const Tolerances& tol) {
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidInputError("closed_transition: time must be finite and >= 0");
  }
  if (q.rows() != cm.model.dim || q.cols() != cm.model.dim) {
    throw InvalidInputError("closed_transition: Q has wrong dimensions");
  }
  const int r = cm.model.dim;
  const CommutingFixedPoints fp = closed_fixed_points(cm, tol);

  const Matrix exp_tb = expm(fp.B, t);
  const Matrix exp_2tb = expm(fp.B, 2.0 * t);
  const Matrix d = fp.P_inf - fp.P_inf_minus;
  // The deviation term sees the adjoint propagator: S e^{2tB} S^{-1} =
  // e^{2tB^T} because S B = B^T S, and the S^{1/2}-frame derivation lands on
  //   bracket = e^{2tB} D + (Q - P_inf_minus)(I - e^{2tB^T}).
  const Matrix bracket =
      exp_2tb * d +
      (q - fp.P_inf_minus) * (Matrix::Identity(r, r) - exp_2tb.transpose());

  Eigen::PartialPivLU<Matrix> lu(bracket);
  if (lu.rcond() < 1e-14) {
    throw NumericalError(
        "closed_transition: bracket numerically singular at t = " +
        std::to_string(t));
  }
  // E_t(Q) = e^{tB} D bracket^{-1}; solve bracket^T X^T = (e^{tB} D)^T.
  const Matrix numer = exp_tb * d;
  Eigen::PartialPivLU<Matrix> lu_t(bracket.transpose());
  return lu_t.solve(numer.transpose()).transpose();
}

Matrix closed_gramian(const CommutingModel& cm, double t,
                      const Tolerances& tol) {
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidInputError("closed_gramian: time must be finite and >= 0");
  }
  const int r = cm.model.dim;
  const CommutingFixedPoints fp = closed_fixed_points(cm, tol);
  // S_t = -1/2 S B^{-1} (I - e^{2tB}); B = -W is invertible (W SPD-similar).
  const Matrix exp_2tb = expm(fp.B, 2.0 * t);
  Eigen::PartialPivLU<Matrix> lu(fp.B);
  const Matrix b_inv_term = lu.solve(Matrix::Identity(r, r) - exp_2tb);
  return symmetrize(-0.5 * cm.model.S * b_inv_term);
}

StructuralIdentities structural_identities(const CommutingModel& cm,
                                           const Tolerances& tol) {
  const CommutingFixedPoints fp = closed_fixed_points(cm, tol);
  const Matrix d = fp.P_inf - fp.P_inf_minus;
  const Matrix s_inv = cm.S_half_inv * cm.S_half_inv;

  StructuralIdentities out;
  // P_inf - P_inf_minus = -2 B S^{-1}  and  B = -1/2 (P_inf - P_inf_minus) S.
  out.gap_residual = spectral_norm(d + 2.0 * fp.B * s_inv);
  out.b_residual = spectral_norm(fp.B + 0.5 * d * cm.model.S);
  const double scale_gap = 1.0 + spectral_norm(d);
  const double scale_b = 1.0 + spectral_norm(fp.B);
  out.pass = out.gap_residual <= 1e-9 * scale_gap &&
             out.b_residual <= 1e-9 * scale_b;
  return out;
}

}  // namespace riccati
