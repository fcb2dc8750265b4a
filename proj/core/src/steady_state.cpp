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

#include "riccati/steady_state.hpp"

#include <algorithm>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "riccati/errors.hpp"
#include "riccati/spectral.hpp"

namespace riccati {

namespace {

using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Reorders a complex Schur form T = U^H M U so that the eigenvalues with
// negative real part occupy the leading diagonal positions.  Adjacent
// diagonal entries are swapped with a Givens rotation built from the 2x2
// block: for [[l1, x], [0, l2]] the rotation whose first column is the
// normalized (x, l2 - l1) eigenvector moves l2 to the front.  A bubble pass
// keeps the transformation numerically benign.
void order_schur_stable_first(ComplexMatrix& t, ComplexMatrix& u) {
  const int n = static_cast<int>(t.rows());
  auto stable = [&t](int i) { return t(i, i).real() < 0.0; };
  for (int target = 0; target < n; ++target) {
    int src = target;
    while (src < n && !stable(src)) ++src;
    if (src == n) break;  // no stable eigenvalue left
    for (int k = src; k > target; --k) {
      // Swap T(k-1,k-1) (unstable) with T(k,k) (stable).
      Eigen::JacobiRotation<Complex> rot;
      rot.makeGivens(t(k - 1, k), t(k, k) - t(k - 1, k - 1));
      t.applyOnTheLeft(k - 1, k, rot.adjoint());
      t.applyOnTheRight(k - 1, k, rot);
      u.applyOnTheRight(k - 1, k, rot);
      t(k, k - 1) = Complex(0, 0);
    }
  }
}

int count_stable(const ComplexMatrix& t) {
  int n = 0;
  for (int i = 0; i < t.rows(); ++i) {
    if (t(i, i).real() < 0.0) ++n;
  }
  return n;
}

}  // namespace

Matrix solve_lyapunov(const Matrix& b, const Matrix& s,
                      const Tolerances& tol) {
  if (b.rows() != b.cols() || s.rows() != s.cols() || b.rows() != s.rows()) {
    throw InvalidInputError("solve_lyapunov: dimension mismatch");
  }
  if (spectral_abscissa(b) >= 0.0) {
    throw InvalidInputError("solve_lyapunov: B is not Hurwitz");
  }
  const int n = static_cast<int>(b.rows());

  // B^T X + X B + S = 0 in the Schur basis of B: with B = U T U^H the
  // equation becomes T^H Y + Y T + S~ = 0, Y = U^H X U.  T^H is lower
  // triangular, so the columns of Y follow by forward substitution:
  //   (T^H + T_kk I) Y_:,k = -S~_:,k - sum_{j<k} Y_:,j T_jk.
  Eigen::ComplexSchur<Matrix> schur(b);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("solve_lyapunov: Schur decomposition failed");
  }
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const ComplexMatrix s_tilde = u.adjoint() * s * u;

  ComplexMatrix y(n, n);
  ComplexMatrix lhs = t.adjoint();
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd rhs = -s_tilde.col(k);
    for (int j = 0; j < k; ++j) {
      rhs -= y.col(j) * t(j, k);
    }
    // Forward substitution on the lower triangular (T^H + T_kk I).
    Eigen::VectorXcd col(n);
    for (int i = 0; i < n; ++i) {
      Complex diag = lhs(i, i) + t(k, k);
      if (std::abs(diag) < 1e-300) {
        throw NumericalError(
            "solve_lyapunov: singular transformed system (eigenvalue sum "
            "vanishes)");
      }
      Complex acc = rhs(i);
      for (int j = 0; j < i; ++j) {
        acc -= lhs(i, j) * col(j);
      }
      col(i) = acc / diag;
    }
    y.col(k) = col;
  }

  Matrix x = symmetrize((u * y * u.adjoint()).real());
  const double residual =
      spectral_norm(b.transpose() * x + x * b + s);
  const double scale = spectral_norm(s);
  // Relative residual; the equation is linear, so this is scale-invariant.
  if (residual > tol.lyap_tol * std::max(scale, 1e-300)) {
    throw NumericalError("solve_lyapunov: residual " +
                         std::to_string(residual) + " above tolerance");
  }
  return x;
}

CareSolution solve_care(const ModelTriple& model, const Tolerances& tol) {
  const int r = model.dim;
  if (r <= 0) {
    throw InvalidInputError("solve_care: empty model");
  }

  // Stable invariant subspace of the Hamiltonian
  //   H = [[A^T, -S], [-R, -A]].
  // If H [U1; U2] = [U1; U2] T with T stable, then P = U2 U1^{-1} satisfies
  // A P + P A^T + R - P S P = 0 and (A - P S)^T = U1 T U1^{-1} is Hurwitz.
  Matrix h(2 * r, 2 * r);
  h.topLeftCorner(r, r) = model.A.transpose();
  h.topRightCorner(r, r) = -model.S;
  h.bottomLeftCorner(r, r) = -model.R;
  h.bottomRightCorner(r, r) = -model.A;

  Eigen::ComplexSchur<Matrix> schur(h);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("solve_care: Schur decomposition failed");
  }
  ComplexMatrix t = schur.matrixT();
  ComplexMatrix u = schur.matrixU();

  if (count_stable(t) != r) {
    throw NumericalError(
        "solve_care: Hamiltonian has " + std::to_string(count_stable(t)) +
        " stable eigenvalues, expected " + std::to_string(r) +
        " (eigenvalues on the imaginary axis; hypotheses violated)");
  }
  order_schur_stable_first(t, u);

  const ComplexMatrix u1 = u.topLeftCorner(r, r);
  const ComplexMatrix u2 = u.bottomLeftCorner(r, r);

  // P = U2 U1^{-1}; exploit symmetry and solve U1^T P = U2^T instead of
  // inverting U1.
  Eigen::PartialPivLU<ComplexMatrix> lu(u1.transpose());
  if (lu.rcond() < 1e-14) {
    throw NumericalError(
        "solve_care: stable subspace basis is numerically singular "
        "(no stabilizing solution)");
  }
  Matrix p = symmetrize((lu.solve(u2.transpose())).real());

  auto refine = [&model](const Matrix& p_cur) {
    // Newton defect correction: with B = A - P S,
    // B Delta + Delta B^T = -Lambda(P) up to second order.
    const Matrix b_cur = model.A - p_cur * model.S;
    const Matrix defect = [&] {
      const Matrix ap = model.A * p_cur;
      return symmetrize(ap + ap.transpose() + model.R -
                        p_cur * model.S * p_cur);
    }();
    // solve_lyapunov(M, W) solves M^T X + X M + W = 0; M = B^T gives
    // B X + X B^T + W = 0.
    Tolerances loose;
    loose.lyap_tol = 1e-6;  // correction step; final residual checked below
    return Matrix(p_cur + solve_lyapunov(b_cur.transpose(), defect, loose));
  };

  auto residual_of = [&model](const Matrix& p_cur) {
    const Matrix ap = model.A * p_cur;
    return spectral_norm(ap + ap.transpose() + model.R -
                         p_cur * model.S * p_cur);
  };

  const double r_scale = spectral_norm(model.R);
  const double threshold = tol.care_tol * std::max(r_scale, 1e-300);
  double residual = residual_of(p);
  for (int pass = 0; pass < 2 && residual > threshold; ++pass) {
    Matrix refined = refine(p);
    const double refined_residual = residual_of(refined);
    if (refined_residual >= residual) break;  // refinement stalled
    p = refined;
    residual = refined_residual;
  }
  if (residual > threshold) {
    throw NumericalError("solve_care: residual " + std::to_string(residual) +
                         " above care_tol after refinement");
  }

  CareSolution out;
  out.P_inf = p;
  out.B = model.A - p * model.S;
  out.residual = residual;
  return out;
}

Matrix negative_fixed_point(const Matrix& p_inf, const Matrix& s_inf) {
  if (p_inf.rows() != s_inf.rows()) {
    throw InvalidInputError("negative_fixed_point: dimension mismatch");
  }
  // P_inf - S_inf^{-1} through an LDL^T solve of S_inf X = I.
  Eigen::LDLT<Matrix> ldlt(symmetrize(s_inf));
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw NumericalError(
        "negative_fixed_point: S_inf is not positive definite");
  }
  const int r = static_cast<int>(p_inf.rows());
  Matrix s_inv = ldlt.solve(Matrix::Identity(r, r));
  // LDL^T silently pseudo-inverts across tiny pivots, so a residual check is
  // the only reliable singularity detector here.
  const double residual =
      (symmetrize(s_inf) * s_inv - Matrix::Identity(r, r)).norm();
  if (!s_inv.allFinite() || residual > 1e-8 * (1.0 + s_inv.norm())) {
    throw NumericalError("negative_fixed_point: S_inf numerically singular");
  }
  return symmetrize(p_inf - s_inv);
}

SteadyState steady_state(const ModelTriple& model, const Tolerances& tol) {
  SteadyState out;
  out.model = model;

  CareSolution care;
  try {
    care = solve_care(model, tol);
  } catch (const Error& e) {
    throw NumericalError(std::string("steady_state/solve_care: ") + e.what());
  }
  out.P_inf = care.P_inf;
  out.B = care.B;
  out.care_residual = care.residual;

  if (lambda_min_sym(out.P_inf) <= 0.0) {
    throw NumericalError(
        "steady_state/solve_care: P_inf is not positive definite");
  }
  if (spectral_abscissa(out.B) >= 0.0) {
    throw NumericalError("steady_state/solve_care: B is not Hurwitz");
  }

  try {
    out.S_inf = solve_lyapunov(out.B, model.S, tol);
  } catch (const Error& e) {
    throw NumericalError(std::string("steady_state/solve_lyapunov: ") +
                         e.what());
  }
  out.lyap_residual = spectral_norm(out.B.transpose() * out.S_inf +
                                    out.S_inf * out.B + model.S);
  const double s_inf_min = lambda_min_sym(out.S_inf);
  if (s_inf_min <= 0.0) {
    throw NumericalError(
        "steady_state/solve_lyapunov: S_inf is not positive definite "
        "(observability violated)");
  }
  out.cond_S_inf = spectral_norm(out.S_inf) / s_inf_min;
  out.cond_warning = out.cond_S_inf > tol.cond_warn;

  try {
    out.P_inf_minus = negative_fixed_point(out.P_inf, out.S_inf);
  } catch (const Error& e) {
    throw NumericalError(std::string("steady_state/negative_fixed_point: ") +
                         e.what());
  }

  // The subtraction P_inf - S_inf^{-1} can lose a few digits when S_inf is
  // ill-conditioned; polish the negative root with the same Newton step as
  // the CARE solver.  Its closed loop A - P^- S is anti-stable, so the
  // correction solves a Lyapunov equation in the negated matrix.
  const double r_scale = spectral_norm(model.R);
  const double threshold = tol.care_tol * std::max(r_scale, 1e-300);
  auto drift_minus = [&] {
    const Matrix ap = model.A * out.P_inf_minus;
    return symmetrize(ap + ap.transpose() + model.R -
                      out.P_inf_minus * model.S * out.P_inf_minus);
  };
  Matrix defect = drift_minus();
  out.care_residual_minus = spectral_norm(defect);
  for (int pass = 0; pass < 2 && out.care_residual_minus > 0.01 * threshold;
       ++pass) {
    const Matrix b_minus = model.A - out.P_inf_minus * model.S;
    if (spectral_abscissa(-b_minus) >= 0.0) break;
    Tolerances loose;
    loose.lyap_tol = 1e-6;
    // B^- D + D (B^-)^T + defect = 0  <=>  (-B^-) D + D (-B^-)^T - defect = 0.
    const Matrix delta =
        solve_lyapunov((-b_minus).transpose(), -defect, loose);
    const Matrix polished = symmetrize(out.P_inf_minus + delta);
    const Matrix ap = model.A * polished;
    const double polished_residual = spectral_norm(
        ap + ap.transpose() + model.R - polished * model.S * polished);
    if (polished_residual >= out.care_residual_minus) break;
    out.P_inf_minus = polished;
    out.care_residual_minus = polished_residual;
  }
  if (out.care_residual_minus > threshold) {
    throw NumericalError(
        "steady_state/negative_fixed_point: residual " +
        std::to_string(out.care_residual_minus) + " above care_tol");
  }
  if (log_norm(out.P_inf_minus) >= 0.0) {
    throw NumericalError(
        "steady_state/negative_fixed_point: P_inf_minus is not negative "
        "definite");
  }

  // Loewner gap of the fixed-point sandwich: P_inf < S_inf^{-1}.
  Eigen::LDLT<Matrix> ldlt(out.S_inf);
  Matrix gap = symmetrize(
      ldlt.solve(Matrix::Identity(model.dim, model.dim)) - out.P_inf);
  if (lambda_min_sym(gap) <= 0.0) {
    throw NumericalError(
        "steady_state: Loewner gap S_inf^{-1} - P_inf is not positive "
        "definite");
  }

  return out;
}

}  // namespace riccati
