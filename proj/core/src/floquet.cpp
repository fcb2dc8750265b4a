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

#include "riccati/floquet.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "riccati/errors.hpp"
#include "riccati/gramian.hpp"
#include "riccati/spectral.hpp"

namespace riccati {

namespace {

void require_time(double t, const char* op) {
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidInputError(std::string(op) + ": time must be finite and >= 0");
  }
}

void require_symmetric_dim(const SteadyState& steady, const Matrix& q,
                           const Tolerances& tol, const char* op) {
  if (q.rows() != steady.model.dim || q.cols() != steady.model.dim) {
    throw InvalidInputError(std::string(op) + ": Q has wrong dimensions");
  }
  if (!q.allFinite()) {
    throw InvalidInputError(std::string(op) + ": Q has non-finite entries");
  }
  const double scale = 1.0 + q.cwiseAbs().maxCoeff();
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > tol.sym_tol * scale) {
    throw InvalidInputError(std::string(op) + ": Q is not symmetric");
  }
}

double one_norm(const Matrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Clamp round-off negatives of a symmetric matrix that is PSD in exact
// arithmetic; anything below the tolerance band is a real failure.
Matrix clamp_psd(Matrix phi, double t, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(phi);
  const double lmin = es.eigenvalues().minCoeff();
  const double scale = 1.0 + es.eigenvalues().cwiseAbs().maxCoeff();
  if (lmin < -tol.psd_tol * scale) {
    throw NumericalError("flow: output lost positive semi-definiteness "
                         "(lambda_min " +
                         std::to_string(lmin) + " at t=" + std::to_string(t) +
                         ")");
  }
  if (lmin < 0.0) {
    phi = symmetrize(es.eigenvectors() *
                     es.eigenvalues().cwiseMax(0.0).asDiagonal() *
                     es.eigenvectors().transpose());
  }
  return phi;
}

}  // namespace

FloquetFactor c_matrix(const SteadyState& steady, const Matrix& q, double t,
                       const Tolerances& tol) {
  require_time(t, "c_matrix");
  require_symmetric_dim(steady, q, tol, "c_matrix");
  const int r = steady.model.dim;

  FloquetFactor out;
  out.t = t;
  out.Q = q;
  out.exp_tB = expm(steady.B, t);
  // The rearranged corrector I + (Q - P_inf) S_t: unlike the resolvent form
  // it needs no S_t^{-1} and is exact at t = 0 (C_0 = I).
  const Matrix s_t = gramian_at(steady.B, steady.model.S, t).S_t;
  out.C = Matrix::Identity(r, r) + (q - steady.P_inf) * s_t;

  Eigen::PartialPivLU<Matrix> lu(out.C);
  if (lu.rcond() < 1e-14) {
    throw NumericalError(
        "c_matrix: C_t(Q) is numerically singular (rcond below 1e-14) at t=" +
        std::to_string(t));
  }
  Matrix c_inv = lu.solve(Matrix::Identity(r, r));
  // One refinement pass sharpens the inverse when C is ill-conditioned.
  c_inv += lu.solve(Matrix::Identity(r, r) - out.C * c_inv);

  out.cond_C = one_norm(out.C) * one_norm(c_inv);
  const double residual = one_norm(out.C * c_inv - Matrix::Identity(r, r));
  if (residual > 1e-10 * out.cond_C) {
    throw NumericalError("c_matrix: inverse residual " +
                         std::to_string(residual) +
                         " exceeds 1e-10 * cond(C); C effectively singular");
  }
  out.C_inv = c_inv;
  out.E = out.exp_tB * c_inv;
  return out;
}

Matrix transition(const SteadyState& steady, const Matrix& q, double t,
                  const Tolerances& tol) {
  return c_matrix(steady, q, t, tol).E;
}

Matrix flow(const SteadyState& steady, const Matrix& q, double t,
            const Tolerances& tol) {
  FloquetFactor factor = c_matrix(steady, q, t, tol);
  const Matrix phi = symmetrize(steady.P_inf + factor.exp_tB * factor.C_inv *
                                                   (q - steady.P_inf) *
                                                   factor.exp_tB.transpose());
  // The flow preserves positive semi-definiteness; round-off may push an
  // eigenvalue slightly negative.  Clamp inside the tolerance band, treat
  // anything worse as a genuine failure.
  return clamp_psd(phi, t, tol);
}

std::pair<Trajectory, Trajectory> flow_transition_curve(
    const SteadyState& steady, const Matrix& q, const std::vector<double>& grid,
    const Tolerances& tol) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
      throw InvalidInputError(
          "flow_transition_curve: grid times must be finite and >= 0");
    }
    if (i > 0 && !(grid[i - 1] <= grid[i])) {
      throw InvalidInputError("flow_transition_curve: grid is not sorted");
    }
  }
  require_symmetric_dim(steady, q, tol, "flow_transition_curve");
  const int r = steady.model.dim;
  const Matrix dq = q - steady.P_inf;
  const Matrix& s_inf = steady.S_inf;

  Trajectory phi_traj;
  Trajectory e_traj;
  phi_traj.method = e_traj.method = "closed_form";
  phi_traj.times = e_traj.times = grid;
  phi_traj.values.reserve(grid.size());
  e_traj.values.reserve(grid.size());

  for (double t : grid) {
    const Matrix exp_tb = expm(steady.B, t);
    // S_t from the already-computed exponential: exact because
    // d/dt [e^{tB^T} S_inf e^{tB}] = -e^{tB^T} S e^{tB}.
    const Matrix s_t =
        symmetrize(s_inf - exp_tb.transpose() * s_inf * exp_tb);
    const Matrix c = Matrix::Identity(r, r) + dq * s_t;
    Eigen::PartialPivLU<Matrix> lu(c);
    if (lu.rcond() < 1e-14) {
      throw NumericalError(
          "flow_transition_curve: C_t(Q) numerically singular at t=" +
          std::to_string(t));
    }
    Matrix c_inv = lu.solve(Matrix::Identity(r, r));
    c_inv += lu.solve(Matrix::Identity(r, r) - c * c_inv);

    const Matrix e = exp_tb * c_inv;
    Matrix phi = symmetrize(steady.P_inf + e * dq * exp_tb.transpose());
    // Cheap definiteness gate; fall back to the full clamp only on demand.
    Eigen::LDLT<Matrix> gate(phi);
    if (!gate.isPositive()) {
      phi = clamp_psd(phi, t, tol);
    }
    phi_traj.values.push_back(std::move(phi));
    e_traj.values.push_back(e);
  }
  return {std::move(phi_traj), std::move(e_traj)};
}

Trajectory flow_curve(const SteadyState& steady, const Matrix& q,
                      const std::vector<double>& grid,
                      const Tolerances& tol) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] <= grid[i + 1])) {
      throw InvalidInputError("flow_curve: grid is not sorted");
    }
  }
  return flow_transition_curve(steady, q, grid, tol).first;
}

Matrix transition_two_time(const SteadyState& steady, const Matrix& q,
                           double s, double t, const Tolerances& tol) {
  if (!std::isfinite(s) || !std::isfinite(t) || s < 0.0 || s > t) {
    throw InvalidInputError(
        "transition_two_time: times must satisfy 0 <= s <= t");
  }
  if (s == t) {
    return Matrix::Identity(steady.model.dim, steady.model.dim);
  }
  // Time invariance: E_{s,t}(Q) = E_{t-s}(phi_s(Q)).
  const Matrix phi_s = flow(steady, q, s, tol);
  return transition(steady, phi_s, t - s, tol);
}

Matrix flow_difference(const SteadyState& steady, const Matrix& q1,
                       const Matrix& q2, double t, const Tolerances& tol) {
  FloquetFactor f1 = c_matrix(steady, q1, t, tol);
  FloquetFactor f2 = c_matrix(steady, q2, t, tol);
  // phi_t(Q1) - phi_t(Q2) = E_t(Q1) (Q1 - Q2) E_t(Q2)^T.
  return f1.E * (q1 - q2) * f2.E.transpose();
}

Matrix transition_difference(const SteadyState& steady, const Matrix& q1,
                             const Matrix& q2, double t,
                             const Tolerances& tol) {
  FloquetFactor f1 = c_matrix(steady, q1, t, tol);
  FloquetFactor f2 = c_matrix(steady, q2, t, tol);
  const Matrix s_t = gramian_at(steady.B, steady.model.S, t).S_t;
  // E_t(Q1) - E_t(Q2) = e^{tB} C_t(Q1)^{-1} (Q2 - Q1) S_t C_t(Q2)^{-1}.
  return f1.exp_tB * f1.C_inv * (q2 - q1) * s_t * f2.C_inv;
}

Matrix frechet_derivative(const SteadyState& steady, const Matrix& q,
                          const Matrix& h, double t, const Tolerances& tol) {
  if (h.rows() != steady.model.dim || h.cols() != steady.model.dim) {
    throw InvalidInputError("frechet_derivative: H has wrong dimensions");
  }
  const double scale = 1.0 + h.cwiseAbs().maxCoeff();
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > tol.sym_tol * scale) {
    throw InvalidInputError("frechet_derivative: H is not symmetric");
  }
  const Matrix e = transition(steady, q, t, tol);
  return symmetrize(e * h * e.transpose());
}

}  // namespace riccati
