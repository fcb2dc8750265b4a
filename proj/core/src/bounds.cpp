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

#include "riccati/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "riccati/errors.hpp"
#include "riccati/floquet.hpp"
#include "riccati/gramian.hpp"
#include "riccati/spectral.hpp"

namespace riccati {

double chi(const SteadyState& steady, const Matrix& q) {
  // The uniform corrector bound: 1/lambda_min(-P_inf_minus) times the
  // distance budget ||P_inf - P_inf_minus|| + ||Q - P_inf||.
  const double lmin_neg = -log_norm(steady.P_inf_minus);  // lambda_min(-P^-)
  if (lmin_neg <= 0.0) {
    throw NumericalError("chi: P_inf_minus is not negative definite");
  }
  return (spectral_norm(steady.P_inf - steady.P_inf_minus) +
          spectral_norm(q - steady.P_inf)) /
         lmin_neg;
}

double chi_delta(const SteadyState& steady, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidInputError("chi_delta: delta must be positive");
  }
  const double lmin_neg = -log_norm(steady.P_inf_minus);
  const double s_delta_min =
      lambda_min_sym(gramian_at(steady.B, steady.model.S, delta).S_t);
  if (lmin_neg <= 0.0 || s_delta_min <= 0.0) {
    throw NumericalError(
        "chi_delta: needs lambda_min(S_delta) > 0 and P_inf_minus < 0");
  }
  return 1.0 / (s_delta_min * lmin_neg);
}

CoppelEnvelope coppel_envelope(const Matrix& b, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw InvalidInputError("coppel_envelope: gamma must lie in (0,1)");
  }
  const double sigma = spectral_abscissa(b);
  if (sigma >= 0.0) {
    throw InvalidInputError("coppel_envelope: B is not Hurwitz");
  }
  const int r = static_cast<int>(b.rows());

  CoppelEnvelope out;
  out.gamma = gamma;
  out.a = 2.0 * spectral_norm(b) / std::abs(sigma);
  out.alpha = std::pow(out.a / gamma, r - 1);
  out.beta = -(1.0 - gamma) * sigma;

  // When the symmetric part of B is already negative the transient-free
  // envelope e^{t mu(B)} is available; keep whichever envelope has the
  // smaller integral alpha/beta.
  const double mu = log_norm(b);
  if (mu < 0.0 && 1.0 / (-mu) < out.alpha / out.beta) {
    out.alpha = 1.0;
    out.beta = -mu;
    out.from_log_norm = true;
  }
  return out;
}

ContractionConstants contraction_constants(const SteadyState& steady,
                                           double delta, const Matrix& q1,
                                           const Matrix& q2) {
  const double cd = chi_delta(steady, delta);
  const double s_inf_norm = spectral_norm(steady.S_inf);
  ContractionConstants out;
  out.chi_phi_delta = cd * cd;
  out.chi_E_delta = s_inf_norm * out.chi_phi_delta;
  out.chi_phi_pair = chi(steady, q1) * chi(steady, q2);
  out.chi_E_pair = s_inf_norm * out.chi_phi_pair;
  return out;
}

BoundsReport verify_envelopes(const SteadyState& steady, const Matrix& q1,
                              const std::optional<Matrix>& q2,
                              const std::vector<double>& t_grid, double delta,
                              const Tolerances& tol) {
  if (t_grid.empty()) {
    throw InvalidInputError("verify_envelopes: empty time grid");
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || !std::isfinite(t_grid[i])) {
      throw InvalidInputError("verify_envelopes: grid times must be positive");
    }
    if (i > 0 && !(t_grid[i - 1] <= t_grid[i])) {
      throw InvalidInputError("verify_envelopes: grid is not sorted");
    }
  }

  BoundsReport report;
  report.delta = delta;
  report.chi_Q = chi(steady, q1);
  report.chi_delta = chi_delta(steady, delta);
  report.coppel = coppel_envelope(steady.B);
  report.constants =
      contraction_constants(steady, delta, q1, q2 ? *q2 : q1);

  const double slack = 1.0 + tol.check_tol;
  double eig_min = std::numeric_limits<double>::infinity();
  double eig_max = -std::numeric_limits<double>::infinity();
  const double q_gap = q2 ? spectral_norm(q1 - *q2) : 0.0;

  auto add = [&report, slack](double t, const std::string& name,
                              double observed, double bound) {
    report.envelope_checks.push_back(
        {t, name, observed, bound, observed <= bound * slack});
  };

  for (double t : t_grid) {
    const FloquetFactor f1 = c_matrix(steady, q1, t, tol);
    const double exp_norm = spectral_norm(f1.exp_tB);
    const double e_norm = spectral_norm(f1.E);
    const double c_inv_norm = spectral_norm(f1.C_inv);

    add(t, "E_vs_chi", e_norm, report.chi_Q * exp_norm);
    add(t, "Cinv_vs_chi", c_inv_norm, report.chi_Q);
    if (t >= delta) {
      add(t, "E_vs_chi_delta", e_norm, report.chi_delta * exp_norm);
      add(t, "Cinv_vs_chi_delta", c_inv_norm, report.chi_delta);
    }
    add(t, "coppel_vs_exp_tB", exp_norm,
        report.coppel.alpha * std::exp(-report.coppel.beta * t));

    const Matrix phi1 = flow(steady, q1, t, tol);
    Eigen::SelfAdjointEigenSolver<Matrix> es(phi1, Eigen::EigenvaluesOnly);
    eig_min = std::min(eig_min, es.eigenvalues().minCoeff());
    eig_max = std::max(eig_max, es.eigenvalues().maxCoeff());

    if (q2) {
      const Matrix phi2 = flow(steady, *q2, t, tol);
      add(t, "flow_diff_vs_chi_phi", spectral_norm(phi1 - phi2),
          report.constants.chi_phi_pair * exp_norm * exp_norm * q_gap);
      const Matrix e2 = transition(steady, *q2, t, tol);
      add(t, "trans_diff_vs_chi_E", spectral_norm(f1.E - e2),
          report.constants.chi_E_pair * exp_norm * q_gap);
    }
  }

  report.traj_eig_min = eig_min;
  report.traj_eig_max = eig_max;
  report.all_pass = true;
  for (const auto& check : report.envelope_checks) {
    report.all_pass = report.all_pass && check.pass;
  }
  return report;
}

QuadraticGrowthResult quadratic_growth_check(
    const SteadyState& steady,
    const std::vector<std::pair<Matrix, Matrix>>& pairs) {
  if (pairs.empty()) {
    throw InvalidInputError("quadratic_growth_check: empty sample");
  }
  const double s_inf_norm = spectral_norm(steady.S_inf);

  QuadraticGrowthResult out;
  std::vector<double> ratios;
  ratios.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    const double chi_phi = chi(steady, a) * chi(steady, b);
    const double worst = std::max(chi_phi, s_inf_norm * chi_phi);
    const double denom =
        1.0 + std::pow(spectral_norm(a), 2) + std::pow(spectral_norm(b), 2);
    ratios.push_back(worst / denom);
  }
  out.c = *std::max_element(ratios.begin(), ratios.end());
  out.margins.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double denom = 1.0 +
                         std::pow(spectral_norm(pairs[i].first), 2) +
                         std::pow(spectral_norm(pairs[i].second), 2);
    out.margins.push_back(out.c * denom - ratios[i] * denom);
  }
  out.quadratic = true;
  for (double m : out.margins) {
    out.quadratic = out.quadratic && m >= -1e-12;
  }
  return out;
}

std::string to_json(const BoundsReport& report, bool pretty) {
  nlohmann::json j;
  j["chi_Q"] = report.chi_Q;
  j["delta"] = report.delta;
  j["chi_delta"] = report.chi_delta;
  j["coppel"] = {
      {"a", report.coppel.a},         {"alpha", report.coppel.alpha},
      {"beta", report.coppel.beta},   {"gamma", report.coppel.gamma},
      {"from_log_norm", report.coppel.from_log_norm},
  };
  j["chi_phi_delta"] = report.constants.chi_phi_delta;
  j["chi_E_delta"] = report.constants.chi_E_delta;
  j["chi_phi_pair"] = report.constants.chi_phi_pair;
  j["chi_E_pair"] = report.constants.chi_E_pair;
  j["traj_eig_min"] = report.traj_eig_min;
  j["traj_eig_max"] = report.traj_eig_max;
  j["all_pass"] = report.all_pass;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& check : report.envelope_checks) {
    checks.push_back({{"t", check.t},
                      {"name", check.name},
                      {"observed", check.observed},
                      {"bound", check.bound},
                      {"pass", check.pass}});
  }
  j["envelope_checks"] = checks;
  return pretty ? j.dump(2) : j.dump();
}

}  // namespace riccati
