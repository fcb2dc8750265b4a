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

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "riccati/bounds.hpp"
#include "riccati/errors.hpp"
#include "riccati/floquet.hpp"
#include "riccati/random_models.hpp"
#include "riccati/spectral.hpp"
#include "riccati/steady_state.hpp"
#include "test_helpers.hpp"

using riccati::BoundsReport;
using riccati::CoppelEnvelope;
using riccati::InvalidInputError;
using riccati::Matrix;
using riccati::ModelTriple;
using riccati::SteadyState;
using riccati_test::mat;
using riccati_test::scalar_model;

namespace {

const SteadyState& scalar_steady() {
  static const SteadyState ss = riccati::steady_state(scalar_model());
  return ss;
}

}  // namespace

TEST_CASE("chi on the scalar reference problem") {
  const SteadyState& ss = scalar_steady();
  // (|P - P^-| + |Q - P|) / |P^-| = (2 + 1) / 1.
  CHECK(riccati::chi(ss, mat({{0.0}})) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(riccati::chi(ss, ss.P_inf) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(riccati::chi(ss, mat({{3.0}})) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("chi on the isotropic 2x2 model") {
  const SteadyState ss = riccati::steady_state(riccati_test::make_model(
      Matrix::Zero(2, 2), Matrix::Identity(2, 2), Matrix::Identity(2, 2)));
  CHECK(riccati::chi(ss, Matrix::Zero(2, 2)) ==
        doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("chi bounds the corrector inverse uniformly in time") {
  std::mt19937_64 rng(107);
  const ModelTriple m = riccati::random_model(4, rng);
  const SteadyState ss = riccati::steady_state(m);
  const Matrix q = riccati::random_psd(4, rng);
  const double bound = riccati::chi(ss, q);
  for (double t : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 40.0}) {
    const double observed =
        riccati::spectral_norm(riccati::c_matrix(ss, q, t).C_inv);
    CHECK(observed <= bound * (1.0 + 1e-9));
  }
}

TEST_CASE("chi_delta scalar values and monotonicity") {
  const SteadyState& ss = scalar_steady();
  // 1 / (S_delta * lambda_min(-P^-)) with S_1 = (1 - e^{-2}) / 2.
  CHECK(riccati::chi_delta(ss, 1.0) ==
        doctest::Approx(1.0 / 0.43233235838169365).epsilon(1e-12));
  // Long delta: S_delta -> S_inf = 1/2, so the bound approaches 2.
  CHECK(riccati::chi_delta(ss, 60.0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(riccati::chi_delta(ss, 0.5) >= riccati::chi_delta(ss, 1.0));
  CHECK(riccati::chi_delta(ss, 1.0) >= riccati::chi_delta(ss, 2.0));
  CHECK_THROWS_AS(riccati::chi_delta(ss, 0.0), InvalidInputError);
  CHECK_THROWS_AS(riccati::chi_delta(ss, -1.0), InvalidInputError);
}

TEST_CASE("coppel_envelope selects the sharper candidate") {
  // Scalar B = -1: log norm is negative, so (1, 1) beats (1, 0.5).
  const CoppelEnvelope scalar = riccati::coppel_envelope(mat({{-1.0}}));
  CHECK(scalar.alpha == doctest::Approx(1.0));
  CHECK(scalar.beta == doctest::Approx(1.0));
  CHECK(scalar.from_log_norm);

  // Isotropic 2x2: raw candidate (alpha, beta) = (4, 0.5) loses to (1, 1).
  const CoppelEnvelope iso =
      riccati::coppel_envelope(-Matrix::Identity(2, 2));
  CHECK(iso.a == doctest::Approx(2.0));
  CHECK(iso.alpha == doctest::Approx(1.0));
  CHECK(iso.beta == doctest::Approx(1.0));
  CHECK(iso.from_log_norm);

  // Heavily non-normal B: positive log norm forces the generic candidate.
  const CoppelEnvelope skew =
      riccati::coppel_envelope(mat({{-1.0, 10.0}, {0.0, -1.0}}));
  CHECK_FALSE(skew.from_log_norm);
  CHECK(skew.beta == doctest::Approx(0.5));
  CHECK(skew.alpha > 1.0);

  CHECK_THROWS_AS(riccati::coppel_envelope(mat({{1.0}})), InvalidInputError);
  CHECK_THROWS_AS(riccati::coppel_envelope(mat({{-1.0}}), 1.5),
                  InvalidInputError);
  CHECK_THROWS_AS(riccati::coppel_envelope(mat({{-1.0}}), 0.0),
                  InvalidInputError);
}

TEST_CASE("selected envelope dominates the exponential pointwise") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix b = riccati::random_uniform_matrix(4, rng);
    b -= (riccati::spectral_abscissa(b) + 0.3) * Matrix::Identity(4, 4);
    const CoppelEnvelope env = riccati::coppel_envelope(b);
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double observed = riccati::spectral_norm(riccati::expm(b, t));
      CHECK(observed <=
            env.alpha * std::exp(-env.beta * t) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("contraction constants on the scalar problem") {
  const SteadyState& ss = scalar_steady();
  const riccati::ContractionConstants cc = riccati::contraction_constants(
      ss, 1.0, mat({{0.0}}), mat({{0.0}}));
  const double cd = riccati::chi_delta(ss, 1.0);
  CHECK(cc.chi_phi_delta == doctest::Approx(cd * cd).epsilon(1e-12));
  CHECK(cc.chi_E_delta == doctest::Approx(0.5 * cd * cd).epsilon(1e-12));
  CHECK(cc.chi_phi_pair == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(cc.chi_E_pair == doctest::Approx(4.5).epsilon(1e-10));

  const riccati::ContractionConstants at_fixed =
      riccati::contraction_constants(ss, 1.0, ss.P_inf, ss.P_inf);
  CHECK(at_fixed.chi_phi_pair == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("verify_envelopes passes on the scalar reference problem") {
  const SteadyState& ss = scalar_steady();
  const std::vector<double> grid = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
  const BoundsReport report = riccati::verify_envelopes(
      ss, mat({{0.0}}), std::nullopt, grid, 0.5);
  CHECK(report.all_pass);
  CHECK(report.chi_Q == doctest::Approx(3.0));

  bool found = false;
  for (const auto& check : report.envelope_checks) {
    if (check.name == "E_vs_chi" && check.t == 1.0) {
      found = true;
      CHECK(check.observed == doctest::Approx(1.0 / std::cosh(1.0)));
      CHECK(check.bound == doctest::Approx(3.0 * std::exp(-1.0)));
      CHECK(check.pass);
    }
  }
  CHECK(found);
}

TEST_CASE("verify_envelopes from the fixed point saturates at 1/chi") {
  // E_t(P_inf) = e^{tB} exactly, so observed / bound = 1 / chi(P_inf).
  const SteadyState& ss = scalar_steady();
  const BoundsReport report = riccati::verify_envelopes(
      ss, ss.P_inf, std::nullopt, {1.0, 3.0}, 1.0);
  for (const auto& check : report.envelope_checks) {
    if (check.name == "E_vs_chi") {
      CHECK(check.observed / check.bound == doctest::Approx(0.5));
    }
  }
  CHECK(report.all_pass);
}

TEST_CASE("verify_envelopes covers the two-argument estimates") {
  std::mt19937_64 rng(113);
  const ModelTriple m = riccati::random_model(4, rng);
  const SteadyState ss = riccati::steady_state(m);
  const Matrix q1 = riccati::random_psd(4, rng);
  const Matrix q2 = riccati::random_psd(4, rng);
  const std::vector<double> grid = {0.1, 0.4, 1.0, 2.5, 6.0};
  const BoundsReport report =
      riccati::verify_envelopes(ss, q1, q2, grid, 0.4);
  CHECK(report.all_pass);

  bool saw_pair_checks = false;
  for (const auto& check : report.envelope_checks) {
    if (check.name == "flow_diff_vs_chi_phi" ||
        check.name == "trans_diff_vs_chi_E") {
      saw_pair_checks = true;
      CHECK(check.pass);
    }
  }
  CHECK(saw_pair_checks);

  // Without a second argument the pair checks are absent.
  const BoundsReport single =
      riccati::verify_envelopes(ss, q1, std::nullopt, grid, 0.4);
  for (const auto& check : single.envelope_checks) {
    CHECK(check.name != "flow_diff_vs_chi_phi");
    CHECK(check.name != "trans_diff_vs_chi_E");
  }
}

TEST_CASE("verify_envelopes validates its grid") {
  const SteadyState& ss = scalar_steady();
  CHECK_THROWS_AS(riccati::verify_envelopes(ss, mat({{0.0}}), std::nullopt,
                                            {}, 0.5),
                  InvalidInputError);
  CHECK_THROWS_AS(riccati::verify_envelopes(ss, mat({{0.0}}), std::nullopt,
                                            {-1.0, 1.0}, 0.5),
                  InvalidInputError);
  CHECK_THROWS_AS(riccati::verify_envelopes(ss, mat({{0.0}}), std::nullopt,
                                            {2.0, 1.0}, 0.5),
                  InvalidInputError);
}

TEST_CASE("quadratic growth fit on scalar samples") {
  const SteadyState& ss = scalar_steady();

  // Single pair at the fixed point: max(4, 2) / 3 = 4/3.
  const riccati::QuadraticGrowthResult single =
      riccati::quadratic_growth_check(ss, {{ss.P_inf, ss.P_inf}});
  CHECK(single.c == doctest::Approx(4.0 / 3.0).epsilon(1e-10));
  CHECK(single.quadratic);
  REQUIRE(single.margins.size() == 1);
  CHECK(single.margins[0] == doctest::Approx(0.0).epsilon(1e-9));

  std::vector<std::pair<Matrix, Matrix>> pairs;
  for (double q : {0.0, 1.0, 2.0, 4.0}) {
    pairs.push_back({mat({{q}}), mat({{q}})});
  }
  const riccati::QuadraticGrowthResult fit =
      riccati::quadratic_growth_check(ss, pairs);
  CHECK(fit.quadratic);
  CHECK(fit.c > 0.0);
  for (double margin : fit.margins) CHECK(margin >= -1e-9);

  CHECK_THROWS_AS(riccati::quadratic_growth_check(ss, {}),
                  InvalidInputError);
}

TEST_CASE("bounds report serializes to parseable JSON") {
  const SteadyState& ss = scalar_steady();
  const BoundsReport report = riccati::verify_envelopes(
      ss, mat({{0.0}}), mat({{2.0}}), {0.5, 1.0, 2.0}, 0.5);
  const std::string compact = riccati::to_json(report, false);
  const std::string pretty = riccati::to_json(report, true);
  CHECK(pretty.size() > compact.size());

  const nlohmann::json doc = nlohmann::json::parse(compact);
  CHECK(doc.at("chi_Q").get<double>() == doctest::Approx(report.chi_Q));
  CHECK(doc.at("all_pass").get<bool>() == report.all_pass);
  CHECK(doc.at("coppel").contains("alpha"));
  CHECK(doc.at("envelope_checks").is_array());
  CHECK(doc.at("envelope_checks").size() == report.envelope_checks.size());
}
