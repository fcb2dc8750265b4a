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
#include <limits>

#include <doctest.h>

#include "riccati/errors.hpp"
#include "riccati/random_models.hpp"
#include "riccati/spectral.hpp"
#include "test_helpers.hpp"

using riccati::InvalidInputError;
using riccati::Matrix;
using riccati::NumericalError;
using riccati_test::mat;
using riccati_test::max_abs_diff;

namespace {

// Power-series exponential, independent of the production path.
Matrix expm_series(const Matrix& m, double t, int terms = 40) {
  Matrix sum = Matrix::Identity(m.rows(), m.cols());
  Matrix term = sum;
  for (int k = 1; k <= terms; ++k) {
    term = (term * m) * (t / k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("spectral_norm on matrices with known singular values") {
  CHECK(riccati::spectral_norm(Matrix::Identity(2, 2)) == doctest::Approx(1.0));
  CHECK(riccati::spectral_norm(mat({{3.0, 0.0}, {0.0, -4.0}})) ==
        doctest::Approx(4.0));
  // Nilpotent shift: singular values are {1, 0}.
  CHECK(riccati::spectral_norm(mat({{0.0, 1.0}, {0.0, 0.0}})) ==
        doctest::Approx(1.0));
  CHECK(riccati::spectral_norm(mat({{-2.5}})) == doctest::Approx(2.5));
}

TEST_CASE("log norm and spectral abscissa on reference matrices") {
  const Matrix diag = mat({{-1.0, 0.0}, {0.0, -2.0}});
  CHECK(riccati::log_norm(diag) == doctest::Approx(-1.0));
  CHECK(riccati::spectral_abscissa(diag) == doctest::Approx(-1.0));

  // Nilpotent shift: eigenvalues all zero, symmetric part has eigenvalues
  // +-1/2 (roots of x^2 - 1/4).
  const Matrix shift = mat({{0.0, 1.0}, {0.0, 0.0}});
  CHECK(riccati::spectral_abscissa(shift) == doctest::Approx(0.0));
  CHECK(riccati::log_norm(shift) == doctest::Approx(0.5));

  // Rotation generator: skew-symmetric, so the log norm vanishes.
  const Matrix rot = mat({{0.0, -1.0}, {1.0, 0.0}});
  CHECK(riccati::spectral_abscissa(rot) == doctest::Approx(0.0));
  CHECK(riccati::log_norm(rot) == doctest::Approx(0.0));
}

TEST_CASE("spectral abscissa never exceeds the log norm") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = riccati::random_uniform_matrix(4, rng);
    CHECK(riccati::spectral_abscissa(m) <= riccati::log_norm(m) + 1e-12);
    CHECK(std::abs(riccati::spectral_abscissa(m)) <=
          riccati::spectral_norm(m) + 1e-12);
  }
}

TEST_CASE("spectral_summary agrees with the individual functions") {
  const Matrix m = mat({{0.0, 1.0}, {-2.0, -3.0}});
  const riccati::SpectralSummary s = riccati::spectral_summary(m);
  CHECK(s.spectral_norm == doctest::Approx(riccati::spectral_norm(m)));
  CHECK(s.log_norm == doctest::Approx(riccati::log_norm(m)));
  CHECK(s.spectral_abscissa == doctest::Approx(riccati::spectral_abscissa(m)));
}

TEST_CASE("expm reproduces closed forms and the power series") {
  CHECK(max_abs_diff(riccati::expm(Matrix::Zero(3, 3), 1.0),
                     Matrix::Identity(3, 3)) == doctest::Approx(0.0));

  const Matrix diag = mat({{-1.0, 0.0}, {0.0, -2.0}});
  const Matrix e = riccati::expm(diag, 1.0);
  CHECK(e(0, 0) == doctest::Approx(std::exp(-1.0)));
  CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)));
  CHECK(std::abs(e(0, 1)) < 1e-15);

  // Quarter-turn rotation.
  const Matrix rot = mat({{0.0, -1.0}, {1.0, 0.0}});
  const Matrix quarter = riccati::expm(rot, M_PI / 2.0);
  CHECK(max_abs_diff(quarter, mat({{0.0, -1.0}, {1.0, 0.0}})) < 1e-12);

  std::mt19937_64 rng(11);
  const Matrix m = riccati::random_uniform_matrix(3, rng);
  CHECK(max_abs_diff(riccati::expm(m, 0.7), expm_series(m, 0.7)) < 1e-12);
}

TEST_CASE("expm satisfies the one-parameter group law") {
  std::mt19937_64 rng(13);
  const Matrix m = riccati::random_uniform_matrix(4, rng);
  const Matrix lhs = riccati::expm(m, 0.4) * riccati::expm(m, 1.1);
  const Matrix rhs = riccati::expm(m, 1.5);
  CHECK(max_abs_diff(lhs, rhs) < 1e-12 * riccati::spectral_norm(rhs) + 1e-14);
}

TEST_CASE("expm rejects overflowing arguments") {
  CHECK_THROWS_AS(riccati::expm(mat({{700.0}}), 2.0), NumericalError);
}

TEST_CASE("sqrt_psd on diagonal and dense matrices") {
  CHECK(max_abs_diff(riccati::sqrt_psd(Matrix::Identity(2, 2)),
                     Matrix::Identity(2, 2)) < 1e-14);
  CHECK(max_abs_diff(riccati::sqrt_psd(mat({{4.0, 0.0}, {0.0, 9.0}})),
                     mat({{2.0, 0.0}, {0.0, 3.0}})) < 1e-13);

  const Matrix m = mat({{2.0, 1.0}, {1.0, 2.0}});
  const Matrix root = riccati::sqrt_psd(m);
  CHECK(max_abs_diff(root * root, m) < 1e-12);
  CHECK(max_abs_diff(root, root.transpose()) == doctest::Approx(0.0));

  // Semidefinite input: the zero eigenvalue must pass through.
  const Matrix semi = riccati::sqrt_psd(mat({{1.0, 0.0}, {0.0, 0.0}}));
  CHECK(max_abs_diff(semi, mat({{1.0, 0.0}, {0.0, 0.0}})) < 1e-13);
}

TEST_CASE("sqrt_psd rejects invalid inputs") {
  CHECK_THROWS_AS(riccati::sqrt_psd(mat({{0.0, 1.0}, {0.0, 0.0}})),
                  InvalidInputError);
  CHECK_THROWS_AS(riccati::sqrt_psd(mat({{1.0, 0.0}, {0.0, -1.0}})),
                  InvalidInputError);
}

TEST_CASE("spectral functions reject non-finite and non-square inputs") {
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(riccati::spectral_norm(bad), InvalidInputError);
  CHECK_THROWS_AS(riccati::log_norm(bad), InvalidInputError);
  CHECK_THROWS_AS(riccati::expm(bad, 1.0), InvalidInputError);
  CHECK_THROWS_AS(riccati::spectral_abscissa(Matrix::Zero(2, 3)),
                  InvalidInputError);
}
