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

#include "riccati/tolerances.hpp"
#include "riccati/types.hpp"

namespace riccati {

// Norms and spectral quantities of a single matrix, bundled for reports.
struct SpectralSummary {
  double spectral_norm;       // ||M|| = sqrt(lambda_max(M M^T))
  double log_norm;            // mu(M) = lambda_max((M + M^T)/2)
  double spectral_abscissa;   // max_i Re(lambda_i(M))
  double min_eigenvalue_sym;  // lambda_min((M + M^T)/2)
};

// ||M||: largest singular value.  Throws InvalidInputError on non-finite
// entries.
double spectral_norm(const Matrix& m);

// Logarithmic norm mu(M) = lambda_max of the symmetric part.  Controls the
// transient growth of ||e^{tM}||; always >= spectral_abscissa(M).
double log_norm(const Matrix& m);

// Spectral abscissa: largest real part over the eigenvalues of M.  Governs
// the asymptotic decay rate of e^{tM}.
double spectral_abscissa(const Matrix& m);

// Smallest eigenvalue of the symmetric part (equals lambda_min(M) when M is
// symmetric).  This is the quantity all definiteness checks use.
double lambda_min_sym(const Matrix& m);

SpectralSummary spectral_summary(const Matrix& m);

// e^{tM} by scaling-and-squaring with a Pade approximant.  Throws
// NumericalError if the result overflows (huge t*||M||).
Matrix expm(const Matrix& m, double t = 1.0);

// Principal symmetric square root of a symmetric PSD matrix via
// eigendecomposition; eigenvalues in [-psd_tol*(1+||M||), 0) are clamped
// to zero.  Asymmetric or indefinite input beyond tolerance throws
// InvalidInputError.
Matrix sqrt_psd(const Matrix& m, const Tolerances& tol = {});

}  // namespace riccati
