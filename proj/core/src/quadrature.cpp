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

#include "riccati/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "riccati/errors.hpp"

namespace riccati {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half; symmetric) with the
// embedded 7-point Gauss rule on the odd-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
  double a;
  double b;
  Matrix kronrod;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate(const std::function<Matrix(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  Matrix fc = f(center);
  Matrix kronrod = kWgk[7] * fc;
  Matrix gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const Matrix lo = f(center - half * kXgk[i]);
    const Matrix hi = f(center + half * kXgk[i]);
    kronrod += kWgk[i] * (lo + hi);
    if (i % 2 == 1) {
      gauss += kWg[i / 2] * (lo + hi);
    }
  }
  kronrod *= half;
  gauss *= half;

  Segment seg;
  seg.a = a;
  seg.b = b;
  seg.error = (kronrod - gauss).norm();
  seg.kronrod = std::move(kronrod);
  return seg;
}

}  // namespace

QuadratureResult integrate_matrix(const std::function<Matrix(double)>& f,
                                  double a, double b, double rel_tol,
                                  double abs_tol) {
  if (!std::isfinite(a) || !std::isfinite(b) || b < a) {
    throw InvalidInputError("integrate_matrix: bad interval");
  }
  constexpr int kMaxSegments = 5000;

  if (a == b) {
    Matrix probe = f(a);
    return {Matrix::Zero(probe.rows(), probe.cols()), 0.0, 0};
  }

  std::priority_queue<Segment> queue;
  queue.push(evaluate(f, a, b));
  Matrix total = queue.top().kronrod;
  double total_error = queue.top().error;
  int segments = 1;

  while (total_error > std::max(abs_tol, rel_tol * total.norm())) {
    if (segments >= kMaxSegments) {
      throw NumericalError(
          "integrate_matrix: tolerance unreachable within segment budget");
    }
    Segment worst = queue.top();
    queue.pop();
    if (worst.b - worst.a < 1e-14 * (b - a)) {
      throw NumericalError(
          "integrate_matrix: interval collapsed before reaching tolerance "
          "(integrand too rough near t = " +
          std::to_string(worst.a) + ")");
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = evaluate(f, worst.a, mid);
    Segment right = evaluate(f, mid, worst.b);
    total += left.kronrod + right.kronrod - worst.kronrod;
    total_error += left.error + right.error - worst.error;
    queue.push(std::move(left));
    queue.push(std::move(right));
    ++segments;
  }

  return {total, total_error, segments};
}

}  // namespace riccati
