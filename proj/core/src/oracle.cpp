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

#include "riccati/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "riccati/errors.hpp"

namespace riccati {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5.0;
constexpr double kC3 = 3.0 / 10.0;
constexpr double kC4 = 4.0 / 5.0;
constexpr double kC5 = 8.0 / 9.0;

constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kA71 = 35.0 / 384.0, kA73 = 500.0 / 1113.0,
                 kA74 = 125.0 / 192.0, kA75 = -2187.0 / 6784.0,
                 kA76 = 11.0 / 84.0;

// 5th-order weights minus the embedded 4th-order weights.
constexpr double kE1 = 71.0 / 57600.0;
constexpr double kE3 = -71.0 / 16695.0;
constexpr double kE4 = 71.0 / 1920.0;
constexpr double kE5 = -17253.0 / 339200.0;
constexpr double kE6 = 22.0 / 525.0;
constexpr double kE7 = -1.0 / 40.0;

// Proportional-integral controller constants (classic 5th-order choice).
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kSafe = 0.9;
constexpr double kMaxShrink = 5.0;  // h may shrink at most 5x per step
constexpr double kMaxGrow = 10.0;   // and grow at most 10x

void validate_config(const IntegratorConfig& cfg) {
  auto in_window = [](double tol) {
    return tol >= IntegratorConfig::kTolMin && tol <= IntegratorConfig::kTolMax;
  };
  if (!in_window(cfg.rel_tol) || !in_window(cfg.abs_tol)) {
    throw InvalidInputError(
        "integrator tolerances must lie in [1e-13, 1e-2]");
  }
  if (!(cfg.max_step > 0.0)) {
    throw InvalidInputError("integrator max_step must be positive");
  }
}

// Adaptive embedded Runge-Kutta 5(4) stepper over a flat state vector.
// The `post` hook runs after every accepted step (used to re-impose
// symmetry on matrix states).
class Rk45 {
 public:
  Rk45(std::function<Vector(double, const Vector&)> rhs,
       std::function<void(Vector&)> post, const IntegratorConfig& cfg)
      : rhs_(std::move(rhs)), post_(std::move(post)), cfg_(cfg) {
    validate_config(cfg);
  }

  double error_accum() const { return error_accum_; }

  // Integrates y from t to exactly t_target (t is updated in place).
  void advance(double& t, Vector& y, double t_target) {
    if (t_target < t) {
      throw InvalidInputError("integrator: backward step requested");
    }
    if (t_target == t) return;
    if (h_ == 0.0) {
      h_ = initial_step(t, y, t_target - t);
    }

    while (t < t_target) {
      h_ = std::min(h_, cfg_.max_step);
      bool final_step = false;
      double h = h_;
      if (t + h >= t_target) {
        h = t_target - t;
        final_step = true;
      }
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        throw NumericalError(
            "integrator: step size underflow at t = " + std::to_string(t) +
            " (problem too stiff for this method)");
      }

      const Vector k1 = rhs_(t, y);
      const Vector k2 = rhs_(t + kC2 * h, y + h * (kA21 * k1));
      const Vector k3 = rhs_(t + kC3 * h, y + h * (kA31 * k1 + kA32 * k2));
      const Vector k4 =
          rhs_(t + kC4 * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
      const Vector k5 = rhs_(
          t + kC5 * h, y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
      const Vector k6 =
          rhs_(t + h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 +
                               kA65 * k5));
      const Vector y_new =
          y + h * (kA71 * k1 + kA73 * k3 + kA74 * k4 + kA75 * k5 + kA76 * k6);
      const Vector k7 = rhs_(t + h, y_new);
      const Vector err_vec =
          h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

      // RMS of the error against the per-component tolerance scale.
      double err_sq = 0.0;
      double scale_sq = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double sc =
            cfg_.abs_tol +
            cfg_.rel_tol * std::max(std::abs(y(i)), std::abs(y_new(i)));
        const double e = err_vec(i) / sc;
        err_sq += e * e;
        scale_sq += sc * sc;
      }
      const double n = static_cast<double>(y.size());
      const double err = std::sqrt(err_sq / n);

      if (!std::isfinite(err)) {
        // State exploded inside the step; retry much smaller.
        h_ = h * 0.1;
        rejected_ = true;
        continue;
      }

      const double fac11 = std::pow(err, kExpo1);
      if (err <= 1.0) {
        // Accept.
        t = final_step ? t_target : t + h;
        y = y_new;
        if (post_) post_(y);
        error_accum_ += err * std::sqrt(scale_sq / n);
        double fac = fac11 / std::pow(facold_, kBeta);
        fac = std::max(1.0 / kMaxGrow, std::min(kMaxShrink, fac / kSafe));
        double h_next = h / fac;
        if (rejected_) h_next = std::min(h_next, h);
        h_ = h_next;
        facold_ = std::max(err, 1e-4);
        rejected_ = false;
        if (++steps_ > kMaxSteps) {
          throw NumericalError("integrator: step budget exhausted at t = " +
                               std::to_string(t));
        }
      } else {
        // Reject; shrink.
        h_ = h / std::min(kMaxShrink, fac11 / kSafe);
        rejected_ = true;
      }
    }
  }

 private:
  static constexpr long kMaxSteps = 5'000'000;

  // Standard two-sample heuristic for the first step size.
  double initial_step(double t, const Vector& y, double span) {
    const Vector f0 = rhs_(t, y);
    double d0 = 0.0, d1 = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc = cfg_.abs_tol + cfg_.rel_tol * std::abs(y(i));
      d0 += std::pow(y(i) / sc, 2);
      d1 += std::pow(f0(i) / sc, 2);
    }
    const double n = static_cast<double>(y.size());
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
    h0 = std::min(h0, span);

    const Vector f1 = rhs_(t + h0, y + h0 * f0);
    double d2 = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc = cfg_.abs_tol + cfg_.rel_tol * std::abs(y(i));
      d2 += std::pow((f1(i) - f0(i)) / sc, 2);
    }
    d2 = std::sqrt(d2 / n) / h0;

    const double der = std::max(d1, d2);
    const double h1 =
        der <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / der, 0.2);
    return std::min({100.0 * h0, h1, span, cfg_.max_step});
  }

  std::function<Vector(double, const Vector&)> rhs_;
  std::function<void(Vector&)> post_;
  IntegratorConfig cfg_;
  double h_ = 0.0;
  double facold_ = 1e-4;
  bool rejected_ = false;
  double error_accum_ = 0.0;
  long steps_ = 0;
};

// Row-major flattening of the matrix state.
Vector flatten(const Matrix& m) {
  const int r = static_cast<int>(m.rows());
  Vector v(r * r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) v(i * r + j) = m(i, j);
  }
  return v;
}

Matrix unflatten(const Vector& v, int r, int offset = 0) {
  Matrix m(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) m(i, j) = v(offset + i * r + j);
  }
  return m;
}

void symmetrize_block(Vector& y, int r, int offset = 0) {
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const double avg = 0.5 * (y(offset + i * r + j) + y(offset + j * r + i));
      y(offset + i * r + j) = avg;
      y(offset + j * r + i) = avg;
    }
  }
}

void check_grid(const std::vector<double>& grid, const char* op) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
      throw InvalidInputError(std::string(op) +
                              ": grid times must be finite and >= 0");
    }
    if (i > 0 && !(grid[i - 1] <= grid[i])) {
      throw InvalidInputError(std::string(op) + ": grid is not sorted");
    }
  }
}

}  // namespace

Trajectory integrate_riccati(const ModelTriple& model, const Matrix& q,
                             const std::vector<double>& grid,
                             const IntegratorConfig& config) {
  check_initial_condition(model, q);
  check_grid(grid, "integrate_riccati");
  const int r = model.dim;

  auto rhs = [&model, r](double, const Vector& y) {
    const Matrix p = unflatten(y, r);
    const Matrix ap = model.A * p;
    return flatten(ap + ap.transpose() + model.R - p * model.S * p);
  };
  Rk45 stepper(rhs, [r](Vector& y) { symmetrize_block(y, r); }, config);

  Trajectory out;
  out.method = "oracle";
  out.times = grid;
  out.values.reserve(grid.size());
  double t = 0.0;
  Vector y = flatten(symmetrize(q));
  for (double target : grid) {
    stepper.advance(t, y, target);
    out.values.push_back(unflatten(y, r));
  }
  out.error_estimate = stepper.error_accum();
  return out;
}

std::pair<Trajectory, Trajectory> integrate_flow_transition(
    const ModelTriple& model, const Matrix& q, const std::vector<double>& grid,
    const IntegratorConfig& config) {
  check_initial_condition(model, q);
  check_grid(grid, "integrate_flow_transition");
  const int r = model.dim;
  const int block = r * r;

  // Joint state [vec(P); vec(E)]: dP = Lambda(P), dE = (A - P S) E.
  auto rhs = [&model, r, block](double, const Vector& y) {
    const Matrix p = unflatten(y, r);
    const Matrix e = unflatten(y, r, block);
    const Matrix ap = model.A * p;
    Vector dy(2 * block);
    dy.head(block) = flatten(ap + ap.transpose() + model.R - p * model.S * p);
    dy.tail(block) = flatten((model.A - p * model.S) * e);
    return dy;
  };
  Rk45 stepper(rhs, [r](Vector& y) { symmetrize_block(y, r); }, config);

  Trajectory phi, trans;
  phi.method = trans.method = "oracle";
  phi.times = trans.times = grid;
  double t = 0.0;
  Vector y(2 * block);
  y.head(block) = flatten(symmetrize(q));
  y.tail(block) = flatten(Matrix::Identity(r, r));
  for (double target : grid) {
    stepper.advance(t, y, target);
    phi.values.push_back(unflatten(y, r));
    trans.values.push_back(unflatten(y, r, block));
  }
  phi.error_estimate = trans.error_estimate = stepper.error_accum();
  return {phi, trans};
}

Matrix integrate_transition(const ModelTriple& model, const Matrix& q,
                            double s, double t,
                            const IntegratorConfig& config) {
  if (!std::isfinite(s) || !std::isfinite(t) || s < 0.0 || s > t) {
    throw InvalidInputError(
        "integrate_transition: times must satisfy 0 <= s <= t");
  }
  check_initial_condition(model, q);
  const int r = model.dim;
  if (s == t) return Matrix::Identity(r, r);

  // Ride the plain Riccati flow to s, then couple in E_s = I.
  Matrix p_s = symmetrize(q);
  if (s > 0.0) {
    p_s = integrate_riccati(model, q, {s}, config).values.back();
  }
  const int block = r * r;
  auto rhs = [&model, r, block](double, const Vector& y) {
    const Matrix p = unflatten(y, r);
    const Matrix e = unflatten(y, r, block);
    const Matrix ap = model.A * p;
    Vector dy(2 * block);
    dy.head(block) = flatten(ap + ap.transpose() + model.R - p * model.S * p);
    dy.tail(block) = flatten((model.A - p * model.S) * e);
    return dy;
  };
  Rk45 stepper(rhs, [r](Vector& y) { symmetrize_block(y, r); }, config);

  double u = s;
  Vector y(2 * block);
  y.head(block) = flatten(p_s);
  y.tail(block) = flatten(Matrix::Identity(r, r));
  stepper.advance(u, y, t);
  return unflatten(y, r, block);
}

ScalarSolution scalar_analytic(double a, double r, double s, double q,
                               double t) {
  if (!(s > 0.0)) {
    throw InvalidInputError("scalar_analytic: s must be positive");
  }
  if (r < 0.0 || q < 0.0) {
    throw InvalidInputError("scalar_analytic: r and q must be >= 0");
  }
  const double w = std::sqrt(a * a + r * s);
  if (w == 0.0) {
    throw InvalidInputError(
        "scalar_analytic: a = r = 0 is degenerate (no stable fixed point)");
  }
  const double p_inf = (a + w) / s;
  const double b = -w;

  // Scalar Gramian in closed form: S_t = s (1 - e^{2bt}) / (-2b).
  const double s_t = s * (-std::expm1(2.0 * b * t)) / (-2.0 * b);
  const double c_t = 1.0 + (q - p_inf) * s_t;
  const double exp_tb = std::exp(b * t);

  ScalarSolution out;
  out.E = exp_tb / c_t;
  out.phi = p_inf + exp_tb * exp_tb * (q - p_inf) / c_t;
  return out;
}

}  // namespace riccati
