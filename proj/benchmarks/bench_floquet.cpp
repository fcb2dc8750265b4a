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

// Microbenchmarks comparing the factorized evaluation of the flow and
// transition against direct adaptive integration, across model sizes.

#include <vector>

#include <benchmark/benchmark.h>

#include "riccati/floquet.hpp"
#include "riccati/model.hpp"
#include "riccati/oracle.hpp"
#include "riccati/random_models.hpp"
#include "riccati/steady_state.hpp"

namespace {

using riccati::Matrix;
using riccati::ModelTriple;

std::vector<double> default_grid(int points) {
  std::vector<double> grid;
  grid.reserve(points);
  for (int i = 0; i < points; ++i) {
    grid.push_back(0.05 + i * (5.0 - 0.05) / (points - 1));
  }
  return grid;
}

void bm_steady_state(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const ModelTriple model = riccati::random_model_seeded(r, 42 + r);
  for (auto _ : state) {
    benchmark::DoNotOptimize(riccati::steady_state(model));
  }
}

void bm_closed_curve(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const int points = static_cast<int>(state.range(1));
  const ModelTriple model = riccati::random_model_seeded(r, 42 + r);
  const Matrix q = riccati::random_psd_seeded(r, 42 + r);
  const riccati::SteadyState ss = riccati::steady_state(model);
  const std::vector<double> grid = default_grid(points);
  for (auto _ : state) {
    benchmark::DoNotOptimize(riccati::flow_transition_curve(ss, q, grid));
  }
}

void bm_oracle_curve(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const int points = static_cast<int>(state.range(1));
  const ModelTriple model = riccati::random_model_seeded(r, 42 + r);
  const Matrix q = riccati::random_psd_seeded(r, 42 + r);
  const std::vector<double> grid = default_grid(points);
  riccati::IntegratorConfig cfg;
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = 1e-12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        riccati::integrate_flow_transition(model, q, grid, cfg));
  }
}

void bm_single_flow(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const ModelTriple model = riccati::random_model_seeded(r, 42 + r);
  const Matrix q = riccati::random_psd_seeded(r, 42 + r);
  const riccati::SteadyState ss = riccati::steady_state(model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(riccati::flow(ss, q, 1.0));
  }
}

}  // namespace

BENCHMARK(bm_steady_state)->Arg(4)->Arg(8)->Arg(20)->Arg(50);
BENCHMARK(bm_closed_curve)
    ->Args({4, 100})
    ->Args({8, 100})
    ->Args({20, 100})
    ->Args({50, 100});
BENCHMARK(bm_oracle_curve)
    ->Args({4, 100})
    ->Args({8, 100})
    ->Args({20, 100})
    ->Args({50, 100});
BENCHMARK(bm_single_flow)->Arg(4)->Arg(8)->Arg(20)->Arg(50);
