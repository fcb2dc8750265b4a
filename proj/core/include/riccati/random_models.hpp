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

#include <cstdint>
#include <random>

#include "riccati/model.hpp"
#include "riccati/types.hpp"

namespace riccati {

// Seeded generators for test and verification sweeps.  Uniform deviates are
// derived from the raw mt19937_64 bit stream (not std::uniform_real_distribution,
// whose output is implementation-defined), so a seed pins the same model on
// every platform.

// Uniform in [0, 1).
double uniform01(std::mt19937_64& rng);

// r x r matrix with entries uniform in [-1, 1].
Matrix random_uniform_matrix(int r, std::mt19937_64& rng);

// Random PSD matrix G G^T with G uniform in [-1, 1] (possibly singular —
// valid as an initial condition).
Matrix random_psd(int r, std::mt19937_64& rng);

// Validated random model: A uniform in [-1,1], R = G G^T + 0.1 I,
// S = H H^T + 0.1 I (controllable/observable almost surely); resamples on
// validation failure.  Throws NumericalError if max_attempts consecutive
// draws fail validation.
ModelTriple random_model(int r, std::mt19937_64& rng, int max_attempts = 100);

// Random model satisfying the commuting-case hypotheses: S SPD,
// S A = A^T S >= 0.  Built as A = S^{-1/2} K S^{1/2} with K symmetric PSD.
ModelTriple random_commuting_model(int r, std::mt19937_64& rng);

// Convenience wrappers seeding a fresh engine.
ModelTriple random_model_seeded(int r, std::uint64_t seed);
Matrix random_psd_seeded(int r, std::uint64_t seed);

}  // namespace riccati
