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

#include <stdexcept>
#include <string>

namespace riccati {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input: bad JSON, dimension mismatch, matrices
// that fail symmetry/definiteness requirements, out-of-range parameters.
class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& what) : Error(what) {}
};

// An operation that needs an initial condition was invoked without one.
// Kept distinct from InvalidInputError so callers can point the user at
// the missing argument rather than at the model file.
class MissingInitialConditionError : public InvalidInputError {
 public:
  explicit MissingInitialConditionError(const std::string& what)
      : InvalidInputError(what) {}
};

// A computation failed numerically: no stabilizing solution, singular
// factor, step-size underflow, iteration that will not converge.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

}  // namespace riccati
