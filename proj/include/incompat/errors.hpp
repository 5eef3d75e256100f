// Copyright 2026 The incompat authors
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

namespace incompat {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An input value violates a structural invariant (Hermiticity,
/// completeness, column stochasticity, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be positive semidefinite has a negative eigenvalue
/// beyond tolerance.
class NotPsdError : public Error {
 public:
  NotPsdError(const std::string& msg, double eigenvalue)
      : Error(msg), eigenvalue(eigenvalue) {}
  double eigenvalue;
};

/// A tangent direction is not representable on the support of the state.
class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

/// An outcome has vanishing probability but a nonvanishing score numerator,
/// so the Fisher information is undefined at this point.
class SingularModelError : public Error {
 public:
  using Error::Error;
};

/// The metric adjustment J^{-1/2} I J^{-1/2} is infeasible because I has
/// support outside the support of J.
class InfeasibleAdjustmentError : public Error {
 public:
  using Error::Error;
};

/// The requested operation only covers a restricted input class.
class UnsupportedInputError : public Error {
 public:
  using Error::Error;
};

/// The interior-point solver stopped before certifying the requested
/// tolerance; carries the best bounds found.
class SolverError : public Error {
 public:
  SolverError(const std::string& msg, double primal_bound, double dual_bound)
      : Error(msg), primal_bound(primal_bound), dual_bound(dual_bound) {}
  double primal_bound;
  double dual_bound;
};

}  // namespace incompat
