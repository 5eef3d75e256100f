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

#include <Eigen/Dense>
#include <vector>

#include "incompat/povm.hpp"

namespace incompat {

/// Maximal CHSH value for fixed first-party observables, optimized over the
/// state and the second party. Normalized so the local bound is 1 and the
/// quantum maximum is sqrt(2).
struct ChshResult {
  double max_violation = 1.0;
  /// Principal angles theta_j in [0, pi] between the +1 eigenspaces;
  /// angles[0] is the maximizer of sin(theta).
  std::vector<double> angles;
  /// Local support of the optimal state: psi from the +1 space of A, phi
  /// from the +1 space of B. Empty when the observables commute.
  Eigen::VectorXcd psi;
  Eigen::VectorXcd phi;
  bool has_subspace = false;
};

/// Qubit closed form sqrt(1 + sin(theta)) for sharp observables a.sigma and
/// b.sigma with unit Bloch vectors; equals sqrt(tau_qubit_pair(a, b)).
double chsh_max_qubit(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

/// General +-1-valued sharp observables: the singular values of A+ B+ are
/// cos(theta_j / 2); the maximum violation is sqrt(1 + sin(theta_1)) over
/// the angle maximizing sin, attained on the two-dimensional subspace
/// spanned by the corresponding singular pair.
ChshResult chsh_max_general(const SharpObservable& a, const SharpObservable& b);

/// The same quantity through the commutator: sqrt(1 + ||[A, B]|| / 2) with
/// the spectral norm.
double chsh_commutator_bound(const SharpObservable& a,
                             const SharpObservable& b);

}  // namespace incompat
