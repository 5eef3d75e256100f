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
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "incompat/operator_core.hpp"

namespace incompat {

/// One labeled outcome of a generalized observable. The operator must be
/// PSD within tolerance.
struct Effect {
  std::string label;
  Eigen::MatrixXcd op;
};

/// A generalized observable: an ordered list of positive effects summing to
/// the identity. Order carries outcome identity; equivalence up to
/// relabeling is never implicit.
struct Povm {
  std::vector<Effect> effects;

  int dim() const {
    return effects.empty() ? 0 : static_cast<int>(effects[0].op.rows());
  }
  int outcomes() const { return static_cast<int>(effects.size()); }
};

/// Column-stochastic post-processing matrix: entries >= 0, each column sums
/// to 1. Acting on a POVM with n outcomes produces one with m outcomes.
struct StochasticMatrix {
  Eigen::MatrixXd entries;  // m x n

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

/// Throws ValidationError unless every entry is nonnegative and every column
/// sums to 1 within tol.
void require_stochastic(const StochasticMatrix& lambda, double tol = 1e-10);

/// Throws ValidationError unless additionally every row sums to 1 within tol.
void require_doubly_stochastic(const StochasticMatrix& lambda,
                               double tol = 1e-10);

/// A sharp observable: eigenvalues with orthogonal projectors that sum to
/// the identity. Nondegenerate (all ranks 1) sharp observables are the von
/// Neumann observables.
struct SharpObservable {
  struct Projector {
    double eigenvalue;
    Eigen::MatrixXcd proj;
    int rank;
  };
  Eigen::MatrixXcd op;
  std::vector<Projector> projectors;

  int dim() const { return static_cast<int>(op.rows()); }
  bool nondegenerate() const;
};

/// Per-invariant POVM validation outcome at a given tolerance. Failures are
/// reported, never thrown.
struct ValidationReport {
  double tol = 0.0;
  double min_effect_eigenvalue = 0.0;
  double completeness_residual = 0.0;  // max abs entry of (sum effects - 1)
  double hermiticity_residual = 0.0;
  bool effects_psd = false;
  bool complete = false;
  bool hermitian = false;
  bool pass = false;
};

ValidationReport validate(const Povm& p, double tol = kPsdTol);

/// Throws ValidationError if the POVM does not pass validate at tol.
void require_valid(const Povm& p, double tol = kPsdTol);

/// Post-processing C_xi = sum_zeta Lambda_{xi,zeta} A_zeta.
Povm coarse_grain(const Povm& p, const StochasticMatrix& lambda);

/// A(eta) = { eta A_xi + (1 - eta) tr(A_xi)/d }, eta in [0, 1].
Povm depolarize(const Povm& p, double eta);

/// A_eps = { (A_xi + eps tr(A_xi)/d) / (1 + eps) }, eps >= 0. Identical to
/// depolarize with eta = 1/(1+eps).
Povm epsilon_smooth(const Povm& p, double eps);

/// Spectral projectors of a Hermitian operator, clustering eigenvalues
/// within degeneracy_tol (default 1e-8 times the spectral range).
SharpObservable from_observable(const Eigen::MatrixXcd& h,
                                double degeneracy_tol = -1.0);

/// True iff every pair of projectors across all observables commutes within
/// tol (Hilbert-Schmidt norm of the commutator).
bool pairwise_commute(const std::vector<SharpObservable>& obs,
                      double tol = 1e-9);

/// Two-outcome projective POVM {(1 +- axis.sigma)/2} for a unit axis.
Povm pauli_povm(const Eigen::Vector3d& axis);

/// Projective measurements along x, y, z.
std::array<Povm, 3> qubit_mub_triple();

/// Computational-basis observable and its discrete-Fourier conjugate.
std::pair<Povm, Povm> fourier_pair(int d);

/// Three-outcome qubit POVM {(1 + n_k.sigma)/3} with trine axes at 120
/// degrees in the xz-plane.
Povm trine_qubit();

/// The projective POVM of a sharp observable (one effect per projector).
Povm sharp_povm(const SharpObservable& obs);

/// Conjugate every effect by a unitary.
Povm conjugate(const Povm& p, const Eigen::MatrixXcd& u);

}  // namespace incompat
