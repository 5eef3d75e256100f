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

#include "incompat/operator_core.hpp"
#include "incompat/povm.hpp"

namespace incompat {

/// A state together with a list of tangent directions d rho / d theta_j.
/// The state must be PSD with unit trace; tangents must be traceless
/// Hermitian.
struct ParamPoint {
  Eigen::MatrixXcd rho;
  std::vector<Eigen::MatrixXcd> tangents;

  int dim() const { return static_cast<int>(rho.rows()); }
  int params() const { return static_cast<int>(tangents.size()); }
};

/// Throws ValidationError if rho is not a valid state or a tangent is not
/// traceless Hermitian.
void require_param_point(const ParamPoint& pt, double tol = kPsdTol);

/// Symmetric logarithmic derivative L solving drho = (rho L + L rho)/2.
///
/// Solved in the eigenbasis of rho: L_jk = 2 drho_jk / (p_j + p_k) where
/// p_j + p_k > tol, and 0 on the kernel-kernel block (the minimal-norm gauge;
/// any choice there leaves (rho L + L rho)/2 unchanged). Throws
/// RankDeficiencyError if drho has weight on the kernel-kernel block beyond
/// tol, since no L can reproduce it.
Eigen::MatrixXcd sld(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho,
                     double tol = kPsdTol);

/// SLD quantum Fisher information matrix
/// J_jk = tr{rho (L_j L_k + L_k L_j)} / 2.
Eigen::MatrixXd qfi_matrix(const ParamPoint& pt, double tol = kPsdTol);

/// Default probability floor below which an outcome is considered
/// unobservable at the given point.
inline constexpr double kProbFloor = 1e-12;

/// Classical Fisher information matrix of a measurement,
/// I_jk = sum_xi tr(drho_j Pi_xi) tr(drho_k Pi_xi) / p_xi.
///
/// Outcomes with p_xi <= prob_floor are skipped when their score numerators
/// also vanish; otherwise the model is singular there and
/// SingularModelError is thrown rather than clamping to a huge value.
Eigen::MatrixXd fisher_matrix(const ParamPoint& pt, const Povm& p,
                              double prob_floor = kProbFloor);

/// Metric-adjusted Fisher information J^{-1/2} I J^{-1/2} via the
/// pseudo-inverse square root. Throws InfeasibleAdjustmentError when I has
/// support outside the support of J.
Eigen::MatrixXd metric_adjusted(const Eigen::MatrixXd& fisher,
                                const Eigen::MatrixXd& qfi,
                                double tol = kPsdTol);

/// Gill-Massar trace tr(J^+ I). At most d-1 for any measurement on a
/// d-level system.
double gm_trace(const Eigen::MatrixXd& fisher, const Eigen::MatrixXd& qfi,
                double tol = kPsdTol);

/// Fisher information of a POVM at the maximally mixed state, as an
/// operator on Hilbert-Schmidt space in OperatorBasis coordinates:
///   g    = sum_xi |A_xi>> <<A_xi| / tr(A_xi)
///   gbar = the same with the traceless parts, equal to g with the trace
///          row/column projected out.
/// Effects with vanishing trace are zero operators and are dropped.
/// Tr(g) <= d with equality iff all effects are rank one; Tr(gbar) = Tr(g)-1.
struct FrameSuperoperators {
  Eigen::MatrixXd g;     // d^2 x d^2
  Eigen::MatrixXd gbar;  // d^2 x d^2, first row/column zero

  /// gbar restricted to the traceless sector: (d^2-1) x (d^2-1).
  Eigen::MatrixXd gbar_traceless() const {
    return gbar.bottomRightCorner(gbar.rows() - 1, gbar.cols() - 1);
  }
};

FrameSuperoperators frame_superoperators(const Povm& p);
FrameSuperoperators frame_superoperators(const Povm& p,
                                         const OperatorBasis& basis);

/// The canonical full parametrization: tangents are the d^2 - 1 traceless
/// basis elements.
ParamPoint full_param_point(const Eigen::MatrixXcd& rho,
                            const OperatorBasis& basis);
ParamPoint full_param_point(const Eigen::MatrixXcd& rho);

/// The canonical qubit Bloch parametrization: rho = (1 + s.sigma)/2 with
/// tangents sigma_x/2, sigma_y/2, sigma_z/2. In these coordinates
/// J^{-1}(s) = 1 - s s^T.
ParamPoint bloch_param_point(const Eigen::Vector3d& s);

/// Closed-form qubit quantum Fisher information J(s) = (1 - s s^T)^{-1} in
/// Bloch coordinates, |s| < 1.
Eigen::Matrix3d qubit_qfi_bloch(const Eigen::Vector3d& s);

}  // namespace incompat
