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
#include <optional>
#include <vector>

#include "incompat/povm.hpp"

namespace incompat {

/// Options shared by the semidefinite solves.
struct SolverOptions {
  /// Certification tolerance: feasibility margins and the duality gap are
  /// required to close to this level (relative to the objective scale).
  double tol = 1e-7;
  /// Interior-point iteration cap.
  int max_iter = 200;
  /// Skip the closed-form fast paths for one and two matrices and run the
  /// iterative solver unconditionally.
  bool force_iterative = false;
  /// Cap on the product of outcome counts in joint_feasibility.
  int outcome_cap = 4096;
};

/// Solution of min tr X subject to X >= M_j for all j, with the dual
/// max sum_j tr(M_j Y_j) subject to Y_j >= 0, sum_j Y_j = 1.
struct SdpSolution {
  double value = 0.0;                  // primal objective tr X
  Eigen::MatrixXd primal;              // X
  std::vector<Eigen::MatrixXd> duals;  // Y_j
  double primal_infeasibility = 0.0;   // max_j max(0, -lambda_min(X - M_j))
  double dual_infeasibility = 0.0;     // |sum Y - 1| and dual PSD violation
  double gap = 0.0;                    // |primal - dual objective|
  int iterations = 0;
  bool certified = false;
  double tol = 0.0;  // tolerance the solve was asked to certify
};

/// Minimum trace of a symmetric matrix dominating every M_j in the PSD
/// order. Inputs must be symmetric PSD within tol.
///
/// Fast paths (exact, dual-certified): a single matrix gives X = M_1; two
/// matrices give value (tr M_1 + tr M_2 + ||M_1 - M_2||_1)/2 with
/// X = (M_1 + M_2)/2 + |M_1 - M_2|/2. Larger families run a primal-dual
/// interior-point method on the block form X - M_j = S_j >= 0.
SdpSolution min_trace_dominating(const std::vector<Eigen::MatrixXd>& ms,
                                 const SolverOptions& opts = {});
SdpSolution min_trace_dominating(const std::vector<Eigen::MatrixXd>& ms,
                                 double tol);

/// Independent re-check of an SdpSolution against the inputs it claims to
/// solve: primal feasibility, dual feasibility, and the duality gap, each
/// required to close within 10 * tol.
struct CertificateReport {
  double primal_margin = 0.0;      // min_j lambda_min(X - M_j)
  double dual_psd_margin = 0.0;    // min_j lambda_min(Y_j)
  double dual_sum_residual = 0.0;  // max abs entry of (sum Y - 1)
  double gap = 0.0;
  bool pass = false;
};

CertificateReport verify_solution(const SdpSolution& sol,
                                  const std::vector<Eigen::MatrixXd>& ms,
                                  double tol = 1e-7);

/// Outcome of a joint-measurability decision.
enum class Feasibility { feasible, infeasible, inconclusive };

/// Result of the joint-observable search. When feasible, `joint` holds a
/// POVM indexed row-major over outcome tuples whose marginals reproduce the
/// inputs within `slack`. When infeasible, `certificate` holds PSD witness
/// blocks Z_k with sum_k tr(Z_k) = 1, orthogonal to the marginal-preserving
/// directions, such that sum_k tr(M_k Z_k) = slack_upper < 0 for every
/// marginal-consistent assignment {M_k}.
struct JointSolution {
  Feasibility status = Feasibility::inconclusive;
  std::optional<Povm> joint;
  std::vector<Eigen::MatrixXcd> certificate;
  double slack = 0.0;        // certified feasible slack (lower bound on s*)
  double slack_upper = 0.0;  // dual upper bound on s*
  double marginal_residual = 0.0;
  int iterations = 0;

  bool feasible() const { return status == Feasibility::feasible; }
};

/// Decides joint measurability of a set of observables by maximizing the
/// minimum slack eigenvalue s over all marginal-consistent assignments
/// M_k >= s. The sign of the optimum decides feasibility; |optimum| below
/// tol is reported as inconclusive rather than guessed.
JointSolution joint_feasibility(const std::vector<Povm>& ps,
                                const SolverOptions& opts = {});
JointSolution joint_feasibility(const std::vector<Povm>& ps, double tol,
                                int max_iter = 200);

}  // namespace incompat
