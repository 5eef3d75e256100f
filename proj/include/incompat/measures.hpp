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
#include <string>
#include <utility>
#include <vector>

#include "incompat/estimation.hpp"
#include "incompat/povm.hpp"
#include "incompat/sdp.hpp"

namespace incompat {

/// Verdicts are one-sided for d > 2: tau > d-1 proves incompatibility, but
/// tau <= d-1 proves nothing in general, so the complement is "undetected",
/// never "compatible".
inline constexpr const char* kVerdictIncompatible = "incompatible";
inline constexpr const char* kVerdictUndetected = "undetected";
inline constexpr const char* kVerdictBoundary = "boundary";

/// Result of the incompatibility measure tau = t({gbar_j}): the minimum
/// trace of a matrix dominating every frame superoperator, with threshold
/// d - 1.
struct IncompatReport {
  double tau = 0.0;
  double threshold = 0.0;  // d - 1
  std::string verdict;
  double normalized = 0.0;  // tau / (d-1)
  double excess = 0.0;      // max(tau - (d-1), 0)
  double tol = 0.0;
  double cross_check = 0.0;  // |t({g_j}) - 1 - t({gbar_j})|
  SdpSolution solution;
};

/// Incompatibility measure of a family of observables. Solves the
/// min-trace-dominating SDP on the traceless frame superoperators and
/// cross-checks against t({g_j}) - 1.
IncompatReport tau(const std::vector<Povm>& ps, const SolverOptions& opts = {});

/// The universal criterion t({J^-1/2 I_j J^-1/2}) <= d-1 evaluated at an
/// arbitrary parameter point. At the full traceless point with rho = 1/d the
/// value equals tau of the family.
struct CriterionResult {
  double t_value = 0.0;
  double threshold = 0.0;
  std::string verdict;
};

CriterionResult criterion_at_point(const std::vector<Povm>& ps,
                                   const ParamPoint& pt,
                                   const SolverOptions& opts = {});

/// Closed form for two binary qubit observables {(1 +- a.sigma)/2},
/// {(1 +- b.sigma)/2}:
///   tau = [a^2 + b^2 + sqrt((a^2+b^2)^2 - 4 (a.b)^2)] / 2.
/// tau <= 1 is necessary and sufficient for joint measurability here.
double tau_qubit_pair(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

/// Busch coexistence criterion |a+b| + |a-b| <= 2, equivalent to
/// tau_qubit_pair <= 1.
bool busch_criterion(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

/// Closed form for two von Neumann (nondegenerate sharp) observables:
///   tau = sum_{j=1}^{d-1} (1 + sqrt(1 - s_j^2))
/// with s_j the d-1 largest singular values of gbar_A gbar_B. Degenerate
/// observables raise UnsupportedInputError (use tau instead).
double tau_von_neumann(const SharpObservable& a, const SharpObservable& b);

/// Noisy variant: tau of the pair depolarized by lambda and mu,
///   sum_j [lambda^2 + mu^2 + sqrt((lambda^2+mu^2)^2
///          - 4 lambda^2 mu^2 s_j^2)] / 2.
double tau_von_neumann_noisy(const SharpObservable& a,
                             const SharpObservable& b, double lambda,
                             double mu);

/// tau of unsharp complementary observables with visibility eta_j each:
/// (d-1) sum_j eta_j^2.
double tau_complementary(const std::vector<double>& etas, int d);

/// tau of complementary von Neumann observables under doubly stochastic
/// noise: sum_j tr(Lambda_j - K/d)^2 with K the all-ones matrix.
double tau_doubly_stochastic(const std::vector<StochasticMatrix>& lambdas,
                             int d);

/// Measurement uncertainty check: coarse-grains each observable by its
/// stochastic matrix and evaluates the universal criterion at pt. A value
/// above d-1 means the noisy family cannot be jointly measured.
struct UncertaintyResult {
  double t_value = 0.0;
  double threshold = 0.0;
  std::string verdict;  // "within-bound" or "violates-qm-bound"
};

UncertaintyResult uncertainty_check(const std::vector<Povm>& ps,
                                    const std::vector<StochasticMatrix>& lambdas,
                                    const ParamPoint& pt,
                                    const SolverOptions& opts = {});

/// Depolarizing-noise threshold sqrt((d-1)/tau) clamped to [0, 1]: the lower
/// bound on noise below which the tau criterion cannot pass.
double noise_threshold(const std::vector<Povm>& ps,
                       const SolverOptions& opts = {});

/// Robustness: the minimal eps such that the eps-smoothed observables are
/// jointly measurable, found by bisection over joint_feasibility.
struct RobustnessResult {
  double epsilon = 0.0;
  double log_robustness = 0.0;        // ln(1 + eps)
  double lower_bound = 0.0;           // sqrt(tau/(d-1)) - 1, clamped at 0
  std::pair<double, double> bracket;  // final (infeasible, feasible) ends
  bool inconclusive_band = false;     // solver returned inconclusive inside
};

RobustnessResult robustness(const std::vector<Povm>& ps, double tol = 1e-4,
                            const SolverOptions& opts = {});

}  // namespace incompat
