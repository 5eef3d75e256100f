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
#include <cstdint>
#include <vector>

#include "incompat/estimation.hpp"

namespace incompat {

/// True iff a hypothetical 3x3 Fisher matrix is realizable by some qubit
/// measurement at Bloch point s: I >= 0 and tr((1 - s s^T) I) <= 1. For the
/// qubit this Gill-Massar condition is both necessary and sufficient.
bool membership_qubit(const Eigen::Matrix3d& fisher, const Eigen::Vector3d& s,
                      double tol = 1e-9);

/// Gill-Massar lower bound (tr sqrt(J^-1/2 W J^-1/2))^2 / (d-1) on the
/// weighted mean square error for weighting matrix W.
double gm_wmse_bound(const Eigen::MatrixXd& w, const Eigen::MatrixXd& qfi,
                     int d);

/// The Fisher matrix saturating the bound,
///   I_W = (d-1) J^1/2 sqrt(J^-1/2 W J^-1/2) J^1/2
///         / tr sqrt(J^-1/2 W J^-1/2).
/// Always saturates the GM trace at d-1. W = 0 has no preferred direction
/// and raises ValidationError.
Eigen::MatrixXd optimal_fisher(const Eigen::MatrixXd& w,
                               const Eigen::MatrixXd& qfi, int d);

/// A mixture of projective qubit measurements: measure along each axis with
/// the given probability.
struct MeasurementSchedule {
  struct Entry {
    Eigen::Vector3d axis;
    double probability;
  };
  std::vector<Entry> entries;

  double total_probability() const {
    double total = 0.0;
    for (const Entry& e : entries) total += e.probability;
    return total;
  }
};

/// Realization of a GM-saturating qubit Fisher matrix by (up to) three
/// mutually unbiased projective measurements: eigendecompose I into axes
/// r_j with eigenvalues a_j and measure r_j . sigma with probability
/// a_j (1 - (r_j . s)^2). Requires membership and gm_trace = 1 within tol;
/// the realization formula covers only the chamber boundary.
MeasurementSchedule realize_qubit(const Eigen::Matrix3d& fisher,
                                  const Eigen::Vector3d& s, double tol = 1e-7);

/// Interior matrices (gm_trace < 1) are realized by scaling up to the
/// boundary and mixing with the trivial measurement: the schedule
/// probabilities sum to gm_trace(I) and the remainder is spent measuring
/// nothing. One convention among the possible realizations.
MeasurementSchedule realize_qubit_mixed(const Eigen::Matrix3d& fisher,
                                        const Eigen::Vector3d& s,
                                        double tol = 1e-7);

/// Fisher matrix of the schedule at Bloch point s: the probability-weighted
/// sum of the sharp-measurement Fisher matrices r r^T / (1 - (r.s)^2).
Eigen::Matrix3d schedule_fisher(const MeasurementSchedule& schedule,
                                const Eigen::Vector3d& s);

/// Deterministic quasi-uniform sample of the chamber boundary
/// { I >= 0, tr(J^-1 I) = 1 } at Bloch point s: random rank-ordered spectra
/// combined with rotation frames drawn from a seeded generator.
std::vector<Eigen::Matrix3d> chamber_export(const Eigen::Vector3d& s,
                                            int n_samples, std::uint64_t seed);

}  // namespace incompat
