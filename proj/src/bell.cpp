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

#include "incompat/bell.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace incompat {

namespace {

// Projector onto the +1 eigenspace; validates the +-1 spectrum.
Eigen::MatrixXcd plus_projector(const SharpObservable& obs, double tol) {
  const int d = obs.dim();
  Eigen::MatrixXcd plus = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& p : obs.projectors) {
    if (std::abs(p.eigenvalue - 1.0) <= tol) {
      plus += p.proj;
    } else if (std::abs(p.eigenvalue + 1.0) > tol) {
      std::ostringstream os;
      os << "observable is not +-1 valued: eigenvalue " << p.eigenvalue;
      throw ValidationError(os.str());
    }
  }
  return plus;
}

}  // namespace

double chsh_max_qubit(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  if (std::abs(a.norm() - 1.0) > 1e-9 || std::abs(b.norm() - 1.0) > 1e-9) {
    throw ValidationError("chsh_max_qubit needs unit Bloch vectors");
  }
  const double sin_theta = a.cross(b).norm() / (a.norm() * b.norm());
  return std::sqrt(1.0 + sin_theta);
}

ChshResult chsh_max_general(const SharpObservable& a,
                            const SharpObservable& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("chsh_max_general: dimension mismatch");
  }
  const double spec_tol = 1e-9;
  const Eigen::MatrixXcd ap = plus_projector(a, spec_tol);
  const Eigen::MatrixXcd bp = plus_projector(b, spec_tol);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      ap * bp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();

  ChshResult res;
  res.angles.reserve(sv.size());
  int best = -1;
  double best_sin = 0.0;
  std::vector<double> angles_by_sv(sv.size());
  for (int j = 0; j < sv.size(); ++j) {
    const double c = std::clamp(sv(j), 0.0, 1.0);
    const double theta = 2.0 * std::acos(c);
    angles_by_sv[j] = theta;
    const double s = std::sin(theta);
    if (s > best_sin + 1e-15) {
      best_sin = s;
      best = j;
    }
  }

  if (best < 0 || best_sin <= 1e-12) {
    // Commuting pair: every angle is 0 or pi, no violation, no subspace.
    res.max_violation = 1.0;
    res.angles = std::move(angles_by_sv);
    return res;
  }

  res.max_violation = std::sqrt(1.0 + best_sin);
  res.angles.push_back(angles_by_sv[best]);
  for (int j = 0; j < sv.size(); ++j) {
    if (j != best) res.angles.push_back(angles_by_sv[j]);
  }
  res.psi = svd.matrixU().col(best);
  res.phi = svd.matrixV().col(best);
  res.has_subspace = true;
  return res;
}

double chsh_commutator_bound(const SharpObservable& a,
                             const SharpObservable& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("chsh_commutator_bound: dimension mismatch");
  }
  plus_projector(a, 1e-9);
  plus_projector(b, 1e-9);
  const Eigen::MatrixXcd comm = a.op * b.op - b.op * a.op;
  // [A, B] is anti-Hermitian; i[A, B] is Hermitian with the same spectral
  // norm.
  const Eigen::MatrixXcd herm = std::complex<double>(0.0, 1.0) * comm;
  return std::sqrt(1.0 + 0.5 * operator_norm(herm));
}

}  // namespace incompat
