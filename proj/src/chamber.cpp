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

#include "incompat/chamber.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace incompat {

namespace {

struct RealPsdFunctions {
  Eigen::MatrixXd sqrt;
  Eigen::MatrixXd pinv_sqrt;
  Eigen::MatrixXd kernel;
};

RealPsdFunctions real_psd_split(const Eigen::MatrixXd& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  const Eigen::VectorXd vals = es.eigenvalues();
  const Eigen::MatrixXd vecs = es.eigenvectors();
  const Eigen::Index n = vals.size();
  const double cut = tol * std::max(1.0, vals.cwiseAbs().maxCoeff());
  Eigen::VectorXd sq(n), isq(n), ker(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (vals(k) < -cut) {
      throw NotPsdError("matrix is not PSD", vals(k));
    }
    if (vals(k) <= cut) {
      sq(k) = isq(k) = 0.0;
      ker(k) = 1.0;
    } else {
      sq(k) = std::sqrt(vals(k));
      isq(k) = 1.0 / sq(k);
      ker(k) = 0.0;
    }
  }
  const auto mk = [&](const Eigen::VectorXd& v) -> Eigen::MatrixXd {
    return vecs * v.asDiagonal() * vecs.transpose();
  };
  return RealPsdFunctions{mk(sq), mk(isq), mk(ker)};
}

// Fully specified uniform and normal deviates so exports are reproducible
// across standard libraries (std distributions are not pinned down).
double next_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double next_normal(std::mt19937_64& gen) {
  double u1 = next_uniform(gen);
  while (u1 <= 1e-300) u1 = next_uniform(gen);
  const double u2 = next_uniform(gen);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::Matrix3d haar_rotation(std::mt19937_64& gen) {
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g(i, j) = next_normal(gen);
  }
  const Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  Eigen::Matrix3d q = qr.householderQ();
  const Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace

bool membership_qubit(const Eigen::Matrix3d& fisher, const Eigen::Vector3d& s,
                      double tol) {
  if (s.norm() >= 1.0) {
    throw ValidationError("membership_qubit needs |s| < 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(
      0.5 * (fisher + fisher.transpose()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) return false;
  const Eigen::Matrix3d jinv = Eigen::Matrix3d::Identity() - s * s.transpose();
  return (jinv * fisher).trace() <= 1.0 + tol;
}

double gm_wmse_bound(const Eigen::MatrixXd& w, const Eigen::MatrixXd& qfi,
                     int d) {
  if (w.rows() != qfi.rows()) {
    throw DimensionError("gm_wmse_bound: matrix sizes differ");
  }
  const RealPsdFunctions jf = real_psd_split(qfi, kPsdTol);
  const Eigen::MatrixXd leak = jf.kernel * w * jf.kernel;
  if (leak.cwiseAbs().maxCoeff() > kPsdTol * std::max(1.0, w.cwiseAbs().maxCoeff())) {
    throw InfeasibleAdjustmentError(
        "weighting matrix has support outside the quantum Fisher matrix");
  }
  const Eigen::MatrixXd adjusted = jf.pinv_sqrt * w * jf.pinv_sqrt;
  const double root_trace = real_psd_split(adjusted, kPsdTol).sqrt.trace();
  return root_trace * root_trace / (d - 1.0);
}

Eigen::MatrixXd optimal_fisher(const Eigen::MatrixXd& w,
                               const Eigen::MatrixXd& qfi, int d) {
  if (w.rows() != qfi.rows()) {
    throw DimensionError("optimal_fisher: matrix sizes differ");
  }
  if (w.cwiseAbs().maxCoeff() == 0.0) {
    throw ValidationError(
        "optimal_fisher: W = 0 does not single out a direction");
  }
  const RealPsdFunctions jf = real_psd_split(qfi, kPsdTol);
  const Eigen::MatrixXd adjusted = jf.pinv_sqrt * w * jf.pinv_sqrt;
  const Eigen::MatrixXd root = real_psd_split(adjusted, kPsdTol).sqrt;
  const double denom = root.trace();
  return (d - 1.0) / denom * jf.sqrt * root * jf.sqrt;
}

MeasurementSchedule realize_qubit(const Eigen::Matrix3d& fisher,
                                  const Eigen::Vector3d& s, double tol) {
  if (!membership_qubit(fisher, s, tol)) {
    throw UnsupportedInputError(
        "realize_qubit: the Fisher matrix is outside the chamber");
  }
  const Eigen::Matrix3d jinv = Eigen::Matrix3d::Identity() - s * s.transpose();
  const double gm = (jinv * fisher).trace();
  if (std::abs(gm - 1.0) > tol) {
    throw UnsupportedInputError(
        "realize_qubit covers GM-saturating matrices only (gm_trace = 1)");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(
      0.5 * (fisher + fisher.transpose()));
  MeasurementSchedule schedule;
  for (int j = 2; j >= 0; --j) {  // descending eigenvalues
    const double a = es.eigenvalues()(j);
    if (a <= 1e-12) continue;
    const Eigen::Vector3d axis = es.eigenvectors().col(j);
    const double sj = axis.dot(s);
    schedule.entries.push_back(
        MeasurementSchedule::Entry{axis, a * (1.0 - sj * sj)});
  }
  return schedule;
}

MeasurementSchedule realize_qubit_mixed(const Eigen::Matrix3d& fisher,
                                        const Eigen::Vector3d& s, double tol) {
  if (!membership_qubit(fisher, s, tol)) {
    throw UnsupportedInputError(
        "realize_qubit_mixed: the Fisher matrix is outside the chamber");
  }
  const Eigen::Matrix3d jinv = Eigen::Matrix3d::Identity() - s * s.transpose();
  const double gm = (jinv * fisher).trace();
  if (gm <= tol) return MeasurementSchedule{};  // trivial information
  MeasurementSchedule schedule = realize_qubit(fisher / gm, s, tol);
  for (auto& e : schedule.entries) e.probability *= gm;
  return schedule;
}

Eigen::Matrix3d schedule_fisher(const MeasurementSchedule& schedule,
                                const Eigen::Vector3d& s) {
  Eigen::Matrix3d total = Eigen::Matrix3d::Zero();
  for (const MeasurementSchedule::Entry& e : schedule.entries) {
    const double sj = e.axis.dot(s);
    total += e.probability * e.axis * e.axis.transpose() / (1.0 - sj * sj);
  }
  return total;
}

std::vector<Eigen::Matrix3d> chamber_export(const Eigen::Vector3d& s,
                                            int n_samples,
                                            std::uint64_t seed) {
  if (s.norm() >= 1.0) {
    throw ValidationError("chamber_export needs |s| < 1");
  }
  const Eigen::Matrix3d qfi = qubit_qfi_bloch(s);
  const Eigen::MatrixXd j_sqrt = real_psd_split(qfi, kPsdTol).sqrt;

  std::mt19937_64 gen(seed);
  std::vector<Eigen::Matrix3d> samples;
  samples.reserve(std::max(0, n_samples));
  for (int k = 0; k < n_samples; ++k) {
    // Rank-ordered point on the spectrum simplex.
    Eigen::Vector3d lam;
    for (int i = 0; i < 3; ++i) {
      lam(i) = -std::log(std::max(next_uniform(gen), 1e-300));
    }
    lam /= lam.sum();
    std::sort(lam.data(), lam.data() + 3, std::greater<double>());

    const Eigen::Matrix3d q = haar_rotation(gen);
    const Eigen::Matrix3d adjusted = q * lam.asDiagonal() * q.transpose();
    samples.push_back(j_sqrt * adjusted * j_sqrt);
  }
  return samples;
}

}  // namespace incompat
