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

#include "incompat/estimation.hpp"

#include <cmath>
#include <sstream>

namespace incompat {

void require_param_point(const ParamPoint& pt, double tol) {
  require_hermitian(pt.rho, 1e-10);
  if (std::abs(pt.rho.trace().real() - 1.0) > 1e-10) {
    throw ValidationError("state trace differs from 1");
  }
  const double min_eig = min_eigenvalue(hermitian_part(pt.rho));
  if (min_eig < -tol) {
    throw NotPsdError("state has a negative eigenvalue", min_eig);
  }
  for (const Eigen::MatrixXcd& t : pt.tangents) {
    require_hermitian(t, 1e-10);
    if (t.rows() != pt.rho.rows()) {
      throw DimensionError("tangent dimension does not match the state");
    }
    if (std::abs(t.trace()) > 1e-10 * std::max(1.0, t.cwiseAbs().maxCoeff())) {
      throw ValidationError("tangent direction is not traceless");
    }
  }
}

Eigen::MatrixXcd sld(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& drho,
                     double tol) {
  if (rho.rows() != drho.rows() || rho.cols() != drho.cols()) {
    throw DimensionError("sld: state and tangent dimensions differ");
  }
  const EigenSystem sys = spectral_decompose(rho);
  const int d = static_cast<int>(rho.rows());
  const double cut = tol * std::max(1.0, std::abs(sys.values(0)));

  // Tangent in the eigenbasis of rho.
  const Eigen::MatrixXcd t = sys.vectors.adjoint() * drho * sys.vectors;
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());

  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const double denom = sys.values(j) + sys.values(k);
      if (denom > cut) {
        l(j, k) = 2.0 * t(j, k) / denom;
      } else if (std::abs(t(j, k)) > 10.0 * tol * scale) {
        std::ostringstream os;
        os << "tangent has weight " << std::abs(t(j, k))
           << " on the kernel of the state; no SLD exists";
        throw RankDeficiencyError(os.str());
      }
    }
  }
  return sys.vectors * l * sys.vectors.adjoint();
}

Eigen::MatrixXd qfi_matrix(const ParamPoint& pt, double tol) {
  require_param_point(pt, tol);
  const int n = pt.params();
  std::vector<Eigen::MatrixXcd> slds;
  slds.reserve(n);
  for (const Eigen::MatrixXcd& t : pt.tangents) {
    slds.push_back(sld(pt.rho, t, tol));
  }
  Eigen::MatrixXd j(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const double val = (pt.rho * slds[a] * slds[b]).trace().real();
      j(a, b) = val;
      j(b, a) = val;
    }
  }
  return j;
}

Eigen::MatrixXd fisher_matrix(const ParamPoint& pt, const Povm& p,
                              double prob_floor) {
  require_param_point(pt);
  if (p.dim() != pt.dim()) {
    throw DimensionError("fisher_matrix: POVM and state dimensions differ");
  }
  const int n = pt.params();
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(n, n);
  double scale = 0.0;
  for (const Eigen::MatrixXcd& t : pt.tangents) {
    scale = std::max(scale, t.cwiseAbs().maxCoeff());
  }
  const double numerator_tol = 1e-8 * std::max(1.0, scale);

  for (const Effect& e : p.effects) {
    const double prob = (pt.rho * e.op).trace().real();
    Eigen::VectorXd score(n);
    for (int a = 0; a < n; ++a) {
      score(a) = (pt.tangents[a] * e.op).trace().real();
    }
    if (prob <= prob_floor) {
      if (score.cwiseAbs().maxCoeff() > numerator_tol) {
        std::ostringstream os;
        os << "outcome '" << e.label << "' has probability " << prob
           << " but score " << score.cwiseAbs().maxCoeff()
           << "; the Fisher information is undefined here";
        throw SingularModelError(os.str());
      }
      continue;
    }
    info += score * score.transpose() / prob;
  }
  return info;
}

namespace {

// Support projector (columns spanning eigenvalues > tol * lambda_max) and
// pinv-sqrt data shared by metric_adjusted and gm_trace.
struct SupportSplit {
  Eigen::MatrixXd pinv;
  Eigen::MatrixXd pinv_sqrt;
  Eigen::MatrixXd kernel_projector;
};

SupportSplit split_support(const Eigen::MatrixXd& qfi, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (qfi + qfi.transpose()));
  const Eigen::VectorXd vals = solver.eigenvalues();
  const Eigen::MatrixXd vecs = solver.eigenvectors();
  const int n = static_cast<int>(vals.size());
  const double cut = tol * std::max(1.0, vals.cwiseAbs().maxCoeff());

  Eigen::VectorXd pinv_vals(n), pinv_sqrt_vals(n), kernel_vals(n);
  for (int k = 0; k < n; ++k) {
    if (vals(k) < -cut) {
      throw NotPsdError("quantum Fisher matrix has a negative eigenvalue",
                        vals(k));
    }
    if (vals(k) <= cut) {
      pinv_vals(k) = pinv_sqrt_vals(k) = 0.0;
      kernel_vals(k) = 1.0;
    } else {
      pinv_vals(k) = 1.0 / vals(k);
      pinv_sqrt_vals(k) = 1.0 / std::sqrt(vals(k));
      kernel_vals(k) = 0.0;
    }
  }
  return SupportSplit{vecs * pinv_vals.asDiagonal() * vecs.transpose(),
                      vecs * pinv_sqrt_vals.asDiagonal() * vecs.transpose(),
                      vecs * kernel_vals.asDiagonal() * vecs.transpose()};
}

void require_supported(const Eigen::MatrixXd& fisher,
                       const SupportSplit& split, double tol) {
  const Eigen::MatrixXd leak =
      split.kernel_projector * fisher * split.kernel_projector;
  const double scale = std::max(1.0, fisher.cwiseAbs().maxCoeff());
  if (leak.cwiseAbs().maxCoeff() > tol * scale) {
    throw InfeasibleAdjustmentError(
        "Fisher matrix has support outside the support of the quantum "
        "Fisher matrix");
  }
}

}  // namespace

Eigen::MatrixXd metric_adjusted(const Eigen::MatrixXd& fisher,
                                const Eigen::MatrixXd& qfi, double tol) {
  if (fisher.rows() != qfi.rows()) {
    throw DimensionError("metric_adjusted: matrix sizes differ");
  }
  const SupportSplit split = split_support(qfi, tol);
  require_supported(fisher, split, tol);
  Eigen::MatrixXd adj = split.pinv_sqrt * fisher * split.pinv_sqrt;
  return 0.5 * (adj + adj.transpose());
}

double gm_trace(const Eigen::MatrixXd& fisher, const Eigen::MatrixXd& qfi,
                double tol) {
  if (fisher.rows() != qfi.rows()) {
    throw DimensionError("gm_trace: matrix sizes differ");
  }
  const SupportSplit split = split_support(qfi, tol);
  require_supported(fisher, split, tol);
  return (split.pinv * fisher).trace();
}

FrameSuperoperators frame_superoperators(const Povm& p) {
  return frame_superoperators(p, OperatorBasis::gell_mann(p.dim()));
}

FrameSuperoperators frame_superoperators(const Povm& p,
                                         const OperatorBasis& basis) {
  require_valid(p);
  if (basis.dim != p.dim()) {
    throw DimensionError("frame_superoperators: basis dimension mismatch");
  }
  const int n = basis.size();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (const Effect& e : p.effects) {
    const double tr = e.op.trace().real();
    if (tr <= kPsdTol) continue;  // zero effect
    const Eigen::VectorXd v = vectorize(e.op, basis);
    g.noalias() += v * v.transpose() / tr;
  }
  FrameSuperoperators so;
  so.g = g;
  so.gbar = g;
  so.gbar.row(0).setZero();
  so.gbar.col(0).setZero();
  return so;
}

ParamPoint full_param_point(const Eigen::MatrixXcd& rho,
                            const OperatorBasis& basis) {
  ParamPoint pt;
  pt.rho = rho;
  pt.tangents.assign(basis.elements.begin() + 1, basis.elements.end());
  require_param_point(pt);
  return pt;
}

ParamPoint full_param_point(const Eigen::MatrixXcd& rho) {
  return full_param_point(rho,
                          OperatorBasis::gell_mann(static_cast<int>(rho.rows())));
}

ParamPoint bloch_param_point(const Eigen::Vector3d& s) {
  if (s.norm() > 1.0 + 1e-12) {
    throw ValidationError("Bloch vector must have norm <= 1");
  }
  ParamPoint pt;
  pt.rho = 0.5 * (Eigen::Matrix2cd::Identity() + pauli_dot(s));
  pt.tangents = {0.5 * pauli_x(), 0.5 * pauli_y(), 0.5 * pauli_z()};
  return pt;
}

Eigen::Matrix3d qubit_qfi_bloch(const Eigen::Vector3d& s) {
  if (s.norm() >= 1.0) {
    throw ValidationError("qubit_qfi_bloch needs |s| < 1");
  }
  const Eigen::Matrix3d jinv =
      Eigen::Matrix3d::Identity() - s * s.transpose();
  return jinv.inverse();
}

}  // namespace incompat
