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

#include "incompat/operator_core.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace incompat {

namespace {

using std::complex;

}  // namespace

void require_hermitian(const Eigen::MatrixXcd& h, double tol) {
  if (h.rows() != h.cols()) {
    std::ostringstream os;
    os << "expected a square matrix, got " << h.rows() << "x" << h.cols();
    throw DimensionError(os.str());
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < h.rows(); ++j) {
    for (Eigen::Index k = j; k < h.cols(); ++k) {
      const double dev = std::abs(h(j, k) - std::conj(h(k, j)));
      if (dev > tol * scale) {
        std::ostringstream os;
        os << "matrix is not Hermitian: entry (" << j << "," << k
           << ") deviates from conj of (" << k << "," << j << ") by " << dev;
        throw ValidationError(os.str());
      }
    }
  }
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& h) {
  return 0.5 * (h + h.adjoint().eval());
}

EigenSystem spectral_decompose(const Eigen::MatrixXcd& h, double herm_tol) {
  require_hermitian(h, herm_tol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw Error("Hermitian eigendecomposition failed to converge");
  }
  // Eigen sorts ascending; flip to descending.
  const Eigen::Index n = h.rows();
  EigenSystem sys;
  sys.values = solver.eigenvalues().reverse();
  sys.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    sys.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return sys;
}

PsdFunctions psd_functions(const Eigen::MatrixXcd& h, double tol) {
  const EigenSystem sys = spectral_decompose(h);
  const Eigen::Index n = sys.values.size();
  const double scale = (n > 0) ? std::max(std::abs(sys.values(0)),
                                          std::abs(sys.values(n - 1)))
                               : 0.0;
  const double cut = tol * std::max(1.0, scale);

  Eigen::VectorXd sqrt_vals(n), pinv_vals(n), pinv_sqrt_vals(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lam = sys.values(k);
    if (lam < -cut) {
      std::ostringstream os;
      os << "matrix is not PSD: eigenvalue " << lam << " below -" << cut;
      throw NotPsdError(os.str(), lam);
    }
    if (lam <= cut) {
      sqrt_vals(k) = pinv_vals(k) = pinv_sqrt_vals(k) = 0.0;
    } else {
      sqrt_vals(k) = std::sqrt(lam);
      pinv_vals(k) = 1.0 / lam;
      pinv_sqrt_vals(k) = 1.0 / std::sqrt(lam);
    }
  }
  const auto reassemble = [&](const Eigen::VectorXd& vals) -> Eigen::MatrixXcd {
    return sys.vectors * vals.asDiagonal() * sys.vectors.adjoint();
  };
  return PsdFunctions{reassemble(sqrt_vals), reassemble(pinv_vals),
                      reassemble(pinv_sqrt_vals)};
}

double trace_norm(const Eigen::MatrixXcd& h) {
  return spectral_decompose(h).values.cwiseAbs().sum();
}

double operator_norm(const Eigen::MatrixXcd& h) {
  const EigenSystem sys = spectral_decompose(h);
  if (sys.values.size() == 0) return 0.0;
  return sys.values.cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Eigen::MatrixXcd& h) {
  const EigenSystem sys = spectral_decompose(h);
  if (sys.values.size() == 0) return 0.0;
  return sys.values(sys.values.size() - 1);
}

OperatorBasis OperatorBasis::gell_mann(int dim) {
  if (dim < 1) throw DimensionError("operator basis needs dim >= 1");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  OperatorBasis basis;
  basis.dim = dim;
  basis.elements.reserve(static_cast<std::size_t>(dim) * dim);

  basis.elements.push_back(Eigen::MatrixXcd::Identity(dim, dim) /
                           std::sqrt(static_cast<double>(dim)));
  // Symmetric then antisymmetric off-diagonal pairs, lexicographic.
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim, dim);
      x(j, k) = inv_sqrt2;
      x(k, j) = inv_sqrt2;
      basis.elements.push_back(x);
      Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(dim, dim);
      y(j, k) = complex<double>(0.0, -inv_sqrt2);
      y(k, j) = complex<double>(0.0, inv_sqrt2);
      basis.elements.push_back(y);
    }
  }
  // Diagonal traceless elements diag(1,..,1,-l,0,..)/sqrt(l(l+1)).
  for (int l = 1; l < dim; ++l) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) d(j, j) = norm;
    d(l, l) = -static_cast<double>(l) * norm;
    basis.elements.push_back(d);
  }
  return basis;
}

Eigen::VectorXd vectorize(const Eigen::MatrixXcd& h, const OperatorBasis& basis) {
  if (h.rows() != basis.dim || h.cols() != basis.dim) {
    throw DimensionError("vectorize: operator dimension does not match basis");
  }
  Eigen::VectorXd coords(basis.size());
  for (int k = 0; k < basis.size(); ++k) {
    coords(k) = (basis.elements[k].adjoint() * h).trace().real();
  }
  return coords;
}

Eigen::MatrixXcd devectorize(const Eigen::VectorXd& coords,
                             const OperatorBasis& basis) {
  if (coords.size() != basis.size()) {
    throw DimensionError("devectorize: coordinate count does not match basis");
  }
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(basis.dim, basis.dim);
  for (int k = 0; k < basis.size(); ++k) {
    h += coords(k) * basis.elements[k];
  }
  return h;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, complex<double>(0, -1), complex<double>(0, 1), 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd pauli_dot(const Eigen::Vector3d& a) {
  return a.x() * pauli_x() + a.y() * pauli_y() + a.z() * pauli_z();
}

}  // namespace incompat
