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

#include "incompat/errors.hpp"

namespace incompat {

/// Default tolerance for Hermiticity checks, relative to the largest
/// absolute entry.
inline constexpr double kHermitianTol = 1e-12;

/// Default tolerance for positive semidefiniteness, relative to the largest
/// eigenvalue magnitude.
inline constexpr double kPsdTol = 1e-9;

/// Throws ValidationError naming the offending entry if H is not Hermitian
/// within tol * max(1, max |entry|).
void require_hermitian(const Eigen::MatrixXcd& h, double tol = kHermitianTol);

/// Hermitian part (H + H^dag)/2.
Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& h);

/// Eigendecomposition of a Hermitian operator, eigenvalues sorted in
/// descending order, eigenvectors as orthonormal columns.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;

  Eigen::MatrixXcd reconstruct() const {
    return vectors * values.asDiagonal() * vectors.adjoint();
  }
};

/// Spectral decomposition of a Hermitian matrix. Validates Hermiticity.
EigenSystem spectral_decompose(const Eigen::MatrixXcd& h,
                               double herm_tol = kHermitianTol);

/// Matrix functions of a PSD operator computed on its support. Eigenvalues
/// in (-tol, tol) are treated as zero; an eigenvalue below -tol raises
/// NotPsdError. tol is relative to the largest eigenvalue.
struct PsdFunctions {
  Eigen::MatrixXcd sqrt;       // sqrt * sqrt = H on the support
  Eigen::MatrixXcd pinv;       // Moore-Penrose generalized inverse
  Eigen::MatrixXcd pinv_sqrt;  // pinv_sqrt^2 = pinv on the support
};

PsdFunctions psd_functions(const Eigen::MatrixXcd& h, double tol = kPsdTol);

/// Sum of absolute eigenvalues of a Hermitian matrix; equals the trace when
/// the matrix is PSD.
double trace_norm(const Eigen::MatrixXcd& h);

/// Operator norm (largest absolute eigenvalue) of a Hermitian matrix.
double operator_norm(const Eigen::MatrixXcd& h);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Eigen::MatrixXcd& h);

/// Orthonormal Hermitian operator basis for the Hilbert-Schmidt inner
/// product tr(E^dag F). Element 0 is identity/sqrt(d); elements 1..d^2-1 are
/// the generalized Gell-Mann matrices (traceless). For d = 2 the order is
/// identity, sigma_x, sigma_y, sigma_z, each divided by sqrt(2), so
/// coordinates 1..3 are Bloch components scaled by 1/sqrt(2).
struct OperatorBasis {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> elements;

  static OperatorBasis gell_mann(int dim);

  int size() const { return static_cast<int>(elements.size()); }
};

/// Real Hilbert-Schmidt coordinates c_k = tr(B_k H) of a Hermitian operator.
Eigen::VectorXd vectorize(const Eigen::MatrixXcd& h, const OperatorBasis& basis);

/// Inverse of vectorize.
Eigen::MatrixXcd devectorize(const Eigen::VectorXd& coords,
                             const OperatorBasis& basis);

/// Pauli matrices and common fixed operators.
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();

/// a . sigma for a real 3-vector.
Eigen::Matrix2cd pauli_dot(const Eigen::Vector3d& a);

}  // namespace incompat
