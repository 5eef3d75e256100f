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
#include <complex>
#include <random>
#include <vector>

#include "incompat/estimation.hpp"
#include "incompat/operator_core.hpp"
#include "incompat/povm.hpp"

// Seeded generators and independent oracles shared by the unit and
// acceptance suites.

namespace incompat::testing {

inline Eigen::MatrixXcd random_ginibre(std::mt19937_64& gen, int d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      g(i, j) = std::complex<double>(normal(gen), normal(gen));
    }
  }
  return g;
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& gen, int d,
                                         double scale = 1.0) {
  const Eigen::MatrixXcd g = random_ginibre(gen, d);
  return scale * 0.5 * (g + g.adjoint().eval());
}

inline Eigen::MatrixXcd random_psd(std::mt19937_64& gen, int d,
                                   double scale = 1.0) {
  const Eigen::MatrixXcd g = random_ginibre(gen, d);
  return scale * (g * g.adjoint()) / d;
}

inline Eigen::MatrixXd random_real_psd(std::mt19937_64& gen, int n,
                                       double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(gen);
  }
  return scale * (g * g.transpose()) / n;
}

inline Eigen::MatrixXcd random_state(std::mt19937_64& gen, int d) {
  const Eigen::MatrixXcd p = random_psd(gen, d);
  return p / p.trace().real();
}

inline Eigen::MatrixXcd random_unitary(std::mt19937_64& gen, int d) {
  const Eigen::MatrixXcd g = random_ginibre(gen, d);
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    q.col(j) *= r(j, j) / std::abs(r(j, j));
  }
  return q;
}

// Random POVM: normalize a set of random PSD operators by the inverse
// square root of their sum.
inline Povm random_povm(std::mt19937_64& gen, int d, int outcomes) {
  std::vector<Eigen::MatrixXcd> raw;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < outcomes; ++k) {
    raw.push_back(random_psd(gen, d));
    sum += raw.back();
  }
  const Eigen::MatrixXcd w = psd_functions(sum).pinv_sqrt;
  Povm p;
  for (int k = 0; k < outcomes; ++k) {
    p.effects.push_back(Effect{std::to_string(k), w * raw[k] * w});
  }
  return p;
}

// Same normalization applied to rank-one seeds keeps every effect rank one.
inline Povm random_rank_one_povm(std::mt19937_64& gen, int d, int outcomes) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::VectorXcd> kets;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < outcomes; ++k) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) {
      v(i) = std::complex<double>(normal(gen), normal(gen));
    }
    kets.push_back(v);
    sum += v * v.adjoint();
  }
  const Eigen::MatrixXcd w = psd_functions(sum).pinv_sqrt;
  Povm p;
  for (int k = 0; k < outcomes; ++k) {
    const Eigen::VectorXcd u = w * kets[k];
    p.effects.push_back(Effect{std::to_string(k), u * u.adjoint()});
  }
  return p;
}

inline StochasticMatrix random_stochastic(std::mt19937_64& gen, int rows,
                                          int cols) {
  std::exponential_distribution<double> expo(1.0);
  StochasticMatrix lam;
  lam.entries.resize(rows, cols);
  for (int c = 0; c < cols; ++c) {
    double total = 0.0;
    for (int r = 0; r < rows; ++r) {
      lam.entries(r, c) = expo(gen);
      total += lam.entries(r, c);
    }
    lam.entries.col(c) /= total;
  }
  return lam;
}

inline Eigen::Vector3d random_unit_vector3(std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Vector3d v(normal(gen), normal(gen), normal(gen));
  while (v.norm() < 1e-6) v = Eigen::Vector3d(normal(gen), normal(gen), normal(gen));
  return v.normalized();
}

inline Eigen::Vector3d random_ball_vector3(std::mt19937_64& gen,
                                           double radius = 1.0) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const Eigen::Vector3d dir = random_unit_vector3(gen);
  return radius * std::cbrt(uni(gen)) * dir;
}

// Independent Fisher-information oracle: central differences of the outcome
// probabilities along the linear path rho + sum_j theta_j T_j.
inline Eigen::MatrixXd fisher_finite_difference(const ParamPoint& pt,
                                                const Povm& p,
                                                double step = 1e-5) {
  const int n = pt.params();
  const int m = p.outcomes();
  Eigen::MatrixXd scores(n, m);
  Eigen::VectorXd probs(m);
  for (int xi = 0; xi < m; ++xi) {
    probs(xi) = (pt.rho * p.effects[xi].op).trace().real();
    for (int j = 0; j < n; ++j) {
      const Eigen::MatrixXcd up = pt.rho + step * pt.tangents[j];
      const Eigen::MatrixXcd dn = pt.rho - step * pt.tangents[j];
      const double pu = (up * p.effects[xi].op).trace().real();
      const double pd = (dn * p.effects[xi].op).trace().real();
      scores(j, xi) = (pu - pd) / (2.0 * step);
    }
  }
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(n, n);
  for (int xi = 0; xi < m; ++xi) {
    if (probs(xi) <= 1e-12) continue;
    info += scores.col(xi) * scores.col(xi).transpose() / probs(xi);
  }
  return info;
}

}  // namespace incompat::testing
