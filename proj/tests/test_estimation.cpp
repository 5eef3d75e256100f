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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "incompat/estimation.hpp"
#include "support.hpp"

using namespace incompat;

namespace {

Povm trivial_povm(int d) {
  Povm p;
  p.effects.push_back(Effect{"0", Eigen::MatrixXcd::Identity(d, d)});
  return p;
}

}  // namespace

TEST_CASE("sld closed forms at the maximally mixed state") {
  const Eigen::MatrixXcd rho = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  CHECK((sld(rho, 0.5 * pauli_z()) - pauli_z()).norm() <= 1e-12);

  // rho = 1/2, drho = sigma_x/2 gives L = sigma_x and J = tr(rho L^2) = 1.
  const Eigen::MatrixXcd lx = sld(rho, 0.5 * pauli_x());
  CHECK((lx - pauli_x()).norm() <= 1e-12);
  CHECK((rho * lx * lx).trace().real() == doctest::Approx(1.0));
}

TEST_CASE("sld solves the diagonal Lyapunov equation") {
  const double p = 0.3;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = p;
  rho(1, 1) = 1.0 - p;
  const Eigen::MatrixXcd drho = 0.5 * pauli_z();
  const Eigen::MatrixXcd l = sld(rho, drho);
  CHECK(l(0, 0).real() == doctest::Approx(1.0 / (2.0 * p)));
  CHECK(l(1, 1).real() == doctest::Approx(-1.0 / (2.0 * (1.0 - p))));
  CHECK(std::abs(l(0, 1)) <= 1e-14);
}

TEST_CASE("sld residual stays below tolerance on random full-rank inputs") {
  std::mt19937_64 gen(31);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::MatrixXcd rho = testing::random_state(gen, 4);
    Eigen::MatrixXcd drho = testing::random_hermitian(gen, 4);
    drho -= drho.trace().real() / 4.0 * Eigen::MatrixXcd::Identity(4, 4);
    const Eigen::MatrixXcd l = sld(rho, drho, 1e-9);
    const double residual = (drho - 0.5 * (rho * l + l * rho)).norm();
    CHECK(residual <= 1e-8);
  }
}

TEST_CASE("sld rejects tangents leaving the state's support") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 1.0;  // pure state, kernel along |1>
  CHECK_THROWS_AS(sld(rho, 0.5 * pauli_z()), RankDeficiencyError);
  // A tangent with no kernel-kernel weight is fine.
  CHECK_NOTHROW(sld(rho, 0.5 * pauli_x()));
}

TEST_CASE("qubit QFI matches the Bloch closed form") {
  const ParamPoint center = bloch_param_point(Eigen::Vector3d::Zero());
  CHECK((qfi_matrix(center) - Eigen::Matrix3d::Identity()).norm() <= 1e-12);

  const Eigen::Vector3d s(0.6, 0.0, 0.0);
  const Eigen::Matrix3d j = qfi_matrix(bloch_param_point(s));
  Eigen::Matrix3d expected = Eigen::Matrix3d::Identity();
  expected(0, 0) = 1.0 / 0.64;
  CHECK((j - expected).norm() <= 1e-12);
  CHECK((j - qubit_qfi_bloch(s)).norm() <= 1e-12);
}

TEST_CASE("qubit QFI closed form holds at random Bloch points") {
  std::mt19937_64 gen(32);
  for (int rep = 0; rep < 50; ++rep) {
    const Eigen::Vector3d s = testing::random_ball_vector3(gen, 0.95);
    const Eigen::Matrix3d j = qfi_matrix(bloch_param_point(s));
    CHECK((j - qubit_qfi_bloch(s)).norm() <= 1e-9 * (1.0 + j.norm()));
  }
}

TEST_CASE("QFI solver reports rank deficiency at the pure-state boundary") {
  CHECK_THROWS_AS(qfi_matrix(bloch_param_point(Eigen::Vector3d::UnitZ())),
                  RankDeficiencyError);
}

TEST_CASE("Fisher matrix of the sharp z measurement at the center") {
  const ParamPoint pt = bloch_param_point(Eigen::Vector3d::Zero());
  const Eigen::MatrixXd info =
      fisher_matrix(pt, pauli_povm(Eigen::Vector3d::UnitZ()));
  Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
  expected(2, 2) = 1.0;
  CHECK((info - expected).norm() <= 1e-12);
}

TEST_CASE("trivial POVM provides no Fisher information") {
  const ParamPoint pt = bloch_param_point(Eigen::Vector3d(0.1, 0.2, 0.3));
  CHECK(fisher_matrix(pt, trivial_povm(2)).norm() <= 1e-14);
}

TEST_CASE("depolarization scales the Fisher matrix by eta squared") {
  std::mt19937_64 gen(33);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + rep % 2;
    const ParamPoint pt =
        full_param_point(Eigen::MatrixXcd::Identity(d, d) / d);
    const Povm p = testing::random_povm(gen, d, 3);
    const double eta = 0.65;
    const Eigen::MatrixXd base = fisher_matrix(pt, p);
    const Eigen::MatrixXd noisy = fisher_matrix(pt, depolarize(p, eta));
    CHECK((noisy - eta * eta * base).cwiseAbs().maxCoeff() <=
          1e-10 * (1.0 + base.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("fisher_matrix raises on singular models instead of clamping") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 1.0;
  ParamPoint pt;
  pt.rho = rho;
  pt.tangents = {0.5 * pauli_z()};
  CHECK_THROWS_AS(fisher_matrix(pt, pauli_povm(Eigen::Vector3d::UnitZ())),
                  SingularModelError);
}

TEST_CASE("finite-difference probabilities reproduce the Fisher matrix") {
  std::mt19937_64 gen(34);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + rep % 3;
    ParamPoint pt;
    pt.rho = testing::random_state(gen, d);
    const OperatorBasis basis = OperatorBasis::gell_mann(d);
    pt.tangents.assign(basis.elements.begin() + 1, basis.elements.end());
    const Povm p = testing::random_povm(gen, d, d + 1);
    const Eigen::MatrixXd exact = fisher_matrix(pt, p);
    const Eigen::MatrixXd fd = testing::fisher_finite_difference(pt, p);
    CHECK((exact - fd).cwiseAbs().maxCoeff() <=
          1e-5 * (1.0 + exact.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("SLD bound: no measurement beats the quantum Fisher matrix") {
  std::mt19937_64 gen(35);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rep % 2;
    ParamPoint pt = full_param_point(testing::random_state(gen, d));
    const Povm p = testing::random_povm(gen, d, d + 1);
    const Eigen::MatrixXd gap = qfi_matrix(pt) - fisher_matrix(pt, p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gap,
                                                      Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("data processing never increases Fisher information") {
  std::mt19937_64 gen(36);
  for (int rep = 0; rep < 20; ++rep) {
    const ParamPoint pt = full_param_point(testing::random_state(gen, 2));
    const Povm p = testing::random_povm(gen, 2, 4);
    const StochasticMatrix lam = testing::random_stochastic(gen, 3, 4);
    const Eigen::MatrixXd drop =
        fisher_matrix(pt, p) - fisher_matrix(pt, coarse_grain(p, lam));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(drop,
                                                      Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-8);
  }
}

TEST_CASE("splitting an outcome leaves the Fisher matrix unchanged") {
  std::mt19937_64 gen(37);
  const ParamPoint pt = full_param_point(testing::random_state(gen, 3));
  const Povm p = testing::random_povm(gen, 3, 3);
  Povm split;
  split.effects.push_back(Effect{"0a", 0.5 * p.effects[0].op});
  split.effects.push_back(Effect{"0b", 0.5 * p.effects[0].op});
  for (int k = 1; k < p.outcomes(); ++k) split.effects.push_back(p.effects[k]);
  CHECK((fisher_matrix(pt, p) - fisher_matrix(pt, split)).cwiseAbs().maxCoeff()
        <= 1e-12);
}

TEST_CASE("I, J, and the GM trace are unitarily covariant") {
  std::mt19937_64 gen(38);
  const int d = 3;
  const Eigen::MatrixXcd u = testing::random_unitary(gen, d);
  ParamPoint pt;
  pt.rho = testing::random_state(gen, d);
  const OperatorBasis basis = OperatorBasis::gell_mann(d);
  pt.tangents.assign(basis.elements.begin() + 1, basis.elements.end());
  const Povm p = testing::random_povm(gen, d, 4);

  ParamPoint rotated;
  rotated.rho = u * pt.rho * u.adjoint();
  for (const Eigen::MatrixXcd& t : pt.tangents) {
    rotated.tangents.push_back(u * t * u.adjoint());
  }
  const Povm rotated_povm = conjugate(p, u);

  const Eigen::MatrixXd i1 = fisher_matrix(pt, p);
  const Eigen::MatrixXd i2 = fisher_matrix(rotated, rotated_povm);
  CHECK((i1 - i2).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + i1.norm()));
  const Eigen::MatrixXd j1 = qfi_matrix(pt);
  const Eigen::MatrixXd j2 = qfi_matrix(rotated);
  CHECK((j1 - j2).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + j1.norm()));
  CHECK(gm_trace(i1, j1) == doctest::Approx(gm_trace(i2, j2)).epsilon(1e-9));
}

TEST_CASE("metric adjustment fixed points and the SLD cap") {
  const ParamPoint center = bloch_param_point(Eigen::Vector3d::Zero());
  const Povm z = pauli_povm(Eigen::Vector3d::UnitZ());
  const Eigen::MatrixXd info = fisher_matrix(center, z);
  const Eigen::MatrixXd qfi = qfi_matrix(center);
  const Eigen::MatrixXd adjusted = metric_adjusted(info, qfi);
  CHECK((adjusted - info).norm() <= 1e-12);  // J = identity
  CHECK(gm_trace(info, qfi) == doctest::Approx(1.0));

  std::mt19937_64 gen(39);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Vector3d s = testing::random_ball_vector3(gen, 0.9);
    const ParamPoint pt = bloch_param_point(s);
    const Povm p = pauli_povm(testing::random_unit_vector3(gen));
    const Eigen::MatrixXd adj =
        metric_adjusted(fisher_matrix(pt, p), qfi_matrix(pt));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adj,
                                                      Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-8);
    CHECK(adj.trace() <= 1.0 + 1e-8);  // GM with d = 2
  }
}

TEST_CASE("metric adjustment rejects support violations") {
  Eigen::MatrixXd qfi = Eigen::MatrixXd::Zero(2, 2);
  qfi(0, 0) = 1.0;
  CHECK_THROWS_AS(metric_adjusted(Eigen::MatrixXd::Identity(2, 2), qfi),
                  InfeasibleAdjustmentError);
}

TEST_CASE("GM trace: trivial POVM, rank-one saturation, qutrit basis") {
  const int d = 3;
  const ParamPoint pt = full_param_point(Eigen::MatrixXcd::Identity(d, d) / d);
  const Eigen::MatrixXd qfi = qfi_matrix(pt);
  CHECK(gm_trace(fisher_matrix(pt, trivial_povm(d)), qfi) ==
        doctest::Approx(0.0));

  // Computational-basis measurement: an instance of rank-one saturation.
  const auto [comp, four] = fourier_pair(d);
  CHECK(gm_trace(fisher_matrix(pt, comp), qfi) == doctest::Approx(2.0));

  std::mt19937_64 gen(40);
  for (int rep = 0; rep < 10; ++rep) {
    const Povm p = testing::random_rank_one_povm(gen, d, d + 2);
    CHECK(gm_trace(fisher_matrix(pt, p), qfi) ==
          doctest::Approx(d - 1.0).epsilon(1e-8));
  }
}

TEST_CASE("frame superoperator of the sharp z measurement") {
  const FrameSuperoperators so =
      frame_superoperators(pauli_povm(Eigen::Vector3d::UnitZ()));
  // In (identity, x, y, z) coordinates gbar is the unit projector on z.
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  expected(3, 3) = 1.0;
  CHECK((so.gbar - expected).norm() <= 1e-12);
  CHECK(so.g.trace() == doctest::Approx(2.0));  // rank-one effects: Tr g = d
}

TEST_CASE("frame superoperator traces and the von Neumann projector") {
  std::mt19937_64 gen(41);
  for (int d : {2, 3, 4}) {
    const Povm rank_one = testing::random_rank_one_povm(gen, d, d + 1);
    const FrameSuperoperators so = frame_superoperators(rank_one);
    CHECK(so.g.trace() == doctest::Approx(static_cast<double>(d)));
    CHECK(so.gbar.trace() == doctest::Approx(so.g.trace() - 1.0));

    const Povm generic = testing::random_povm(gen, d, d + 1);
    const FrameSuperoperators so2 = frame_superoperators(generic);
    CHECK(so2.g.trace() <= d + 1e-9);
    CHECK(so2.gbar.trace() == doctest::Approx(so2.g.trace() - 1.0));

    // Nondegenerate sharp observable: gbar is a rank-(d-1) projector.
    const SharpObservable obs =
        from_observable(testing::random_hermitian(gen, d));
    const Eigen::MatrixXd gbar =
        frame_superoperators(sharp_povm(obs)).gbar_traceless();
    CHECK((gbar * gbar - gbar).norm() <= 1e-10);
    CHECK(gbar.trace() == doctest::Approx(d - 1.0));
  }
}

TEST_CASE("full_param_point carries the traceless basis as tangents") {
  CHECK(full_param_point(0.5 * Eigen::MatrixXcd::Identity(2, 2)).params() == 3);
  CHECK(full_param_point(Eigen::MatrixXcd::Identity(3, 3) / 3.0).params() == 8);
}

TEST_CASE("GM trace at the mixed full point equals the gbar trace") {
  std::mt19937_64 gen(42);
  for (int d : {2, 3}) {
    const ParamPoint pt =
        full_param_point(Eigen::MatrixXcd::Identity(d, d) / d);
    const Eigen::MatrixXd qfi = qfi_matrix(pt);
    for (int rep = 0; rep < 5; ++rep) {
      const Povm p = testing::random_povm(gen, d, d + 1);
      const double lhs = gm_trace(fisher_matrix(pt, p), qfi);
      const double rhs = frame_superoperators(p).gbar.trace();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
}
