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

#include "incompat/chamber.hpp"
#include "support.hpp"

using namespace incompat;

TEST_CASE("membership endpoints at the center") {
  const Eigen::Vector3d center = Eigen::Vector3d::Zero();
  CHECK(membership_qubit(Eigen::Matrix3d::Zero(), center));
  CHECK_FALSE(membership_qubit(Eigen::Matrix3d::Identity(), center));
  Eigen::Matrix3d zz = Eigen::Matrix3d::Zero();
  zz(2, 2) = 1.0;
  CHECK(membership_qubit(zz, center));  // boundary

  CHECK_THROWS_AS(membership_qubit(zz, Eigen::Vector3d::UnitX()),
                  ValidationError);
}

TEST_CASE("membership is convex") {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const Eigen::Vector3d s = testing::random_ball_vector3(gen, 0.8);
  const Eigen::Matrix3d jinv = Eigen::Matrix3d::Identity() - s * s.transpose();
  for (int rep = 0; rep < 20; ++rep) {
    // Members built directly: random PSD scaled onto or inside the boundary.
    Eigen::Matrix3d m1 = testing::random_real_psd(gen, 3);
    Eigen::Matrix3d m2 = testing::random_real_psd(gen, 3);
    m1 *= uni(gen) / (jinv * m1).trace();
    m2 *= uni(gen) / (jinv * m2).trace();
    REQUIRE(membership_qubit(m1, s));
    REQUIRE(membership_qubit(m2, s));
    const double w = uni(gen);
    CHECK(membership_qubit(w * m1 + (1.0 - w) * m2, s));
  }
}

TEST_CASE("GM bound for the Bures weighting is (d+1)^2 (d-1) / 4") {
  const ParamPoint pt = bloch_param_point(Eigen::Vector3d(0.3, -0.2, 0.4));
  const Eigen::MatrixXd qfi = qfi_matrix(pt);
  CHECK(gm_wmse_bound(0.25 * qfi, qfi, 2) == doctest::Approx(2.25));
  CHECK(gm_wmse_bound(Eigen::MatrixXd::Zero(3, 3), qfi, 2) ==
        doctest::Approx(0.0));

  // Single-parameter weighting at the center.
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
  w(0, 0) = 1.0;
  CHECK(gm_wmse_bound(w, Eigen::MatrixXd::Identity(3, 3), 2) ==
        doctest::Approx(1.0));
}

TEST_CASE("gm_wmse_bound rejects support violations") {
  Eigen::MatrixXd qfi = Eigen::MatrixXd::Zero(3, 3);
  qfi(0, 0) = 1.0;
  CHECK_THROWS_AS(gm_wmse_bound(Eigen::MatrixXd::Identity(3, 3), qfi, 2),
                  InfeasibleAdjustmentError);
}

TEST_CASE("optimal_fisher fixed points") {
  const ParamPoint pt = bloch_param_point(Eigen::Vector3d(0.5, 0.1, -0.3));
  const Eigen::MatrixXd qfi = qfi_matrix(pt);
  // W proportional to J gives I_W = J/(d+1).
  CHECK((optimal_fisher(0.25 * qfi, qfi, 2) - qfi / 3.0).norm() <= 1e-10);

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  CHECK((optimal_fisher(id, id, 2) - id / 3.0).norm() <= 1e-12);

  CHECK_THROWS_AS(optimal_fisher(Eigen::MatrixXd::Zero(3, 3), qfi, 2),
                  ValidationError);
}

TEST_CASE("optimal_fisher is scale invariant and saturates the GM trace") {
  std::mt19937_64 gen(102);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::Vector3d s = testing::random_ball_vector3(gen, 0.9);
    const Eigen::MatrixXd qfi = qubit_qfi_bloch(s);
    const Eigen::MatrixXd w = testing::random_real_psd(gen, 3);
    const Eigen::MatrixXd iw = optimal_fisher(w, qfi, 2);
    CHECK((optimal_fisher(3.7 * w, qfi, 2) - iw).norm() <= 1e-9);
    CHECK(gm_trace(iw, qfi) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("realize_qubit canonical schedules") {
  const Eigen::Vector3d center = Eigen::Vector3d::Zero();
  const MeasurementSchedule mub =
      realize_qubit(Eigen::Matrix3d::Identity() / 3.0, center);
  REQUIRE(mub.entries.size() == 3);
  for (const auto& e : mub.entries) {
    CHECK(e.probability == doctest::Approx(1.0 / 3.0));
    for (const auto& f : mub.entries) {
      if (&e != &f) CHECK(std::abs(e.axis.dot(f.axis)) <= 1e-9);
    }
  }

  Eigen::Matrix3d zz = Eigen::Matrix3d::Zero();
  zz(2, 2) = 1.0;
  const MeasurementSchedule single = realize_qubit(zz, center);
  REQUIRE(single.entries.size() == 1);
  CHECK(single.entries[0].probability == doctest::Approx(1.0));
  CHECK(std::abs(single.entries[0].axis.dot(Eigen::Vector3d::UnitZ())) ==
        doctest::Approx(1.0));
}

TEST_CASE("realize_qubit at a displaced point reconstructs the input") {
  const Eigen::Vector3d s(0.6, 0.0, 0.0);
  const Eigen::MatrixXd qfi = qubit_qfi_bloch(s);
  const Eigen::Matrix3d iw =
      optimal_fisher(Eigen::MatrixXd::Identity(3, 3), qfi, 2);
  const MeasurementSchedule schedule = realize_qubit(iw, s);
  CHECK(schedule.total_probability() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK((schedule_fisher(schedule, s) - iw).norm() <= 1e-7);
}

TEST_CASE("realize_qubit rejects interior matrices") {
  CHECK_THROWS_AS(
      realize_qubit(0.1 * Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero()),
      UnsupportedInputError);
}

TEST_CASE("interior matrices realize by mixing with the trivial measurement") {
  std::mt19937_64 gen(104);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::Vector3d s = testing::random_ball_vector3(gen, 0.8);
    const Eigen::Matrix3d jinv =
        Eigen::Matrix3d::Identity() - s * s.transpose();
    Eigen::Matrix3d interior = testing::random_real_psd(gen, 3);
    interior *= 0.4 / (jinv * interior).trace();  // gm_trace = 0.4
    const MeasurementSchedule schedule = realize_qubit_mixed(interior, s);
    CHECK(schedule.total_probability() == doctest::Approx(0.4).epsilon(1e-8));
    CHECK((schedule_fisher(schedule, s) - interior).norm() <= 1e-7);
  }
}

TEST_CASE("achievability: realized schedules attain the WMSE bound") {
  std::mt19937_64 gen(103);
  for (int rep = 0; rep < 15; ++rep) {
    const Eigen::Vector3d s = testing::random_ball_vector3(gen, 0.9);
    const Eigen::MatrixXd qfi = qubit_qfi_bloch(s);
    const Eigen::MatrixXd w =
        testing::random_real_psd(gen, 3) +
        0.05 * Eigen::MatrixXd::Identity(3, 3);
    const Eigen::Matrix3d iw = optimal_fisher(w, qfi, 2);
    const MeasurementSchedule schedule = realize_qubit(iw, s);
    CHECK(schedule.total_probability() == doctest::Approx(1.0).epsilon(1e-8));
    const Eigen::Matrix3d mixed = schedule_fisher(schedule, s);
    CHECK((mixed - iw).norm() <= 1e-7);

    const double achieved = (w * mixed.inverse()).trace();
    CHECK(achieved ==
          doctest::Approx(gm_wmse_bound(w, qfi, 2)).epsilon(1e-6));
  }
}

TEST_CASE("chamber_export samples the boundary deterministically") {
  const Eigen::Vector3d s(0.2, -0.1, 0.4);
  const auto one = chamber_export(s, 1, 7);
  CHECK(one.size() == 1);

  const auto many = chamber_export(s, 200, 7);
  const Eigen::Matrix3d jinv =
      Eigen::Matrix3d::Identity() - s * s.transpose();
  for (const Eigen::Matrix3d& sample : many) {
    CHECK(membership_qubit(sample, s, 1e-9));
    CHECK((jinv * sample).trace() == doctest::Approx(1.0).epsilon(1e-9));
  }

  const auto again = chamber_export(s, 200, 7);
  double max_diff = 0.0;
  for (std::size_t k = 0; k < many.size(); ++k) {
    max_diff = std::max(max_diff, (many[k] - again[k]).cwiseAbs().maxCoeff());
  }
  CHECK(max_diff == 0.0);  // bitwise reproducible

  const auto other = chamber_export(s, 200, 8);
  CHECK((other[0] - many[0]).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("central export distribution is rotation invariant in moments") {
  const auto samples = chamber_export(Eigen::Vector3d::Zero(), 4000, 11);
  Eigen::Matrix3d mean = Eigen::Matrix3d::Zero();
  for (const Eigen::Matrix3d& m : samples) mean += m;
  mean /= static_cast<double>(samples.size());
  // E[Q diag(lam) Q^T] = (tr/3) 1 = 1/3 for a Haar frame.
  CHECK((mean - Eigen::Matrix3d::Identity() / 3.0).cwiseAbs().maxCoeff() <=
        0.02);
}
