// Copyright 2026 Contraj Authors
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

#include "contraj/trajectory.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "contraj/errors.hpp"

namespace contraj {
namespace {

StateVector randomState(std::mt19937_64& rng, double bound = 10.0) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  StateVector state;
  for (int k = 0; k < kStateDim; ++k) {
    state[k] = dist(rng);
  }
  return state;
}

TEST_CASE("position keeps only constant terms at tau 0") {
  const QuinticTrajectory traj(StateVector::Zero(), Vec3(1, 2, 3), 1.0);
  for (double tau : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(traj.position(tau) == Vec3(1, 2, 3));
  }
}

TEST_CASE("straight-line state interpolates linearly") {
  const QuinticTrajectory traj(straightLineState(Vec3::Zero(), Vec3(4, 0, 0)),
                               Vec3::Zero(), 1.0);
  CHECK(traj.position(0.5) == Vec3(2, 0, 0));
}

TEST_CASE("leading coefficient follows tau^5") {
  StateVector state = StateVector::Zero();
  state[0] = 1.0;
  const QuinticTrajectory traj(state, Vec3::Zero(), 1.0);
  CHECK(traj.position(0.5).x() == doctest::Approx(0.03125).epsilon(1e-15));
}

TEST_CASE("position rejects tau outside the unit interval") {
  const QuinticTrajectory traj;
  CHECK_THROWS_AS(traj.position(-0.01), std::domain_error);
  CHECK_THROWS_AS(traj.position(1.01), std::domain_error);
}

TEST_CASE("derivative converts to real time") {
  const QuinticTrajectory traj(straightLineState(Vec3::Zero(), Vec3(4, 0, 0)),
                               Vec3::Zero(), 2.0);
  for (double tau : {0.0, 0.3, 1.0}) {
    CHECK(traj.derivative(tau, 1) == Vec3(2, 0, 0));
    CHECK(traj.derivative(tau, 2) == Vec3(0, 0, 0));
  }
}

TEST_CASE("third derivative of the cubic term is 3 factorial") {
  StateVector state = StateVector::Zero();
  state[2] = 1.0;  // x-axis tau^3
  const QuinticTrajectory traj(state, Vec3::Zero(), 1.0);
  CHECK(traj.derivative(0.0, 3) == Vec3(6, 0, 0));
  CHECK_THROWS_AS(traj.derivative(0.5, 4), std::domain_error);
  CHECK_THROWS_AS(traj.derivative(0.5, 0), std::domain_error);
}

TEST_CASE("order-1 derivative matches central differences on random states") {
  std::mt19937_64 rng(7);
  const double h = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const QuinticTrajectory traj(randomState(rng), Vec3::Zero(), 2.0);
    std::uniform_real_distribution<double> tau_dist(h, 1.0 - h);
    const double tau = tau_dist(rng);
    const Vec3 fd =
        (traj.position(tau + h) - traj.position(tau - h)) / (2.0 * h * traj.durationS());
    const Vec3 analytic = traj.derivative(tau, 1);
    CHECK((analytic - fd).norm() <= 1e-6 * std::max(1.0, analytic.norm()));
  }
}

TEST_CASE("sample covers both endpoints") {
  const QuinticTrajectory traj(straightLineState(Vec3::Zero(), Vec3(5, 0, 0)),
                               Vec3::Zero(), 1.0);
  const auto one = traj.sample(1);
  REQUIRE(one.size() == 2);
  CHECK(one.front() == traj.position(0.0));
  CHECK(one.back() == traj.position(1.0));

  const auto six = traj.sample(5);
  REQUIRE(six.size() == 6);
  for (int j = 0; j <= 5; ++j) {
    CHECK(six[static_cast<std::size_t>(j)].x() == doctest::Approx(j).epsilon(1e-14));
  }
  CHECK_THROWS_AS(traj.sample(0), std::domain_error);
}

TEST_CASE("chord length of straight and degenerate trajectories") {
  const QuinticTrajectory line(straightLineState(Vec3::Zero(), Vec3(4, 0, 0)),
                               Vec3::Zero(), 1.0);
  for (int n : {1, 7, 64}) {
    CHECK(line.chordLength(n) == doctest::Approx(4.0).epsilon(1e-13));
  }
  const QuinticTrajectory still(StateVector::Zero(), Vec3(1, 1, 1), 1.0);
  CHECK(still.chordLength(16) == 0.0);
}

TEST_CASE("chord length converges on a quintic arc fit") {
  // Least-squares quintic fit of a half circle in the xy plane; the fit is
  // only used as a curved test subject.
  const int fit_samples = 200;
  Eigen::MatrixXd basis(fit_samples + 1, kCoeffsPerAxis);
  Eigen::VectorXd target_x(fit_samples + 1), target_y(fit_samples + 1);
  for (int i = 0; i <= fit_samples; ++i) {
    const double tau = static_cast<double>(i) / fit_samples;
    basis.row(i) = positionBasis(tau).transpose();
    target_x(i) = std::cos(std::numbers::pi * tau) - 1.0;  // anchored at the origin
    target_y(i) = std::sin(std::numbers::pi * tau);
  }
  const Eigen::VectorXd coeff_x = basis.colPivHouseholderQr().solve(target_x);
  const Eigen::VectorXd coeff_y = basis.colPivHouseholderQr().solve(target_y);
  StateVector state = StateVector::Zero();
  state.segment<kCoeffsPerAxis>(0) = coeff_x;
  state.segment<kCoeffsPerAxis>(kCoeffsPerAxis) = coeff_y;
  const QuinticTrajectory traj(state, Vec3::Zero(), 1.0);

  // Independent oracle: dense chord sum.
  double dense = 0.0;
  const int dense_n = 100000;
  Vec3 previous = traj.position(0.0);
  for (int j = 1; j <= dense_n; ++j) {
    const Vec3 current = traj.position(static_cast<double>(j) / dense_n);
    dense += (current - previous).norm();
    previous = current;
  }
  CHECK(traj.chordLength(64) == doctest::Approx(dense).epsilon(0.01));
}

TEST_CASE("chord length is nondecreasing under refinement") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const QuinticTrajectory traj(randomState(rng), Vec3::Zero(), 1.0);
    for (int n : {1, 2, 5, 16}) {
      CHECK(traj.chordLength(2 * n) >= traj.chordLength(n) - 1e-12);
    }
  }
}

TEST_CASE("straight-line state per axis") {
  SUBCASE("axis-aligned") {
    const StateVector state = straightLineState(Vec3::Zero(), Vec3(4, 0, 0));
    CHECK(state[4] == 4.0);
    CHECK(state.cwiseAbs().sum() == 4.0);
  }
  SUBCASE("coincident start and goal") {
    CHECK(straightLineState(Vec3(1, 1, 1), Vec3(1, 1, 1)).isZero(0.0));
  }
  SUBCASE("per-axis independence") {
    const Vec3 start(1, 1, 1);
    const StateVector state = straightLineState(start, start + Vec3(0, -2, 0.5));
    CHECK(state[9] == -2.0);
    CHECK(state[14] == 0.5);
    CHECK(state[4] == 0.0);
  }
}

TEST_CASE("straight-line state reaches the goal at tau 1") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-20.0, 20.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 start(dist(rng), dist(rng), dist(rng));
    const Vec3 goal(dist(rng), dist(rng), dist(rng));
    const QuinticTrajectory traj(straightLineState(start, goal), start, 1.0);
    CHECK((traj.position(1.0) - goal).norm() <= 1e-13 * std::max(1.0, goal.norm()));
    CHECK(traj.position(0.0) == start);
  }
}

TEST_CASE("chord-length times") {
  SUBCASE("equally spaced collinear points") {
    const std::vector<Vec3> wps{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)};
    const auto times = chordLengthTimes(wps);
    REQUIRE(times.size() == 3);
    CHECK(times[0] == 0.0);
    CHECK(times[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(times[2] == 1.0);
  }
  SUBCASE("segments of lengths 1 and 3") {
    const std::vector<Vec3> wps{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(4, 0, 0)};
    const auto times = chordLengthTimes(wps);
    CHECK(times[1] == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("two waypoints") {
    const std::vector<Vec3> wps{Vec3(0, 0, 0), Vec3(0, 1, 0)};
    const auto times = chordLengthTimes(wps);
    CHECK(times == std::vector<double>{0.0, 1.0});
  }
  SUBCASE("degenerate inputs") {
    CHECK_THROWS_AS(chordLengthTimes(std::vector<Vec3>{Vec3::Zero()}),
                    DegenerateInputError);
    CHECK_THROWS_AS(chordLengthTimes(std::vector<Vec3>{Vec3::Ones(), Vec3::Ones()}),
                    DegenerateInputError);
  }
}

TEST_CASE("chord-length times form a monotone partition of the unit interval") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  std::uniform_int_distribution<int> count_dist(2, 12);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vec3> wps;
    const int count = count_dist(rng);
    for (int i = 0; i < count; ++i) {
      wps.emplace_back(dist(rng), dist(rng), dist(rng));
    }
    std::vector<double> times;
    try {
      times = chordLengthTimes(wps);
    } catch (const DegenerateInputError&) {
      continue;
    }
    CHECK(times.front() == 0.0);
    CHECK(times.back() == 1.0);
    for (std::size_t i = 1; i < times.size(); ++i) {
      CHECK(times[i] >= times[i - 1]);
    }
  }
}

TEST_CASE("constructor validates inputs") {
  CHECK_THROWS_AS(QuinticTrajectory(StateVector::Zero(), Vec3::Zero(), 0.0),
                  std::invalid_argument);
  StateVector bad = StateVector::Zero();
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(QuinticTrajectory(bad, Vec3::Zero(), 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace contraj
