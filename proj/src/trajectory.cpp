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

#include <cmath>
#include <stdexcept>
#include <string>

#include "contraj/errors.hpp"

namespace contraj {

namespace {

void requireUnitInterval(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::domain_error("tau outside [0, 1]: " + std::to_string(tau));
  }
}

}  // namespace

Eigen::Matrix<double, kCoeffsPerAxis, 1> positionBasis(double tau) {
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const double t4 = t2 * t2;
  const double t5 = t4 * tau;
  return {t5, t4, t3, t2, tau};
}

Eigen::Matrix<double, kCoeffsPerAxis, 1> derivativeBasis(double tau, int order) {
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const double t4 = t2 * t2;
  switch (order) {
    case 1:
      return {5.0 * t4, 4.0 * t3, 3.0 * t2, 2.0 * tau, 1.0};
    case 2:
      return {20.0 * t3, 12.0 * t2, 6.0 * tau, 2.0, 0.0};
    case 3:
      return {60.0 * t2, 24.0 * tau, 6.0, 0.0, 0.0};
    default:
      throw std::domain_error("derivative order must be 1, 2 or 3");
  }
}

QuinticTrajectory::QuinticTrajectory(const StateVector& state, const Vec3& d,
                                     double duration_s)
    : state_(state), d_(d), duration_s_(duration_s) {
  if (!state.allFinite() || !d.allFinite()) {
    throw std::invalid_argument("trajectory coefficients must be finite");
  }
  if (!(duration_s > 0.0)) {
    throw std::invalid_argument("duration_s must be positive");
  }
}

Vec3 QuinticTrajectory::position(double tau) const {
  requireUnitInterval(tau);
  const auto basis = positionBasis(tau);
  Vec3 p;
  for (int axis = 0; axis < 3; ++axis) {
    p[axis] = state_.segment<kCoeffsPerAxis>(axis * kCoeffsPerAxis).dot(basis) + d_[axis];
  }
  return p;
}

Vec3 QuinticTrajectory::derivative(double tau, int order) const {
  requireUnitInterval(tau);
  const auto basis = derivativeBasis(tau, order);
  const double scale = 1.0 / std::pow(duration_s_, order);
  Vec3 v;
  for (int axis = 0; axis < 3; ++axis) {
    v[axis] = state_.segment<kCoeffsPerAxis>(axis * kCoeffsPerAxis).dot(basis) * scale;
  }
  return v;
}

std::vector<Vec3> QuinticTrajectory::sample(int n) const {
  if (n < 1) {
    throw std::domain_error("sample count must be >= 1");
  }
  std::vector<Vec3> points;
  points.reserve(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    points.push_back(position(static_cast<double>(j) / n));
  }
  return points;
}

double QuinticTrajectory::chordLength(int n) const {
  const auto points = sample(n);
  double length = 0.0;
  for (std::size_t j = 1; j < points.size(); ++j) {
    length += (points[j] - points[j - 1]).norm();
  }
  return length;
}

StateVector straightLineState(const Vec3& start_local, const Vec3& goal_local) {
  StateVector state = StateVector::Zero();
  for (int axis = 0; axis < 3; ++axis) {
    state[axis * kCoeffsPerAxis + 4] = goal_local[axis] - start_local[axis];
  }
  return state;
}

std::vector<double> chordLengthTimes(std::span<const Vec3> waypoints) {
  if (waypoints.size() < 2) {
    throw DegenerateInputError("need at least two waypoints");
  }
  std::vector<double> segment(waypoints.size() - 1);
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    segment[i - 1] = (waypoints[i] - waypoints[i - 1]).norm();
    total += segment[i - 1];
  }
  if (!(total > 0.0)) {
    throw DegenerateInputError("waypoint list has zero total chord length");
  }
  std::vector<double> times(waypoints.size());
  times.front() = 0.0;
  double accumulated = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    accumulated += segment[i - 1];
    times[i] = accumulated / total;
  }
  times.back() = 1.0;
  return times;
}

}  // namespace contraj
