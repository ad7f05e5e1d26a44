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

#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace contraj {

using Vec3 = Eigen::Vector3d;

inline constexpr int kStateDim = 15;
inline constexpr int kCoeffsPerAxis = 5;

// Free coefficients of three quintic polynomials over normalized time
// tau in [0, 1]. Slots [5a .. 5a+4] belong to axis a and multiply
// tau^5, tau^4, tau^3, tau^2, tau in that order, so indices 4, 9 and 14
// are the linear terms. Constant terms live in QuinticTrajectory::d.
using StateVector = Eigen::Matrix<double, kStateDim, 1>;

// Monomial basis (tau^5, tau^4, tau^3, tau^2, tau) shared by evaluation
// and by every Jacobian that chains through a trajectory position.
Eigen::Matrix<double, kCoeffsPerAxis, 1> positionBasis(double tau);

// Basis of the k-th tau-derivative, k in {1, 2, 3}.
Eigen::Matrix<double, kCoeffsPerAxis, 1> derivativeBasis(double tau, int order);

class QuinticTrajectory {
 public:
  QuinticTrajectory() = default;
  QuinticTrajectory(const StateVector& state, const Vec3& d, double duration_s);

  const StateVector& state() const { return state_; }
  const Vec3& d() const { return d_; }
  double durationS() const { return duration_s_; }

  // Position at normalized time tau in [0, 1], in the frame of d.
  Vec3 position(double tau) const;

  // k-th derivative with respect to real time t = tau * duration, k in {1,2,3}.
  Vec3 derivative(double tau, int order) const;

  // n + 1 evenly spaced samples at tau_j = j / n, endpoints included.
  std::vector<Vec3> sample(int n) const;

  // Sum of Euclidean distances between consecutive samples. Lower bound of
  // the true arc length; nondecreasing under refinement n -> 2n.
  double chordLength(int n) const;

 private:
  StateVector state_ = StateVector::Zero();
  Vec3 d_ = Vec3::Zero();
  double duration_s_ = 1.0;
};

// State of the straight line from start to goal: only the linear slots
// 4, 9, 14 are nonzero and equal goal - start componentwise. start_local
// must coincide with the constant terms d of the trajectory it seeds.
StateVector straightLineState(const Vec3& start_local, const Vec3& goal_local);

// Normalized times for a waypoint list under the constant-speed assumption:
// tau_0 = 0, increments proportional to segment chord lengths, tau_last = 1.
// Throws DegenerateInputError for fewer than 2 waypoints or zero total length.
std::vector<double> chordLengthTimes(std::span<const Vec3> waypoints);

}  // namespace contraj
