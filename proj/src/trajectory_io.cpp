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

#include "contraj/trajectory_io.hpp"

#include <ostream>

namespace contraj {

void writeTrajectoryRecord(std::ostream& out, const QuinticTrajectory& trajectory) {
  const auto precision = out.precision(17);
  out << "trajectory 1\n";
  out << "duration_s " << trajectory.durationS() << "\n";
  out << "d " << trajectory.d().x() << " " << trajectory.d().y() << " "
      << trajectory.d().z() << "\n";
  out << "state";
  for (int k = 0; k < kStateDim; ++k) {
    out << " " << trajectory.state()[k];
  }
  out << "\n";
  out.precision(precision);
}

void writeTrajectoryTable(std::ostream& out, const QuinticTrajectory& trajectory,
                          int subdivisions) {
  const auto precision = out.precision(9);
  out << "# tau t x y z vx vy vz\n";
  for (int j = 0; j <= subdivisions; ++j) {
    const double tau = static_cast<double>(j) / subdivisions;
    const Vec3 p = trajectory.position(tau);
    const Vec3 v = trajectory.derivative(tau, 1);
    out << tau << " " << tau * trajectory.durationS() << " " << p.x() << " " << p.y()
        << " " << p.z() << " " << v.x() << " " << v.y() << " " << v.z() << "\n";
  }
  out.precision(precision);
}

}  // namespace contraj
