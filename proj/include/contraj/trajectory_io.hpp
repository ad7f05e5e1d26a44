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

#include <iosfwd>

#include "contraj/trajectory.hpp"

namespace contraj {

// Structured text record of the 18 polynomial constants (15 state entries
// plus the 3 constant terms) and the duration, for downstream consumers.
void writeTrajectoryRecord(std::ostream& out, const QuinticTrajectory& trajectory);

// Plain-text sample table with columns tau, t, x, y, z, vx, vy, vz.
void writeTrajectoryTable(std::ostream& out, const QuinticTrajectory& trajectory,
                          int subdivisions);

}  // namespace contraj
