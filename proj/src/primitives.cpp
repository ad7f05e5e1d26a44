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

#include "contraj/sdf/primitives.hpp"

#include <algorithm>
#include <cmath>

namespace contraj {

SdfSample Sphere::sample(const Vec3& p) const {
  const Vec3 to_point = p - center;
  const double r = to_point.norm();
  if (r == 0.0) {
    return {-radius, Vec3::Zero()};
  }
  return {r - radius, to_point / r};
}

SdfSample Box::sample(const Vec3& p) const {
  const Vec3 center = 0.5 * (min + max);
  const Vec3 half = 0.5 * (max - min);
  const Vec3 q = (p - center).cwiseAbs() - half;

  if ((q.array() <= 0.0).all()) {
    // Inside: distance to the nearest face; gradient is that face normal.
    // Axis ties resolve to the lowest axis index.
    int nearest_axis = 0;
    q.maxCoeff(&nearest_axis);
    Vec3 gradient = Vec3::Zero();
    const double side = p[nearest_axis] >= center[nearest_axis] ? 1.0 : -1.0;
    gradient[nearest_axis] = side;
    return {q[nearest_axis], gradient};
  }

  const Vec3 outside = q.cwiseMax(0.0);
  const double dist = outside.norm();
  Vec3 gradient = outside / dist;
  for (int axis = 0; axis < 3; ++axis) {
    if (p[axis] < center[axis]) {
      gradient[axis] = -gradient[axis];
    }
  }
  return {dist, gradient};
}

SdfSample Capsule::sample(const Vec3& p) const {
  const Vec3 axis = b - a;
  const double len2 = axis.squaredNorm();
  double h = 0.0;
  if (len2 > 0.0) {
    h = std::clamp((p - a).dot(axis) / len2, 0.0, 1.0);
  }
  const Vec3 closest = a + h * axis;
  const Vec3 to_point = p - closest;
  const double r = to_point.norm();
  if (r == 0.0) {
    return {-radius, Vec3::Zero()};
  }
  return {r - radius, to_point / r};
}

}  // namespace contraj
