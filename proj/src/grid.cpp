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

#include "contraj/sdf/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "contraj/errors.hpp"

namespace contraj {

GridSdf::GridSdf(const Vec3& origin, double voxel_size, const std::array<int, 3>& dims,
                 std::vector<double> values)
    : origin_(origin), voxel_size_(voxel_size), dims_(dims), values_(std::move(values)) {
  if (!(voxel_size > 0.0)) {
    throw std::invalid_argument("voxel_size must be positive");
  }
  for (int d : dims_) {
    if (d < 2) {
      throw std::invalid_argument("grid needs at least 2 nodes per axis");
    }
  }
  const std::size_t expected = static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2];
  if (values_.size() != expected) {
    throw std::invalid_argument("grid value count does not match dims");
  }
}

GridSdf GridSdf::build(const AnalyticScene& scene, double voxel_size,
                       std::int64_t max_voxel_count) {
  if (!(voxel_size > 0.0)) {
    throw std::invalid_argument("voxel_size must be positive");
  }
  const Aabb scene_bounds = *scene.bounds();
  const Vec3 extent = scene_bounds.extent();
  std::array<int, 3> dims;
  for (int axis = 0; axis < 3; ++axis) {
    dims[axis] = static_cast<int>(std::ceil(extent[axis] / voxel_size)) + 1;
    dims[axis] = std::max(dims[axis], 2);
  }
  const std::int64_t count =
      static_cast<std::int64_t>(dims[0]) * dims[1] * dims[2];
  if (count > max_voxel_count) {
    std::ostringstream msg;
    msg << "grid would need " << count << " voxels, ceiling is " << max_voxel_count;
    throw ResourceError(msg.str());
  }

  std::vector<double> values(static_cast<std::size_t>(count));
  std::size_t flat = 0;
  for (int k = 0; k < dims[2]; ++k) {
    for (int j = 0; j < dims[1]; ++j) {
      for (int i = 0; i < dims[0]; ++i) {
        const Vec3 node = scene_bounds.min + voxel_size * Vec3(i, j, k);
        values[flat++] = scene.eval(node).distance;
      }
    }
  }
  return GridSdf(scene_bounds.min, voxel_size, dims, std::move(values));
}

std::optional<Aabb> GridSdf::bounds() const {
  Vec3 max = origin_;
  for (int axis = 0; axis < 3; ++axis) {
    max[axis] += voxel_size_ * (dims_[axis] - 1);
  }
  return Aabb{origin_, max};
}

Vec3 GridSdf::nodePosition(int i, int j, int k) const {
  return origin_ + voxel_size_ * Vec3(i, j, k);
}

SdfSample GridSdf::eval(const Vec3& p) const {
  const Aabb box = *bounds();
  if (!box.contains(p)) {
    std::ostringstream msg;
    msg << "grid query (" << p.x() << ", " << p.y() << ", " << p.z()
        << ") outside lattice bounds";
    throw OutOfBoundsError(msg.str());
  }

  std::array<int, 3> cell;
  Vec3 local;  // position within the cell, each component in [0, 1]
  for (int axis = 0; axis < 3; ++axis) {
    const double u = (p[axis] - origin_[axis]) / voxel_size_;
    int c = static_cast<int>(std::floor(u));
    c = std::clamp(c, 0, dims_[axis] - 2);  // upper face belongs to the last cell
    cell[axis] = c;
    local[axis] = u - c;
  }

  const double x = local[0], y = local[1], z = local[2];
  double corner[2][2][2];
  for (int dk = 0; dk < 2; ++dk) {
    for (int dj = 0; dj < 2; ++dj) {
      for (int di = 0; di < 2; ++di) {
        corner[di][dj][dk] = values_[index(cell[0] + di, cell[1] + dj, cell[2] + dk)];
      }
    }
  }

  // Collapse one axis at a time; keeps the partial derivatives cheap.
  const double c00 = corner[0][0][0] * (1 - x) + corner[1][0][0] * x;
  const double c10 = corner[0][1][0] * (1 - x) + corner[1][1][0] * x;
  const double c01 = corner[0][0][1] * (1 - x) + corner[1][0][1] * x;
  const double c11 = corner[0][1][1] * (1 - x) + corner[1][1][1] * x;
  const double c0 = c00 * (1 - y) + c10 * y;
  const double c1 = c01 * (1 - y) + c11 * y;
  const double value = c0 * (1 - z) + c1 * z;

  const double dx00 = corner[1][0][0] - corner[0][0][0];
  const double dx10 = corner[1][1][0] - corner[0][1][0];
  const double dx01 = corner[1][0][1] - corner[0][0][1];
  const double dx11 = corner[1][1][1] - corner[0][1][1];
  const double ddx = ((dx00 * (1 - y) + dx10 * y) * (1 - z) +
                      (dx01 * (1 - y) + dx11 * y) * z) /
                     voxel_size_;
  const double ddy = ((c10 - c00) * (1 - z) + (c11 - c01) * z) / voxel_size_;
  const double ddz = (c1 - c0) / voxel_size_;

  return {value, Vec3(ddx, ddy, ddz)};
}

}  // namespace contraj
