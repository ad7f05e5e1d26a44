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

#include <array>
#include <cstdint>
#include <vector>

#include "contraj/sdf/analytic_scene.hpp"
#include "contraj/sdf/provider.hpp"

namespace contraj {

// Dense voxel lattice with trilinear interpolation. The gradient is the
// exact spatial derivative of the interpolant (piecewise linear per axis),
// not a finite-difference stencil, so value and gradient stay consistent
// for the optimizer. Queries outside the lattice throw OutOfBoundsError;
// there is no silent clamping at this layer.
class GridSdf final : public SdfProvider {
 public:
  GridSdf(const Vec3& origin, double voxel_size, const std::array<int, 3>& dims,
          std::vector<double> values);

  // Lattice sampled from the exact scene field at node positions, covering
  // at least scene bounds. Throws ResourceError above max_voxel_count.
  static GridSdf build(const AnalyticScene& scene, double voxel_size,
                       std::int64_t max_voxel_count = kDefaultMaxVoxelCount);

  static constexpr std::int64_t kDefaultMaxVoxelCount = 1 << 27;

  SdfSample eval(const Vec3& p) const override;
  std::optional<Aabb> bounds() const override;

  const Vec3& origin() const { return origin_; }
  double voxelSize() const { return voxel_size_; }
  const std::array<int, 3>& dims() const { return dims_; }
  Vec3 nodePosition(int i, int j, int k) const;
  double valueAt(int i, int j, int k) const { return values_[index(i, j, k)]; }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * dims_[1] + j) * dims_[0] + i;
  }

  Vec3 origin_;
  double voxel_size_;
  std::array<int, 3> dims_;
  std::vector<double> values_;
};

}  // namespace contraj
