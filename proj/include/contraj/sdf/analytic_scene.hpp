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

#include <vector>

#include "contraj/sdf/primitives.hpp"
#include "contraj/sdf/provider.hpp"

namespace contraj {

// Union of primitives composed by exact min. Ties between equidistant
// primitives resolve to the earliest one in list order, so evaluation is
// deterministic on the cut locus even though the true gradient is not
// defined there. An empty scene reports empty_distance with zero gradient.
class AnalyticScene final : public SdfProvider {
 public:
  AnalyticScene() = default;
  AnalyticScene(std::vector<Primitive> primitives, const Aabb& bounds,
                double empty_distance = kDefaultEmptyDistance);

  static constexpr double kDefaultEmptyDistance = 100.0;

  SdfSample eval(const Vec3& p) const override;
  std::optional<Aabb> bounds() const override { return bounds_; }

  const std::vector<Primitive>& primitives() const { return primitives_; }
  double emptyDistance() const { return empty_distance_; }

 private:
  std::vector<Primitive> primitives_;
  Aabb bounds_{Vec3::Constant(-10.0), Vec3::Constant(10.0)};
  double empty_distance_ = kDefaultEmptyDistance;
};

}  // namespace contraj
