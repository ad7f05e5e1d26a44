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

#include "contraj/sdf/analytic_scene.hpp"

#include <stdexcept>
#include <utility>

namespace contraj {

namespace {

void validatePrimitive(const Primitive& prim) {
  if (const auto* sphere = std::get_if<Sphere>(&prim)) {
    if (!(sphere->radius > 0.0)) {
      throw std::invalid_argument("sphere radius must be positive");
    }
  } else if (const auto* box = std::get_if<Box>(&prim)) {
    if (!((box->min.array() < box->max.array()).all())) {
      throw std::invalid_argument("box min must be below max componentwise");
    }
  } else if (const auto* capsule = std::get_if<Capsule>(&prim)) {
    if (!(capsule->radius > 0.0)) {
      throw std::invalid_argument("capsule radius must be positive");
    }
  }
}

}  // namespace

AnalyticScene::AnalyticScene(std::vector<Primitive> primitives, const Aabb& bounds,
                             double empty_distance)
    : primitives_(std::move(primitives)),
      bounds_(bounds),
      empty_distance_(empty_distance) {
  if (bounds_.empty()) {
    throw std::invalid_argument("scene bounds must be nonempty");
  }
  if (!(empty_distance_ > 0.0)) {
    throw std::invalid_argument("empty_distance must be positive");
  }
  for (const Primitive& prim : primitives_) {
    validatePrimitive(prim);
  }
}

SdfSample AnalyticScene::eval(const Vec3& p) const {
  if (primitives_.empty()) {
    return {empty_distance_, Vec3::Zero()};
  }
  SdfSample best = samplePrimitive(primitives_.front(), p);
  for (std::size_t i = 1; i < primitives_.size(); ++i) {
    const SdfSample candidate = samplePrimitive(primitives_[i], p);
    if (candidate.distance < best.distance) {
      best = candidate;
    }
  }
  return best;
}

}  // namespace contraj
