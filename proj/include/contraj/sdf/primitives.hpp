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

#include <variant>

#include "contraj/sdf/provider.hpp"

namespace contraj {

// Exact signed distances with exact gradients. Gradients are undefined on a
// measure-zero set (sphere center, capsule axis, interior axis ties of a
// box); those cases return a deterministic unit or zero vector.

struct Sphere {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;

  SdfSample sample(const Vec3& p) const;
};

struct Box {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Ones();

  SdfSample sample(const Vec3& p) const;
};

struct Capsule {
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::UnitX();
  double radius = 0.5;

  SdfSample sample(const Vec3& p) const;
};

using Primitive = std::variant<Sphere, Box, Capsule>;

inline SdfSample samplePrimitive(const Primitive& prim, const Vec3& p) {
  return std::visit([&p](const auto& shape) { return shape.sample(p); }, prim);
}

}  // namespace contraj
