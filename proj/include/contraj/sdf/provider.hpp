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

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "contraj/trajectory.hpp"

namespace contraj {

// Signed distance (m, positive in free space) plus its spatial gradient
// at the query point. Exact fields have unit gradient norm away from
// surfaces and the cut locus.
struct SdfSample {
  double distance = 0.0;
  Vec3 gradient = Vec3::Zero();
};

struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  bool contains(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  Vec3 clamp(const Vec3& p) const {
    return p.cwiseMax(min).cwiseMin(max);
  }
  Vec3 extent() const { return max - min; }
  bool empty() const { return (extent().array() <= 0.0).any(); }
};

// Continuous signed-distance provider. Implementations are immutable after
// construction; eval and evalBatch must be safe to call from many threads.
class SdfProvider {
 public:
  virtual ~SdfProvider() = default;

  virtual SdfSample eval(const Vec3& p) const = 0;

  // Elementwise identical to eval, output order matches input order.
  virtual std::vector<SdfSample> evalBatch(std::span<const Vec3> points) const;

  // Domain of validity; nullopt means the provider accepts any finite point.
  virtual std::optional<Aabb> bounds() const { return std::nullopt; }
};

// View of a provider shifted by a fixed offset, used to plan in a local frame
// over a world-frame field: eval(p) queries the base at p + offset. Gradients
// are unchanged by translation.
class TranslatedSdf final : public SdfProvider {
 public:
  TranslatedSdf(std::shared_ptr<const SdfProvider> base, const Vec3& offset)
      : base_(std::move(base)), offset_(offset) {}

  SdfSample eval(const Vec3& p) const override { return base_->eval(p + offset_); }

  std::vector<SdfSample> evalBatch(std::span<const Vec3> points) const override;

  std::optional<Aabb> bounds() const override {
    if (auto b = base_->bounds()) {
      return Aabb{b->min - offset_, b->max - offset_};
    }
    return std::nullopt;
  }

 private:
  std::shared_ptr<const SdfProvider> base_;
  Vec3 offset_;
};

}  // namespace contraj
