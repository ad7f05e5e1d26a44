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

#include "contraj/sdf/provider.hpp"

#include <stdexcept>
#include <string>

#include "contraj/errors.hpp"

namespace contraj {

std::vector<SdfSample> SdfProvider::evalBatch(std::span<const Vec3> points) const {
  std::vector<SdfSample> samples;
  samples.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      samples.push_back(eval(points[i]));
    } catch (const OutOfBoundsError& e) {
      throw OutOfBoundsError("batch point " + std::to_string(i) + ": " + e.what());
    }
  }
  return samples;
}

std::vector<SdfSample> TranslatedSdf::evalBatch(std::span<const Vec3> points) const {
  std::vector<Vec3> shifted;
  shifted.reserve(points.size());
  for (const Vec3& p : points) {
    shifted.push_back(p + offset_);
  }
  return base_->evalBatch(shifted);
}

}  // namespace contraj
