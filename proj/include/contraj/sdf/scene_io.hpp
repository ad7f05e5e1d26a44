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

#include <filesystem>
#include <iosfwd>

#include "contraj/sdf/analytic_scene.hpp"

namespace contraj {

// Plain-text scene description, all lengths in meters. One statement per
// line, '#' starts a comment:
//
//   scene 1
//   bounds <minx> <miny> <minz> <maxx> <maxy> <maxz>
//   empty_distance <d>            (optional)
//   sphere <cx> <cy> <cz> <r>
//   box <minx> <miny> <minz> <maxx> <maxy> <maxz>
//   capsule <ax> <ay> <az> <bx> <by> <bz> <r>
AnalyticScene loadScene(std::istream& in);
AnalyticScene loadScene(const std::filesystem::path& path);

void saveScene(const AnalyticScene& scene, std::ostream& out);
void saveScene(const AnalyticScene& scene, const std::filesystem::path& path);

}  // namespace contraj
