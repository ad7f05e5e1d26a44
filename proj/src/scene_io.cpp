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

#include "contraj/sdf/scene_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "contraj/errors.hpp"

namespace contraj {

namespace {

Vec3 readVec3(std::istringstream& line, const std::string& what) {
  Vec3 v;
  if (!(line >> v.x() >> v.y() >> v.z())) {
    throw FormatError("scene file: malformed " + what);
  }
  return v;
}

double readScalar(std::istringstream& line, const std::string& what) {
  double v = 0.0;
  if (!(line >> v)) {
    throw FormatError("scene file: malformed " + what);
  }
  return v;
}

}  // namespace

AnalyticScene loadScene(std::istream& in) {
  bool have_header = false;
  bool have_bounds = false;
  Aabb bounds;
  double empty_distance = AnalyticScene::kDefaultEmptyDistance;
  std::vector<Primitive> primitives;

  std::string raw;
  while (std::getline(in, raw)) {
    const auto hash = raw.find('#');
    if (hash != std::string::npos) {
      raw.erase(hash);
    }
    std::istringstream line(raw);
    std::string keyword;
    if (!(line >> keyword)) {
      continue;
    }
    if (!have_header) {
      int version = 0;
      if (keyword != "scene" || !(line >> version) || version != 1) {
        throw FormatError("scene file must start with 'scene 1'");
      }
      have_header = true;
      continue;
    }
    if (keyword == "bounds") {
      bounds.min = readVec3(line, "bounds min");
      bounds.max = readVec3(line, "bounds max");
      have_bounds = true;
    } else if (keyword == "empty_distance") {
      empty_distance = readScalar(line, "empty_distance");
    } else if (keyword == "sphere") {
      Sphere sphere;
      sphere.center = readVec3(line, "sphere center");
      sphere.radius = readScalar(line, "sphere radius");
      primitives.emplace_back(sphere);
    } else if (keyword == "box") {
      Box box;
      box.min = readVec3(line, "box min");
      box.max = readVec3(line, "box max");
      primitives.emplace_back(box);
    } else if (keyword == "capsule") {
      Capsule capsule;
      capsule.a = readVec3(line, "capsule endpoint a");
      capsule.b = readVec3(line, "capsule endpoint b");
      capsule.radius = readScalar(line, "capsule radius");
      primitives.emplace_back(capsule);
    } else {
      throw FormatError("scene file: unknown keyword '" + keyword + "'");
    }
  }
  if (!have_header) {
    throw FormatError("scene file is empty");
  }
  if (!have_bounds) {
    throw FormatError("scene file does not declare bounds");
  }
  return AnalyticScene(std::move(primitives), bounds, empty_distance);
}

AnalyticScene loadScene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open scene file " + path.string());
  }
  return loadScene(in);
}

void saveScene(const AnalyticScene& scene, std::ostream& out) {
  out.precision(17);
  out << "scene 1\n";
  const Aabb bounds = *scene.bounds();
  out << "bounds " << bounds.min.x() << " " << bounds.min.y() << " " << bounds.min.z()
      << " " << bounds.max.x() << " " << bounds.max.y() << " " << bounds.max.z()
      << "\n";
  out << "empty_distance " << scene.emptyDistance() << "\n";
  for (const Primitive& prim : scene.primitives()) {
    if (const auto* sphere = std::get_if<Sphere>(&prim)) {
      out << "sphere " << sphere->center.x() << " " << sphere->center.y() << " "
          << sphere->center.z() << " " << sphere->radius << "\n";
    } else if (const auto* box = std::get_if<Box>(&prim)) {
      out << "box " << box->min.x() << " " << box->min.y() << " " << box->min.z() << " "
          << box->max.x() << " " << box->max.y() << " " << box->max.z() << "\n";
    } else if (const auto* capsule = std::get_if<Capsule>(&prim)) {
      out << "capsule " << capsule->a.x() << " " << capsule->a.y() << " "
          << capsule->a.z() << " " << capsule->b.x() << " " << capsule->b.y() << " "
          << capsule->b.z() << " " << capsule->radius << "\n";
    }
  }
}

void saveScene(const AnalyticScene& scene, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw FormatError("cannot open " + path.string() + " for writing");
  }
  saveScene(scene, out);
}

}  // namespace contraj
