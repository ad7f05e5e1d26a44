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

#include "contraj/bench.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

namespace contraj {
namespace {

ExperimentSpec smallSpec() {
  ExperimentSpec spec;
  spec.scene = AnalyticScene({Sphere{Vec3(1.5, 0.25, 1.0), 0.5}},
                             {Vec3(-8, -4, -1), Vec3(8, 4, 3)});
  for (double x = -1.0; x <= 5.0 + 1e-9; x += 0.5) {
    spec.path.emplace_back(x, 0.0, 1.0);
  }
  spec.config.safe_threshold = 0.6;
  spec.repetitions = 2;
  return spec;
}

TEST_CASE("sweep emits one row per cross-product point in order") {
  ExperimentSpec spec = smallSpec();
  spec.iter_ini_values = {0, 30};
  spec.iter_main_values = {10, 30};
  spec.n_esdf_values = {5};
  spec.sigma_values = {1.0, 1.5};
  const auto rows = runExperiment(spec);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].iter_ini == 0);
  CHECK(rows[0].sigma == 1.0);
  CHECK(rows[1].sigma == 1.5);
  CHECK(rows[7].iter_ini == 30);
  CHECK(rows[7].iter_main == 30);
  for (const MetricsRow& row : rows) {
    CHECK(row.error.empty());
    CHECK(row.time_min_ms <= row.time_mean_ms + 1e-9);
    CHECK(row.time_mean_ms <= row.time_max_ms + 1e-9);
    CHECK(row.clearance_min <= row.clearance_mean + 1e-12);
  }
}

TEST_CASE("sweep outputs are reproducible apart from wall-clock fields") {
  ExperimentSpec spec = smallSpec();
  spec.iter_main_values = {10, 30};
  const auto a = runExperiment(spec);
  const auto b = runExperiment(spec);
  CHECK(emitTable(a, TableFormat::kCsv, true) == emitTable(b, TableFormat::kCsv, true));
}

TEST_CASE("empty row lists emit just the header") {
  const std::string csv = emitTable({}, TableFormat::kCsv);
  std::istringstream in(csv);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
  }
  CHECK(lines == 1);
  CHECK(csv.rfind("iter_ini,", 0) == 0);

  const std::string aligned = emitTable({}, TableFormat::kAligned);
  CHECK(aligned.find("iter_ini") != std::string::npos);
}

TEST_CASE("csv rows survive a round trip through the parser") {
  MetricsRow row;
  row.iter_ini = 50;
  row.iter_main = 30;
  row.n_esdf = 5;
  row.time_mean_ms = 12.5;
  row.time_min_ms = 10.0;
  row.time_max_ms = 15.125;
  row.clearance_mean = 1.0625;
  row.clearance_min = 0.8125;
  row.path_length = 4.53125;
  row.sigma = 1.5;
  row.provider = "analytic";
  row.analytic_clearance_mean = 1.0625;
  row.analytic_clearance_min = 0.8125;

  const std::string csv = emitTable(std::vector<MetricsRow>{row}, TableFormat::kCsv);
  const auto parsed = parseCsvTable(csv);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].iter_ini == row.iter_ini);
  CHECK(parsed[0].iter_main == row.iter_main);
  CHECK(parsed[0].n_esdf == row.n_esdf);
  CHECK(parsed[0].time_mean_ms == row.time_mean_ms);
  CHECK(parsed[0].clearance_mean == row.clearance_mean);
  CHECK(parsed[0].clearance_min == row.clearance_min);
  CHECK(parsed[0].path_length == row.path_length);
  CHECK(parsed[0].sigma == row.sigma);
  CHECK(parsed[0].provider == row.provider);
  CHECK(parsed[0].error.empty());
}

TEST_CASE("provider comparison keeps self-consistency for the exact provider") {
  ExperimentSpec spec = smallSpec();
  spec.repetitions = 1;
  const auto rows = compareProviders(spec);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].provider == "analytic");
  CHECK(rows[1].provider == "grid");
  CHECK(rows[2].provider == "siren");

  // Re-scoring the analytic trajectory against the analytic scene is the
  // identity.
  CHECK(rows[0].error.empty());
  CHECK(rows[0].analytic_clearance_mean ==
        doctest::Approx(rows[0].clearance_mean).epsilon(1e-12));
  CHECK(rows[0].analytic_clearance_min ==
        doctest::Approx(rows[0].clearance_min).epsilon(1e-12));

  // No weight file was given, so the network row is skipped with a notice.
  CHECK(rows[2].error == "skipped: no weight file");
}

TEST_CASE("a grid provider at fine resolution stays close to the exact one") {
  ExperimentSpec spec = smallSpec();
  spec.repetitions = 1;
  spec.voxel_size = 0.05;
  const auto rows = compareProviders(spec);
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[1].error.empty());
  CHECK(std::abs(rows[1].analytic_clearance_min - rows[0].analytic_clearance_min) <
        0.1);
}

TEST_CASE("failed sweep points become error rows and the run continues") {
  ExperimentSpec spec = smallSpec();
  spec.provider = ProviderKind::kSiren;
  spec.weights_path = "/nonexistent/weights.txt";
  spec.iter_main_values = {10, 30};
  const auto rows = runExperiment(spec);
  REQUIRE(rows.size() == 2);
  for (const MetricsRow& row : rows) {
    CHECK_FALSE(row.error.empty());
  }
}

}  // namespace
}  // namespace contraj
