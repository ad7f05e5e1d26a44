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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contraj/planner.hpp"
#include "contraj/sdf/analytic_scene.hpp"

namespace contraj {

enum class ProviderKind { kAnalytic, kGrid, kSiren };

const char* providerKindName(ProviderKind kind);

struct ExperimentSpec {
  AnalyticScene scene;
  GlobalPath path;
  PlannerConfig config;
  std::optional<Vec3> start_pose;  // defaults to the first path waypoint

  // Sweep axes; the cross product in this nesting order defines row order.
  std::vector<int> iter_ini_values{50};
  std::vector<int> iter_main_values{30};
  std::vector<int> n_esdf_values{5};
  std::vector<double> sigma_values{1.5};

  ProviderKind provider = ProviderKind::kAnalytic;
  double voxel_size = 0.05;      // grid provider resolution
  std::string weights_path;      // siren provider weight file

  int repetitions = 1;
  std::uint64_t seed = 0;
};

struct MetricsRow {
  int iter_ini = 0;
  int iter_main = 0;
  int n_esdf = 0;
  double time_mean_ms = 0.0;
  double time_min_ms = 0.0;
  double time_max_ms = 0.0;
  double clearance_mean = 0.0;
  double clearance_min = 0.0;
  double path_length = 0.0;
  double sigma = 0.0;
  std::string provider;
  // Clearances of the same trajectory re-evaluated against the exact scene;
  // only filled by compareProviders.
  double analytic_clearance_mean = 0.0;
  double analytic_clearance_min = 0.0;
  std::string error;  // nonempty when the sweep point failed
};

// Dense clearance statistics (mean, min) of a trajectory against a provider.
std::pair<double, double> trajectoryClearance(const QuinticTrajectory& trajectory,
                                              const SdfProvider& provider,
                                              int subdivisions = kReportSamples);

// Fixed start and goal, `repetitions` plans per sweep point, aggregated
// metrics per row. Failures become per-row error entries; the run continues.
std::vector<MetricsRow> runExperiment(const ExperimentSpec& spec);

// Same plan against the exact scene, the interpolated grid and the network
// provider, with every trajectory re-scored against the exact scene. A
// missing weight file skips the network row with a notice in its error
// field.
std::vector<MetricsRow> compareProviders(const ExperimentSpec& spec);

enum class TableFormat { kAligned, kCsv };

// Stable table rendering; mask_times replaces wall-clock columns with "-"
// so reproducibility checks can compare outputs byte for byte.
std::string emitTable(std::span<const MetricsRow> rows, TableFormat format,
                      bool mask_times = false);

// Inverse of emitTable for the comma-separated format.
std::vector<MetricsRow> parseCsvTable(const std::string& text);

}  // namespace contraj
