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

#include <cstddef>
#include <memory>
#include <vector>

#include "contraj/cost_pipeline.hpp"
#include "contraj/sdf/provider.hpp"
#include "contraj/trajectory.hpp"

namespace contraj {

// Axis-aligned planning region kept centered on the drone. The local frame
// is a pure translation by center, so a trajectory planned locally starts
// at the origin with zero constant terms.
struct LocalWindow {
  Vec3 half_extents{3.0, 3.0, 1.6};
  Vec3 center = Vec3::Zero();

  Aabb aabb() const { return {center - half_extents, center + half_extents}; }
  bool contains(const Vec3& p_world) const { return aabb().contains(p_world); }
  Vec3 toLocal(const Vec3& p_world) const { return p_world - center; }
  Vec3 toGlobal(const Vec3& p_local) const { return p_local + center; }
};

using GlobalPath = std::vector<Vec3>;

struct GoalSelection {
  Vec3 goal_world = Vec3::Zero();
  std::size_t path_index = 0;
};

// Furthest in-window global waypoint whose field distance clears
// safe_threshold, walking backward along the path when the furthest one is
// unsafe. Throws WindowEmptyError when no waypoint is inside the window and
// NoSafeGoalError when none of the in-window ones is safe.
GoalSelection selectLocalGoal(const GlobalPath& path, const LocalWindow& window,
                              const SdfProvider& provider, double safe_threshold);

struct PlanReport {
  QuinticTrajectory trajectory;  // world frame: constant terms at the drone pose
  Vec3 local_goal_world = Vec3::Zero();
  std::size_t goal_index = 0;
  double loop_time_s = 0.0;  // goal selection plus both stages
  double clearance_mean = 0.0;
  double clearance_min = 0.0;
  double path_length = 0.0;
  SolveReport initial_report;
  SolveReport main_report;
  int batch_queries = 0;
  bool solver_failed = false;
  bool window_exceeded = false;       // a post-hoc sample left the inflated window
  bool degenerate_waypoints = false;
  bool clamped_queries = false;
};

// Post-hoc sampling density for clearance and length metrics.
inline constexpr int kReportSamples = 100;

// One planning loop: goal selection, waypoint-fit stage, main stage seeded
// with its output, then dense metrics against the provider. A solver
// failure is reported with the straight-line fallback trajectory instead of
// propagating.
PlanReport planOnce(const GlobalPath& path, const Vec3& pose, const LocalWindow& window,
                    std::shared_ptr<const SdfProvider> provider,
                    const PlannerConfig& config);

// Provider snapshots scheduled by step index. Swaps apply before the plan of
// the given step; between swaps every plan keeps using the latest snapshot.
struct SnapshotSchedule {
  std::shared_ptr<const SdfProvider> initial;
  std::vector<std::pair<int, std::shared_ptr<const SdfProvider>>> swaps;

  std::shared_ptr<const SdfProvider> providerFor(
      int step, std::shared_ptr<const SdfProvider> current) const;
};

struct ReplanOptions {
  int steps = 1;
  double advance_fraction = 0.3;  // flown fraction of each plan before replanning
};

// Scripted replanning: advance along each planned trajectory, re-center the
// window, swap provider snapshots on schedule and plan again. Halts with
// partial results when no safe local goal exists or once the drone is within
// goal_tolerance of the final global waypoint.
std::vector<PlanReport> replanLoop(const GlobalPath& path,
                                   const SnapshotSchedule& schedule,
                                   const PlannerConfig& config,
                                   const ReplanOptions& options);

}  // namespace contraj
