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

#include "contraj/planner.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>

#include "contraj/errors.hpp"

namespace contraj {

GoalSelection selectLocalGoal(const GlobalPath& path, const LocalWindow& window,
                              const SdfProvider& provider, double safe_threshold) {
  if (path.size() < 2) {
    throw std::invalid_argument("global path needs at least two waypoints");
  }
  bool any_inside = false;
  for (std::size_t i = path.size(); i-- > 0;) {
    if (!window.contains(path[i])) {
      continue;
    }
    any_inside = true;
    if (provider.eval(path[i]).distance >= safe_threshold) {
      return {path[i], i};
    }
  }
  if (!any_inside) {
    throw WindowEmptyError("no global waypoint inside the local window");
  }
  throw NoSafeGoalError("every in-window waypoint is below the safety threshold");
}

namespace {

PlanReport fallbackReport(const Vec3& pose, const LocalWindow& window,
                          const GoalSelection& selection, const PlannerConfig& config) {
  PlanReport report;
  report.solver_failed = true;
  report.local_goal_world = selection.goal_world;
  report.goal_index = selection.path_index;
  const Vec3 start_local = window.toLocal(pose);
  const Vec3 goal_local = window.toLocal(selection.goal_world);
  report.trajectory = QuinticTrajectory(straightLineState(start_local, goal_local),
                                        pose, config.duration_s);
  return report;
}

}  // namespace

PlanReport planOnce(const GlobalPath& path, const Vec3& pose, const LocalWindow& window,
                    std::shared_ptr<const SdfProvider> provider,
                    const PlannerConfig& config) {
  config.validate();
  const auto t_start = std::chrono::steady_clock::now();

  const GoalSelection selection =
      selectLocalGoal(path, window, *provider, config.safeThreshold());

  // Contiguous in-window stretch of the path ending at the chosen goal, in
  // path order, prefixed by the drone position.
  std::size_t first = selection.path_index;
  while (first > 0 && window.contains(path[first - 1])) {
    --first;
  }
  const Vec3 start_local = window.toLocal(pose);
  std::vector<Vec3> waypoints_local;
  waypoints_local.reserve(selection.path_index - first + 2);
  waypoints_local.push_back(start_local);
  for (std::size_t i = first; i <= selection.path_index; ++i) {
    const Vec3 local = window.toLocal(path[i]);
    if ((local - waypoints_local.back()).norm() > 1e-9) {
      waypoints_local.push_back(local);
    }
  }
  const Vec3 goal_local = window.toLocal(selection.goal_world);

  const StageResult stage1 =
      initialOptimize(waypoints_local, start_local, goal_local, config);
  const TranslatedSdf local_provider(provider, window.center);
  const MainResult stage2 =
      mainOptimize(stage1.state, local_provider, goal_local, config, start_local);

  const double loop_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  if (stage1.report.termination == Termination::kNumericalFailure ||
      stage2.report.termination == Termination::kNumericalFailure) {
    PlanReport report = fallbackReport(pose, window, selection, config);
    report.initial_report = stage1.report;
    report.main_report = stage2.report;
    report.loop_time_s = loop_time;
    return report;
  }

  PlanReport report;
  report.trajectory = QuinticTrajectory(stage2.state, pose, config.duration_s);
  report.local_goal_world = selection.goal_world;
  report.goal_index = selection.path_index;
  report.loop_time_s = loop_time;
  report.initial_report = stage1.report;
  report.main_report = stage2.report;
  report.batch_queries = stage2.batch_queries;
  report.degenerate_waypoints = stage1.degenerate_waypoints;
  report.clamped_queries = stage2.clamped_queries;

  const auto samples = report.trajectory.sample(kReportSamples);
  const Aabb inflated{window.center - 1.1 * window.half_extents,
                      window.center + 1.1 * window.half_extents};
  const auto provider_bounds = provider->bounds();
  double sum = 0.0;
  double minimum = std::numeric_limits<double>::infinity();
  for (const Vec3& p_world : samples) {
    if (!inflated.contains(p_world)) {
      report.window_exceeded = true;
    }
    Vec3 query = p_world;
    if (provider_bounds && !provider_bounds->contains(query)) {
      query = provider_bounds->clamp(query);
      report.clamped_queries = true;
    }
    const double distance = provider->eval(query).distance;
    sum += distance;
    minimum = std::min(minimum, distance);
  }
  report.clearance_mean = sum / static_cast<double>(samples.size());
  report.clearance_min = minimum;
  report.path_length = report.trajectory.chordLength(kReportSamples);
  return report;
}

std::shared_ptr<const SdfProvider> SnapshotSchedule::providerFor(
    int step, std::shared_ptr<const SdfProvider> current) const {
  std::shared_ptr<const SdfProvider> chosen = current;
  for (const auto& [swap_step, provider] : swaps) {
    if (swap_step == step && provider) {
      chosen = provider;
    }
  }
  return chosen;
}

std::vector<PlanReport> replanLoop(const GlobalPath& path,
                                   const SnapshotSchedule& schedule,
                                   const PlannerConfig& config,
                                   const ReplanOptions& options) {
  config.validate();
  if (options.steps < 1) {
    throw std::invalid_argument("steps must be >= 1");
  }
  if (!(options.advance_fraction > 0.0 && options.advance_fraction <= 1.0)) {
    throw std::invalid_argument("advance_fraction must be in (0, 1]");
  }
  if (path.size() < 2) {
    throw std::invalid_argument("global path needs at least two waypoints");
  }
  if (!schedule.initial) {
    throw std::invalid_argument("schedule needs an initial provider snapshot");
  }

  std::vector<PlanReport> reports;
  reports.reserve(static_cast<std::size_t>(options.steps));
  Vec3 pose = path.front();
  std::shared_ptr<const SdfProvider> provider = schedule.initial;
  for (int step = 0; step < options.steps; ++step) {
    provider = schedule.providerFor(step, provider);
    const LocalWindow window{config.window_half_extents, pose};
    try {
      reports.push_back(planOnce(path, pose, window, provider, config));
    } catch (const NoSafeGoalError&) {
      break;
    } catch (const WindowEmptyError&) {
      break;
    }
    pose = reports.back().trajectory.position(options.advance_fraction);
    if ((pose - path.back()).norm() <= config.goal_tolerance) {
      break;
    }
  }
  return reports;
}

}  // namespace contraj
