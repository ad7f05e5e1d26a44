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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "contraj/bench.hpp"
#include "contraj/cost_pipeline.hpp"
#include "contraj/planner.hpp"
#include "contraj/sdf/grid.hpp"
#include "contraj/sdf/scene_io.hpp"
#include "contraj/sdf/siren.hpp"
#include "contraj/trajectory_io.hpp"

#include <sstream>

namespace py = pybind11;
using namespace contraj;

PYBIND11_MODULE(_core, m) {
  m.doc() = "continuous local trajectory optimization over signed distance fields";

  py::class_<QuinticTrajectory>(m, "QuinticTrajectory")
      .def(py::init<const StateVector&, const Vec3&, double>(), py::arg("state"),
           py::arg("d"), py::arg("duration_s"))
      .def_property_readonly("state", &QuinticTrajectory::state)
      .def_property_readonly("d", &QuinticTrajectory::d)
      .def_property_readonly("duration_s", &QuinticTrajectory::durationS)
      .def("position", &QuinticTrajectory::position, py::arg("tau"))
      .def("derivative", &QuinticTrajectory::derivative, py::arg("tau"),
           py::arg("order"))
      .def("sample", &QuinticTrajectory::sample, py::arg("n"))
      .def("chord_length", &QuinticTrajectory::chordLength, py::arg("n"));

  m.def("straight_line_state", &straightLineState, py::arg("start_local"),
        py::arg("goal_local"));
  m.def(
      "chord_length_times",
      [](const std::vector<Vec3>& waypoints) { return chordLengthTimes(waypoints); },
      py::arg("waypoints"));

  py::class_<SdfSample>(m, "SdfSample")
      .def_readonly("distance", &SdfSample::distance)
      .def_readonly("gradient", &SdfSample::gradient);

  py::class_<SdfProvider, std::shared_ptr<SdfProvider>>(m, "SdfProvider")
      .def("eval", &SdfProvider::eval, py::arg("point"))
      .def(
          "eval_batch",
          [](const SdfProvider& provider, const std::vector<Vec3>& points) {
            return provider.evalBatch(points);
          },
          py::arg("points"));

  py::class_<Sphere>(m, "Sphere")
      .def(py::init([](const Vec3& center, double radius) {
             return Sphere{center, radius};
           }),
           py::arg("center"), py::arg("radius"));
  py::class_<Box>(m, "Box")
      .def(py::init([](const Vec3& lo, const Vec3& hi) { return Box{lo, hi}; }),
           py::arg("min"), py::arg("max"));
  py::class_<Capsule>(m, "Capsule")
      .def(py::init([](const Vec3& a, const Vec3& b, double radius) {
             return Capsule{a, b, radius};
           }),
           py::arg("a"), py::arg("b"), py::arg("radius"));

  py::class_<AnalyticScene, SdfProvider, std::shared_ptr<AnalyticScene>>(
      m, "AnalyticScene")
      .def(py::init([](const std::vector<std::variant<Sphere, Box, Capsule>>& prims,
                       const Vec3& lo, const Vec3& hi, double empty_distance) {
             std::vector<Primitive> primitives;
             for (const auto& p : prims) {
               std::visit([&primitives](const auto& shape) {
                 primitives.emplace_back(shape);
               }, p);
             }
             return AnalyticScene(std::move(primitives), Aabb{lo, hi}, empty_distance);
           }),
           py::arg("primitives"), py::arg("bounds_min"), py::arg("bounds_max"),
           py::arg("empty_distance") = AnalyticScene::kDefaultEmptyDistance);

  m.def("load_scene",
        [](const std::filesystem::path& path) {
          return std::make_shared<AnalyticScene>(loadScene(path));
        },
        py::arg("path"));
  m.def("save_scene",
        [](const AnalyticScene& scene, const std::filesystem::path& path) {
          saveScene(scene, path);
        },
        py::arg("scene"), py::arg("path"));

  py::class_<GridSdf, SdfProvider, std::shared_ptr<GridSdf>>(m, "GridSdf")
      .def_static(
          "build",
          [](const AnalyticScene& scene, double voxel_size, std::int64_t max_voxels) {
            return std::make_shared<GridSdf>(
                GridSdf::build(scene, voxel_size, max_voxels));
          },
          py::arg("scene"), py::arg("voxel_size"),
          py::arg("max_voxel_count") = GridSdf::kDefaultMaxVoxelCount)
      .def_property_readonly("voxel_size", &GridSdf::voxelSize)
      .def_property_readonly("dims", &GridSdf::dims);

  py::class_<SirenMlp, SdfProvider, std::shared_ptr<SirenMlp>>(m, "SirenMlp")
      .def_static("random_init", &SirenMlp::randomInit, py::arg("hidden_width"),
                  py::arg("hidden_layers"), py::arg("omega0"), py::arg("seed"))
      .def_static(
          "load",
          [](const std::filesystem::path& path) {
            return std::make_shared<SirenMlp>(SirenMlp::load(path));
          },
          py::arg("path"))
      .def("save",
           [](const SirenMlp& mlp, const std::filesystem::path& path) {
             mlp.save(path);
           },
           py::arg("path"))
      .def_property_readonly("omega0", &SirenMlp::omega0);

  py::class_<SirenFitOptions>(m, "SirenFitOptions")
      .def(py::init<>())
      .def_readwrite("sample_count", &SirenFitOptions::sample_count)
      .def_readwrite("iterations", &SirenFitOptions::iterations)
      .def_readwrite("step_size", &SirenFitOptions::step_size)
      .def_readwrite("seed", &SirenFitOptions::seed)
      .def_readwrite("hidden_width", &SirenFitOptions::hidden_width)
      .def_readwrite("hidden_layers", &SirenFitOptions::hidden_layers)
      .def_readwrite("omega0", &SirenFitOptions::omega0)
      .def_readwrite("batch_size", &SirenFitOptions::batch_size)
      .def_readwrite("holdout_count", &SirenFitOptions::holdout_count);

  m.def(
      "fit_siren",
      [](const AnalyticScene& scene, const SirenFitOptions& options) {
        SirenFitResult result = fitSiren(scene, options);
        return py::make_tuple(std::make_shared<SirenMlp>(std::move(result.mlp)),
                              result.holdout_rms);
      },
      py::arg("scene"), py::arg("options"),
      "returns (network, holdout_rms)");

  py::class_<PlannerConfig>(m, "PlannerConfig")
      .def(py::init<>())
      .def_readwrite("w01", &PlannerConfig::w01)
      .def_readwrite("w02", &PlannerConfig::w02)
      .def_readwrite("w11", &PlannerConfig::w11)
      .def_readwrite("w12", &PlannerConfig::w12)
      .def_readwrite("w13", &PlannerConfig::w13)
      .def_readwrite("w14", &PlannerConfig::w14)
      .def_readwrite("alpha", &PlannerConfig::alpha)
      .def_readwrite("sigma", &PlannerConfig::sigma)
      .def_readwrite("n_len", &PlannerConfig::n_len)
      .def_readwrite("n_esdf", &PlannerConfig::n_esdf)
      .def_readwrite("iter_ini", &PlannerConfig::iter_ini)
      .def_readwrite("iter_main", &PlannerConfig::iter_main)
      .def_readwrite("goal_tolerance", &PlannerConfig::goal_tolerance)
      .def_readwrite("duration_s", &PlannerConfig::duration_s)
      .def_readwrite("window_half_extents", &PlannerConfig::window_half_extents)
      .def_readwrite("safe_threshold", &PlannerConfig::safe_threshold);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("initial_cost", &SolveReport::initial_cost)
      .def_readonly("final_cost", &SolveReport::final_cost)
      .def_readonly("iterations_used", &SolveReport::iterations_used)
      .def_readonly("wall_time_s", &SolveReport::wall_time_s);

  py::class_<CostBreakdown>(m, "CostBreakdown")
      .def_readonly("f11", &CostBreakdown::f11)
      .def_readonly("f12", &CostBreakdown::f12)
      .def_readonly("f13", &CostBreakdown::f13)
      .def_readonly("f14", &CostBreakdown::f14)
      .def_readonly("total", &CostBreakdown::total);

  m.def(
      "total_cost",
      [](const StateVector& state, const SdfProvider& provider, const Vec3& goal,
         const PlannerConfig& config, const Vec3& start) {
        return totalCost(state, provider, goal, config, start);
      },
      py::arg("state"), py::arg("provider"), py::arg("goal_local"), py::arg("config"),
      py::arg("start_local") = Vec3(Vec3::Zero()));

  py::class_<LocalWindow>(m, "LocalWindow")
      .def(py::init([](const Vec3& half_extents, const Vec3& center) {
             return LocalWindow{half_extents, center};
           }),
           py::arg("half_extents"), py::arg("center"))
      .def_readwrite("half_extents", &LocalWindow::half_extents)
      .def_readwrite("center", &LocalWindow::center)
      .def("contains", &LocalWindow::contains)
      .def("to_local", &LocalWindow::toLocal)
      .def("to_global", &LocalWindow::toGlobal);

  m.def(
      "select_local_goal",
      [](const GlobalPath& path, const LocalWindow& window,
         std::shared_ptr<const SdfProvider> provider, double safe_threshold) {
        const GoalSelection selection =
            selectLocalGoal(path, window, *provider, safe_threshold);
        return py::make_tuple(selection.goal_world, selection.path_index);
      },
      py::arg("path"), py::arg("window"), py::arg("provider"),
      py::arg("safe_threshold"), "returns (goal_world, path_index)");

  py::class_<PlanReport>(m, "PlanReport")
      .def_readonly("trajectory", &PlanReport::trajectory)
      .def_readonly("local_goal_world", &PlanReport::local_goal_world)
      .def_readonly("goal_index", &PlanReport::goal_index)
      .def_readonly("loop_time_s", &PlanReport::loop_time_s)
      .def_readonly("clearance_mean", &PlanReport::clearance_mean)
      .def_readonly("clearance_min", &PlanReport::clearance_min)
      .def_readonly("path_length", &PlanReport::path_length)
      .def_readonly("initial_report", &PlanReport::initial_report)
      .def_readonly("main_report", &PlanReport::main_report)
      .def_readonly("batch_queries", &PlanReport::batch_queries)
      .def_readonly("solver_failed", &PlanReport::solver_failed)
      .def_readonly("window_exceeded", &PlanReport::window_exceeded);

  m.def(
      "plan_once",
      [](const GlobalPath& path, const Vec3& pose, const LocalWindow& window,
         std::shared_ptr<const SdfProvider> provider, const PlannerConfig& config) {
        return planOnce(path, pose, window, std::move(provider), config);
      },
      py::arg("path"), py::arg("pose"), py::arg("window"), py::arg("provider"),
      py::arg("config"));

  m.def(
      "replan_loop",
      [](const GlobalPath& path,
         std::shared_ptr<const SdfProvider> initial_provider,
         const std::vector<std::pair<int, std::shared_ptr<const SdfProvider>>>& swaps,
         const PlannerConfig& config, int steps, double advance_fraction) {
        SnapshotSchedule schedule;
        schedule.initial = std::move(initial_provider);
        schedule.swaps = swaps;
        return replanLoop(path, schedule, config, {steps, advance_fraction});
      },
      py::arg("path"), py::arg("provider"),
      py::arg("swaps") = std::vector<std::pair<int, std::shared_ptr<const SdfProvider>>>{},
      py::arg("config") = PlannerConfig{}, py::arg("steps") = 1,
      py::arg("advance_fraction") = 0.3);

  m.def(
      "trajectory_clearance",
      [](const QuinticTrajectory& trajectory, const SdfProvider& provider,
         int subdivisions) {
        return trajectoryClearance(trajectory, provider, subdivisions);
      },
      py::arg("trajectory"), py::arg("provider"),
      py::arg("subdivisions") = kReportSamples, "returns (mean, min)");

  m.def("write_trajectory_record", [](const QuinticTrajectory& trajectory) {
    std::ostringstream out;
    writeTrajectoryRecord(out, trajectory);
    return out.str();
  });
  m.def(
      "write_trajectory_table",
      [](const QuinticTrajectory& trajectory, int subdivisions) {
        std::ostringstream out;
        writeTrajectoryTable(out, trajectory, subdivisions);
        return out.str();
      },
      py::arg("trajectory"), py::arg("subdivisions") = 100);
}
