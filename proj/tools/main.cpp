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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "contraj/bench.hpp"
#include "contraj/errors.hpp"
#include "contraj/planner.hpp"
#include "contraj/sdf/grid.hpp"
#include "contraj/sdf/scene_io.hpp"
#include "contraj/sdf/siren.hpp"
#include "contraj/trajectory_io.hpp"

namespace {

using contraj::Vec3;

Vec3 parseVec3(const std::string& text) {
  Vec3 v;
  char comma1 = 0, comma2 = 0;
  std::istringstream in(text);
  if (!(in >> v.x() >> comma1 >> v.y() >> comma2 >> v.z()) || comma1 != ',' ||
      comma2 != ',') {
    throw CLI::ValidationError("expected 'x,y,z', got '" + text + "'");
  }
  return v;
}

contraj::GlobalPath parsePath(const std::string& text, double densify_step) {
  contraj::GlobalPath path;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ';')) {
    if (token.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    path.push_back(parseVec3(token));
  }
  if (path.size() < 2) {
    throw CLI::ValidationError("path needs at least two 'x,y,z' waypoints");
  }
  if (densify_step <= 0.0) {
    return path;
  }
  contraj::GlobalPath dense;
  dense.push_back(path.front());
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Vec3 from = path[i - 1];
    const Vec3 to = path[i];
    const double length = (to - from).norm();
    const int pieces = std::max(1, static_cast<int>(std::ceil(length / densify_step)));
    for (int k = 1; k <= pieces; ++k) {
      dense.push_back(from + (static_cast<double>(k) / pieces) * (to - from));
    }
  }
  return dense;
}

void applyConfigFile(const std::string& path, contraj::PlannerConfig& config) {
  std::ifstream in(path);
  if (!in) {
    throw CLI::ValidationError("cannot open config file " + path);
  }
  nlohmann::json json;
  in >> json;
  auto get = [&json](const char* key, double& field) {
    if (json.contains(key)) {
      field = json.at(key).get<double>();
    }
  };
  auto get_int = [&json](const char* key, int& field) {
    if (json.contains(key)) {
      field = json.at(key).get<int>();
    }
  };
  get("w01", config.w01);
  get("w02", config.w02);
  get("w11", config.w11);
  get("w12", config.w12);
  get("w13", config.w13);
  get("w14", config.w14);
  get("alpha", config.alpha);
  get("sigma", config.sigma);
  get_int("n_len", config.n_len);
  get_int("n_esdf", config.n_esdf);
  get_int("iter_ini", config.iter_ini);
  get_int("iter_main", config.iter_main);
  get("goal_tolerance", config.goal_tolerance);
  get("duration_s", config.duration_s);
  get("safe_threshold", config.safe_threshold);
  get("gradient_tol", config.gradient_tol);
  get("step_tol", config.step_tol);
  get("cost_tol", config.cost_tol);
  if (json.contains("window_half_extents")) {
    const auto& extents = json.at("window_half_extents");
    config.window_half_extents =
        Vec3(extents.at(0).get<double>(), extents.at(1).get<double>(),
             extents.at(2).get<double>());
  }
}

std::vector<int> parseIntList(const std::string& text) {
  std::vector<int> values;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    values.push_back(std::stoi(token));
  }
  return values;
}

std::vector<double> parseDoubleList(const std::string& text) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    values.push_back(std::stod(token));
  }
  return values;
}

struct CommonOptions {
  std::string scene_path;
  std::string path_text;
  double densify_step = 0.5;
  std::string config_path;
  std::string provider = "analytic";
  double voxel_size = 0.05;
  std::string weights_path;
  std::string start_text;
  int repetitions = 1;
  std::uint64_t seed = 0;
  std::string sigma_override;
  std::string iter_ini_override;
  std::string iter_main_override;
  std::string n_esdf_override;
};

void addCommonOptions(CLI::App& cmd, CommonOptions& opts) {
  cmd.add_option("--scene", opts.scene_path, "scene file")->required();
  cmd.add_option("--path", opts.path_text,
                 "global path as 'x,y,z;x,y,z;...' waypoints (m)")
      ->required();
  cmd.add_option("--densify", opts.densify_step,
                 "max waypoint spacing after densification, 0 disables (m)");
  cmd.add_option("--config", opts.config_path, "planner config file (json)");
  cmd.add_option("--start", opts.start_text, "start pose x,y,z (default: first waypoint)");
  cmd.add_option("--provider", opts.provider, "analytic | grid | siren");
  cmd.add_option("--voxel-size", opts.voxel_size, "grid provider voxel size (m)");
  cmd.add_option("--weights", opts.weights_path, "siren provider weight file");
  cmd.add_option("--reps", opts.repetitions, "plans per configuration");
  cmd.add_option("--seed", opts.seed, "experiment seed");
}

contraj::ExperimentSpec buildSpec(const CommonOptions& opts) {
  contraj::ExperimentSpec spec;
  spec.scene = contraj::loadScene(opts.scene_path);
  spec.path = parsePath(opts.path_text, opts.densify_step);
  if (!opts.config_path.empty()) {
    applyConfigFile(opts.config_path, spec.config);
  }
  if (!opts.start_text.empty()) {
    spec.start_pose = parseVec3(opts.start_text);
  }
  if (opts.provider == "analytic") {
    spec.provider = contraj::ProviderKind::kAnalytic;
  } else if (opts.provider == "grid") {
    spec.provider = contraj::ProviderKind::kGrid;
  } else if (opts.provider == "siren") {
    spec.provider = contraj::ProviderKind::kSiren;
  } else {
    throw CLI::ValidationError("unknown provider '" + opts.provider + "'");
  }
  spec.voxel_size = opts.voxel_size;
  spec.weights_path = opts.weights_path;
  spec.repetitions = opts.repetitions;
  spec.seed = opts.seed;
  if (!opts.sigma_override.empty()) {
    spec.sigma_values = parseDoubleList(opts.sigma_override);
    spec.config.sigma = spec.sigma_values.front();
  }
  if (!opts.iter_ini_override.empty()) {
    spec.iter_ini_values = parseIntList(opts.iter_ini_override);
    spec.config.iter_ini = spec.iter_ini_values.front();
  }
  if (!opts.iter_main_override.empty()) {
    spec.iter_main_values = parseIntList(opts.iter_main_override);
    spec.config.iter_main = spec.iter_main_values.front();
  }
  if (!opts.n_esdf_override.empty()) {
    spec.n_esdf_values = parseIntList(opts.n_esdf_override);
    spec.config.n_esdf = spec.n_esdf_values.front();
  }
  return spec;
}

void writeOutput(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw CLI::ValidationError("cannot open " + out_path + " for writing");
  }
  out << text;
}

int tableExit(const std::vector<contraj::MetricsRow>& rows, bool strict) {
  if (!strict) {
    return 0;
  }
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous local trajectory optimization over signed distance fields"};
  app.require_subcommand(1);

  CommonOptions plan_opts;
  std::string plan_out;
  int plan_table_samples = 100;
  bool plan_trace = false;
  CLI::App* plan_cmd = app.add_subcommand("plan", "run a single planning loop");
  addCommonOptions(*plan_cmd, plan_opts);
  plan_cmd->add_option("--out", plan_out, "write trajectory record and table here");
  plan_cmd->add_option("--table-samples", plan_table_samples, "table subdivisions");
  plan_cmd->add_flag("--trace", plan_trace, "print per-iteration solver traces");
  plan_cmd->add_option("--sigma", plan_opts.sigma_override, "barrier threshold (m)");
  plan_cmd->add_option("--iter-ini", plan_opts.iter_ini_override, "first-stage cap");
  plan_cmd->add_option("--iter-main", plan_opts.iter_main_override, "main-stage cap");
  plan_cmd->add_option("--n-esdf", plan_opts.n_esdf_override, "field sample count");

  CommonOptions sweep_opts;
  std::string sweep_out;
  std::string sweep_format = "text";
  bool sweep_mask_times = false;
  bool sweep_strict = false;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
  addCommonOptions(*sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--iter-ini", sweep_opts.iter_ini_override,
                        "comma-separated first-stage caps (0 skips the stage)");
  sweep_cmd->add_option("--iter-main", sweep_opts.iter_main_override,
                        "comma-separated main-stage caps");
  sweep_cmd->add_option("--n-esdf", sweep_opts.n_esdf_override,
                        "comma-separated field sample counts");
  sweep_cmd->add_option("--sigma", sweep_opts.sigma_override,
                        "comma-separated barrier thresholds (m)");
  sweep_cmd->add_option("--format", sweep_format, "text | csv");
  sweep_cmd->add_option("--out", sweep_out, "output file (default: stdout)");
  sweep_cmd->add_flag("--mask-times", sweep_mask_times,
                      "replace wall-clock columns for reproducibility checks");
  sweep_cmd->add_flag("--strict", sweep_strict, "nonzero exit on any failed row");

  CommonOptions compare_opts;
  std::string compare_out;
  std::string compare_format = "text";
  bool compare_strict = false;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "plan against analytic, grid and siren providers");
  addCommonOptions(*compare_cmd, compare_opts);
  compare_cmd->add_option("--format", compare_format, "text | csv");
  compare_cmd->add_option("--out", compare_out, "output file (default: stdout)");
  compare_cmd->add_flag("--strict", compare_strict, "nonzero exit on any failed row");

  std::string fit_scene, fit_out;
  contraj::SirenFitOptions fit_options;
  CLI::App* fit_cmd = app.add_subcommand("fit", "fit a network to a scene field");
  fit_cmd->add_option("--scene", fit_scene, "scene file")->required();
  fit_cmd->add_option("--out", fit_out, "weight file to write")->required();
  fit_cmd->add_option("--samples", fit_options.sample_count, "training samples");
  fit_cmd->add_option("--iters", fit_options.iterations, "gradient steps");
  fit_cmd->add_option("--step", fit_options.step_size, "step size");
  fit_cmd->add_option("--seed", fit_options.seed, "rng seed");
  fit_cmd->add_option("--width", fit_options.hidden_width, "hidden width");
  fit_cmd->add_option("--hidden-layers", fit_options.hidden_layers, "hidden layers");
  fit_cmd->add_option("--omega0", fit_options.omega0, "sine frequency scale");
  fit_cmd->add_option("--batch", fit_options.batch_size, "minibatch size");
  fit_cmd->add_option("--holdout", fit_options.holdout_count, "held-out samples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan_cmd) {
      const contraj::ExperimentSpec spec = buildSpec(plan_opts);
      const Vec3 pose = spec.start_pose.value_or(spec.path.front());
      const contraj::LocalWindow window{spec.config.window_half_extents, pose};
      std::shared_ptr<const contraj::SdfProvider> provider;
      switch (spec.provider) {
        case contraj::ProviderKind::kAnalytic:
          provider = std::make_shared<contraj::AnalyticScene>(spec.scene);
          break;
        case contraj::ProviderKind::kGrid:
          provider = std::make_shared<contraj::GridSdf>(
              contraj::GridSdf::build(spec.scene, spec.voxel_size));
          break;
        case contraj::ProviderKind::kSiren:
          provider = std::make_shared<contraj::SirenMlp>(
              contraj::SirenMlp::load(spec.weights_path));
          break;
      }
      contraj::PlannerConfig config = spec.config;
      if (plan_trace) {
        config.solver_trace = &std::cerr;
      }
      const contraj::PlanReport report =
          contraj::planOnce(spec.path, pose, window, provider, config);
      std::cout << "local goal: " << report.local_goal_world.transpose()
                << " (path index " << report.goal_index << ")\n"
                << "loop time: " << report.loop_time_s * 1e3 << " ms\n"
                << "clearance mean/min: " << report.clearance_mean << " / "
                << report.clearance_min << " m\n"
                << "path length: " << report.path_length << " m\n"
                << "stage iterations: " << report.initial_report.iterations_used
                << " + " << report.main_report.iterations_used << "\n"
                << "field batch queries: " << report.batch_queries << "\n";
      if (report.solver_failed) {
        std::cout << "warning: solver failure, straight-line fallback emitted\n";
      }
      if (report.window_exceeded) {
        std::cout << "note: trajectory samples left the inflated local window\n";
      }
      if (!plan_out.empty()) {
        std::ofstream out(plan_out);
        if (!out) {
          throw std::runtime_error("cannot open " + plan_out + " for writing");
        }
        contraj::writeTrajectoryRecord(out, report.trajectory);
        contraj::writeTrajectoryTable(out, report.trajectory, plan_table_samples);
        std::cout << "trajectory written to " << plan_out << "\n";
      }
      return report.solver_failed ? 1 : 0;
    }

    if (*sweep_cmd) {
      const contraj::ExperimentSpec spec = buildSpec(sweep_opts);
      const auto rows = contraj::runExperiment(spec);
      const auto format = sweep_format == "csv" ? contraj::TableFormat::kCsv
                                                : contraj::TableFormat::kAligned;
      writeOutput(sweep_out, contraj::emitTable(rows, format, sweep_mask_times));
      return tableExit(rows, sweep_strict);
    }

    if (*compare_cmd) {
      const contraj::ExperimentSpec spec = buildSpec(compare_opts);
      const auto rows = contraj::compareProviders(spec);
      const auto format = compare_format == "csv" ? contraj::TableFormat::kCsv
                                                  : contraj::TableFormat::kAligned;
      writeOutput(compare_out, contraj::emitTable(rows, format, false));
      return tableExit(rows, compare_strict);
    }

    if (*fit_cmd) {
      const contraj::AnalyticScene scene = contraj::loadScene(fit_scene);
      const contraj::SirenFitResult result = contraj::fitSiren(scene, fit_options);
      result.mlp.save(fit_out);
      std::cout << "holdout rms: " << result.holdout_rms << " m\n"
                << "final batch loss: " << result.final_loss << "\n"
                << "weights written to " << fit_out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
