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

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <sstream>

#include "contraj/errors.hpp"
#include "contraj/sdf/grid.hpp"
#include "contraj/sdf/siren.hpp"

namespace contraj {

namespace {

constexpr const char* kCsvHeader =
    "iter_ini,iter_main,n_esdf,time_mean_ms,time_min_ms,time_max_ms,"
    "clearance_mean_m,clearance_min_m,path_length_m,sigma,provider,"
    "analytic_clearance_mean_m,analytic_clearance_min_m,error";

std::shared_ptr<const SdfProvider> buildProvider(const ExperimentSpec& spec,
                                                 ProviderKind kind) {
  switch (kind) {
    case ProviderKind::kAnalytic:
      return std::make_shared<AnalyticScene>(spec.scene);
    case ProviderKind::kGrid:
      return std::make_shared<GridSdf>(GridSdf::build(spec.scene, spec.voxel_size));
    case ProviderKind::kSiren:
      return std::make_shared<SirenMlp>(SirenMlp::load(spec.weights_path));
  }
  throw std::invalid_argument("unknown provider kind");
}

struct Aggregate {
  double time_mean_ms = 0.0;
  double time_min_ms = std::numeric_limits<double>::infinity();
  double time_max_ms = 0.0;
  double clearance_mean = 0.0;
  double clearance_min = std::numeric_limits<double>::infinity();
  double path_length = 0.0;
  std::vector<PlanReport> reports;
};

Aggregate runRepetitions(const ExperimentSpec& spec,
                         std::shared_ptr<const SdfProvider> provider,
                         const PlannerConfig& config) {
  const Vec3 pose = spec.start_pose.value_or(spec.path.front());
  const LocalWindow window{config.window_half_extents, pose};
  Aggregate agg;
  for (int rep = 0; rep < spec.repetitions; ++rep) {
    PlanReport report = planOnce(spec.path, pose, window, provider, config);
    const double ms = report.loop_time_s * 1e3;
    agg.time_mean_ms += ms / spec.repetitions;
    agg.time_min_ms = std::min(agg.time_min_ms, ms);
    agg.time_max_ms = std::max(agg.time_max_ms, ms);
    agg.clearance_mean += report.clearance_mean / spec.repetitions;
    agg.clearance_min = std::min(agg.clearance_min, report.clearance_min);
    agg.path_length += report.path_length / spec.repetitions;
    agg.reports.push_back(std::move(report));
  }
  return agg;
}

MetricsRow rowFromAggregate(const Aggregate& agg, const PlannerConfig& config,
                            ProviderKind kind) {
  MetricsRow row;
  row.iter_ini = config.iter_ini;
  row.iter_main = config.iter_main;
  row.n_esdf = config.n_esdf;
  row.sigma = config.sigma;
  row.provider = providerKindName(kind);
  row.time_mean_ms = agg.time_mean_ms;
  row.time_min_ms = agg.time_min_ms;
  row.time_max_ms = agg.time_max_ms;
  row.clearance_mean = agg.clearance_mean;
  row.clearance_min = agg.clearance_min;
  row.path_length = agg.path_length;
  return row;
}

std::string csvEscape(const std::string& field) {
  std::string escaped = field;
  for (char& c : escaped) {
    if (c == ',' || c == '\n') {
      c = ';';
    }
  }
  return escaped;
}

}  // namespace

const char* providerKindName(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::kAnalytic:
      return "analytic";
    case ProviderKind::kGrid:
      return "grid";
    case ProviderKind::kSiren:
      return "siren";
  }
  return "unknown";
}

std::pair<double, double> trajectoryClearance(const QuinticTrajectory& trajectory,
                                              const SdfProvider& provider,
                                              int subdivisions) {
  const auto points = trajectory.sample(subdivisions);
  const auto provider_bounds = provider.bounds();
  double sum = 0.0;
  double minimum = std::numeric_limits<double>::infinity();
  for (Vec3 p : points) {
    if (provider_bounds && !provider_bounds->contains(p)) {
      p = provider_bounds->clamp(p);
    }
    const double distance = provider.eval(p).distance;
    sum += distance;
    minimum = std::min(minimum, distance);
  }
  return {sum / static_cast<double>(points.size()), minimum};
}

std::vector<MetricsRow> runExperiment(const ExperimentSpec& spec) {
  if (spec.repetitions < 1) {
    throw std::invalid_argument("repetitions must be >= 1");
  }
  if (spec.iter_ini_values.empty() || spec.iter_main_values.empty() ||
      spec.n_esdf_values.empty() || spec.sigma_values.empty()) {
    throw std::invalid_argument("sweep axes must be nonempty");
  }

  std::shared_ptr<const SdfProvider> provider;
  std::string provider_error;
  try {
    provider = buildProvider(spec, spec.provider);
  } catch (const std::exception& e) {
    provider_error = e.what();
  }

  std::vector<MetricsRow> rows;
  for (int iter_ini : spec.iter_ini_values) {
    for (int iter_main : spec.iter_main_values) {
      for (int n_esdf : spec.n_esdf_values) {
        for (double sigma : spec.sigma_values) {
          PlannerConfig config = spec.config;
          config.iter_ini = iter_ini;
          config.iter_main = iter_main;
          config.n_esdf = n_esdf;
          config.sigma = sigma;
          MetricsRow row;
          row.iter_ini = iter_ini;
          row.iter_main = iter_main;
          row.n_esdf = n_esdf;
          row.sigma = sigma;
          row.provider = providerKindName(spec.provider);
          if (!provider_error.empty()) {
            row.error = provider_error;
          } else {
            try {
              row = rowFromAggregate(runRepetitions(spec, provider, config), config,
                                     spec.provider);
            } catch (const std::exception& e) {
              row.error = e.what();
            }
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::vector<MetricsRow> compareProviders(const ExperimentSpec& spec) {
  if (spec.repetitions < 1) {
    throw std::invalid_argument("repetitions must be >= 1");
  }
  const auto exact = std::make_shared<AnalyticScene>(spec.scene);

  std::vector<MetricsRow> rows;
  for (ProviderKind kind :
       {ProviderKind::kAnalytic, ProviderKind::kGrid, ProviderKind::kSiren}) {
    MetricsRow row;
    PlannerConfig config = spec.config;
    row.iter_ini = config.iter_ini;
    row.iter_main = config.iter_main;
    row.n_esdf = config.n_esdf;
    row.sigma = config.sigma;
    row.provider = providerKindName(kind);
    if (kind == ProviderKind::kSiren &&
        (spec.weights_path.empty() ||
         !std::filesystem::exists(spec.weights_path))) {
      row.error = "skipped: no weight file";
      rows.push_back(std::move(row));
      continue;
    }
    try {
      const auto provider = buildProvider(spec, kind);
      const Aggregate agg = runRepetitions(spec, provider, config);
      row = rowFromAggregate(agg, config, kind);
      double mean_sum = 0.0;
      double min_all = std::numeric_limits<double>::infinity();
      for (const PlanReport& report : agg.reports) {
        const auto [mean, minimum] = trajectoryClearance(report.trajectory, *exact);
        mean_sum += mean / agg.reports.size();
        min_all = std::min(min_all, minimum);
      }
      row.analytic_clearance_mean = mean_sum;
      row.analytic_clearance_min = min_all;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string emitTable(std::span<const MetricsRow> rows, TableFormat format,
                      bool mask_times) {
  std::ostringstream out;
  out.precision(17);

  auto time_field = [mask_times](double value) {
    if (mask_times) {
      return std::string("-");
    }
    std::ostringstream field;
    field << std::fixed << std::setprecision(3) << value;
    return field.str();
  };

  if (format == TableFormat::kCsv) {
    out << kCsvHeader << "\n";
    for (const MetricsRow& row : rows) {
      out << row.iter_ini << "," << row.iter_main << "," << row.n_esdf << ","
          << time_field(row.time_mean_ms) << "," << time_field(row.time_min_ms) << ","
          << time_field(row.time_max_ms) << "," << row.clearance_mean << ","
          << row.clearance_min << "," << row.path_length << "," << row.sigma << ","
          << row.provider << "," << row.analytic_clearance_mean << ","
          << row.analytic_clearance_min << "," << csvEscape(row.error) << "\n";
    }
    return out.str();
  }

  const std::vector<std::string> headers = {
      "iter_ini", "iter_main", "n_esdf",   "t_mean_ms", "t_min_ms",
      "t_max_ms", "clr_mean",  "clr_min",  "length_m",  "sigma",
      "provider", "exact_clr_mean", "exact_clr_min", "error"};
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const MetricsRow& row : rows) {
    auto num = [](double value) {
      std::ostringstream field;
      field << std::fixed << std::setprecision(3) << value;
      return field.str();
    };
    cells.push_back({std::to_string(row.iter_ini), std::to_string(row.iter_main),
                     std::to_string(row.n_esdf), time_field(row.time_mean_ms),
                     time_field(row.time_min_ms), time_field(row.time_max_ms),
                     num(row.clearance_mean), num(row.clearance_min),
                     num(row.path_length), num(row.sigma), row.provider,
                     num(row.analytic_clearance_mean), num(row.analytic_clearance_min),
                     row.error});
  }
  std::vector<std::size_t> widths(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    widths[c] = headers[c].size();
    for (const auto& row : cells) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(widths[c]) + 2) << row[c];
    }
    out << "\n";
  };
  emit_row(headers);
  for (const auto& row : cells) {
    emit_row(row);
  }
  return out.str();
}

std::vector<MetricsRow> parseCsvTable(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw FormatError("unexpected csv header");
  }
  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream fs(line);
    while (std::getline(fs, field, ',')) {
      fields.push_back(field);
    }
    while (fields.size() < 14) {
      fields.emplace_back();
    }
    auto to_double = [](const std::string& s) {
      return s.empty() || s == "-" ? 0.0 : std::stod(s);
    };
    MetricsRow row;
    row.iter_ini = std::stoi(fields[0]);
    row.iter_main = std::stoi(fields[1]);
    row.n_esdf = std::stoi(fields[2]);
    row.time_mean_ms = to_double(fields[3]);
    row.time_min_ms = to_double(fields[4]);
    row.time_max_ms = to_double(fields[5]);
    row.clearance_mean = to_double(fields[6]);
    row.clearance_min = to_double(fields[7]);
    row.path_length = to_double(fields[8]);
    row.sigma = to_double(fields[9]);
    row.provider = fields[10];
    row.analytic_clearance_mean = to_double(fields[11]);
    row.analytic_clearance_min = to_double(fields[12]);
    row.error = fields[13];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace contraj
