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

#include "contraj/cost_pipeline.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "contraj/errors.hpp"

namespace contraj {

namespace {

// Keeps exp(e)^2 below the double range for pathological penetrations.
constexpr double kMaxBarrierExponent = 350.0;

Vec3 evalPosition(const StateVector& state, const Vec3& d, double tau) {
  const auto basis = positionBasis(tau);
  Vec3 p;
  for (int axis = 0; axis < 3; ++axis) {
    p[axis] = state.segment<kCoeffsPerAxis>(axis * kCoeffsPerAxis).dot(basis) + d[axis];
  }
  return p;
}

// Rows of d(position)/d(state) for one sample: each axis row holds the
// monomial basis in its own coefficient slots.
void fillPositionJacobian(Eigen::MatrixXd& jac, int first_row, double tau,
                          double scale = 1.0) {
  const auto basis = positionBasis(tau);
  for (int axis = 0; axis < 3; ++axis) {
    for (int k = 0; k < kCoeffsPerAxis; ++k) {
      jac(first_row + axis, axis * kCoeffsPerAxis + k) = scale * basis[k];
    }
  }
}

}  // namespace

SolveOptions PlannerConfig::solveOptions(int max_iterations) const {
  SolveOptions options;
  options.max_iterations = max_iterations;
  options.gradient_tol = gradient_tol;
  options.step_tol = step_tol;
  options.cost_tol = cost_tol;
  options.trace_stream = solver_trace;
  return options;
}

void PlannerConfig::validate() const {
  if (w01 < 0 || w02 < 0 || w11 < 0 || w12 < 0 || w13 < 0 || w14 < 0) {
    throw std::invalid_argument("weights must be nonnegative");
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("alpha must be positive");
  }
  if (sigma < 0.0) {
    throw std::invalid_argument("sigma must be nonnegative");
  }
  if (n_len < 1) {
    throw std::invalid_argument("n_len must be >= 1");
  }
  if (n_esdf < 2) {
    throw std::invalid_argument("n_esdf must be >= 2 so interior samples exist");
  }
  if (iter_ini < 0 || iter_main < 1) {
    throw std::invalid_argument("iteration caps out of range");
  }
  if (!(goal_tolerance > 0.0) || !(duration_s > 0.0)) {
    throw std::invalid_argument("goal_tolerance and duration_s must be positive");
  }
  if (!(window_half_extents.array() > 0.0).all()) {
    throw std::invalid_argument("window half extents must be positive");
  }
}

ResidualBlock makeWaypointBlock(const Vec3& waypoint_local, double tau, double weight,
                                const Vec3& d) {
  const double scale = std::sqrt(weight);
  ResidualBlock block;
  block.name = "waypoint";
  block.residual_dim = 3;
  block.residual = [waypoint_local, tau, scale, d](const StateVector& c) {
    return Eigen::VectorXd(scale * (evalPosition(c, d, tau) - waypoint_local));
  };
  block.jacobian = [tau, scale](const StateVector&) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3, kStateDim);
    fillPositionJacobian(jac, 0, tau, scale);
    return jac;
  };
  return block;
}

ResidualBlock makeSmoothnessBlock(double weight) {
  const double scale = std::sqrt(weight);
  ResidualBlock block;
  block.name = "smoothness";
  block.residual_dim = static_cast<int>(kSmoothnessIndices.size());
  block.residual = [scale](const StateVector& c) {
    Eigen::VectorXd r(kSmoothnessIndices.size());
    for (std::size_t i = 0; i < kSmoothnessIndices.size(); ++i) {
      r[static_cast<Eigen::Index>(i)] = scale * c[kSmoothnessIndices[i]];
    }
    return r;
  };
  block.jacobian = [scale](const StateVector&) {
    Eigen::MatrixXd jac =
        Eigen::MatrixXd::Zero(kSmoothnessIndices.size(), kStateDim);
    for (std::size_t i = 0; i < kSmoothnessIndices.size(); ++i) {
      jac(static_cast<Eigen::Index>(i), kSmoothnessIndices[i]) = scale;
    }
    return jac;
  };
  return block;
}

ResidualBlock makeLengthBlock(int n_len, double weight, const Vec3& d) {
  const double scale = std::sqrt(weight);
  ResidualBlock block;
  block.name = "length";
  block.residual_dim = 3 * n_len;
  block.residual = [n_len, scale, d](const StateVector& c) {
    Eigen::VectorXd r(3 * n_len);
    Vec3 previous = evalPosition(c, d, 0.0);
    for (int j = 1; j <= n_len; ++j) {
      const Vec3 current = evalPosition(c, d, static_cast<double>(j) / n_len);
      r.segment<3>(3 * (j - 1)) = scale * (current - previous);
      previous = current;
    }
    return r;
  };
  block.jacobian = [n_len, scale](const StateVector&) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3 * n_len, kStateDim);
    for (int j = 1; j <= n_len; ++j) {
      const auto basis_hi = positionBasis(static_cast<double>(j) / n_len);
      const auto basis_lo = positionBasis(static_cast<double>(j - 1) / n_len);
      for (int axis = 0; axis < 3; ++axis) {
        for (int k = 0; k < kCoeffsPerAxis; ++k) {
          jac(3 * (j - 1) + axis, axis * kCoeffsPerAxis + k) =
              scale * (basis_hi[k] - basis_lo[k]);
        }
      }
    }
    return jac;
  };
  return block;
}

ResidualBlock makeGoalBlock(const Vec3& goal_local, double weight, const Vec3& d) {
  ResidualBlock block = makeWaypointBlock(goal_local, 1.0, weight, d);
  block.name = "goal";
  return block;
}

struct BarrierCost::Cache {
  const SdfProvider& provider;
  double alpha;
  double sigma;
  double residual_scale;
  int n_esdf;
  Vec3 d;

  bool valid = false;
  StateVector state = StateVector::Zero();
  std::vector<Vec3> positions;
  std::vector<SdfSample> samples;
  std::vector<double> distances;
  bool clamped_any = false;
  int batch_queries = 0;

  Cache(const SdfProvider& provider_in, const PlannerConfig& config, const Vec3& d_in)
      : provider(provider_in),
        alpha(config.alpha),
        sigma(config.sigma),
        residual_scale(std::sqrt(config.w12 / (config.n_esdf - 1))),
        n_esdf(config.n_esdf),
        d(d_in) {}

  void refresh(const StateVector& c) {
    const int interior = n_esdf - 1;
    positions.resize(interior);
    const auto provider_bounds = provider.bounds();
    for (int j = 1; j < n_esdf; ++j) {
      Vec3 p = evalPosition(c, d, static_cast<double>(j) / n_esdf);
      if (provider_bounds && !provider_bounds->contains(p)) {
        p = provider_bounds->clamp(p);
        clamped_any = true;
      }
      positions[j - 1] = p;
    }
    samples = provider.evalBatch(positions);
    ++batch_queries;
    distances.resize(interior);
    for (int j = 0; j < interior; ++j) {
      distances[j] = samples[j].distance;
    }
    state = c;
    valid = true;
  }

  void ensure(const StateVector& c) {
    if (!valid || state != c) {
      refresh(c);
    }
  }

  double residualValue(int j) const {
    const double exponent =
        std::min(-0.5 * alpha * (samples[j].distance - sigma), kMaxBarrierExponent);
    return residual_scale * std::exp(exponent);
  }
};

BarrierCost::BarrierCost(const SdfProvider& provider, const PlannerConfig& config,
                         const Vec3& d)
    : cache_(std::make_shared<Cache>(provider, config, d)) {}

ResidualBlock BarrierCost::makeBlock() {
  auto cache = cache_;
  ResidualBlock block;
  block.name = "barrier";
  block.residual_dim = cache->n_esdf - 1;
  block.residual = [cache](const StateVector& c) {
    cache->ensure(c);
    Eigen::VectorXd r(cache->n_esdf - 1);
    for (int j = 0; j < cache->n_esdf - 1; ++j) {
      r[j] = cache->residualValue(j);
    }
    return r;
  };
  block.jacobian = [cache](const StateVector& c) {
    cache->ensure(c);
    const int interior = cache->n_esdf - 1;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(interior, kStateDim);
    for (int j = 0; j < interior; ++j) {
      // d(residual)/dc = residual * (-alpha/2) * grad(o) . d(position)/dc
      const double factor = cache->residualValue(j) * (-0.5 * cache->alpha);
      const double tau = static_cast<double>(j + 1) / cache->n_esdf;
      const auto basis = positionBasis(tau);
      const Vec3& gradient = cache->samples[j].gradient;
      for (int axis = 0; axis < 3; ++axis) {
        for (int k = 0; k < kCoeffsPerAxis; ++k) {
          jac(j, axis * kCoeffsPerAxis + k) = factor * gradient[axis] * basis[k];
        }
      }
    }
    return jac;
  };
  return block;
}

PreEvalHook BarrierCost::preEvalHook() {
  auto cache = cache_;
  return [cache](const StateVector& c) { cache->ensure(c); };
}

const std::vector<double>& BarrierCost::clearances(const StateVector& state) {
  cache_->ensure(state);
  return cache_->distances;
}

bool BarrierCost::clampedQueries() const { return cache_->clamped_any; }

int BarrierCost::batchQueries() const { return cache_->batch_queries; }

StageResult initialOptimize(std::span<const Vec3> waypoints_local,
                            const Vec3& start_local, const Vec3& goal_local,
                            const PlannerConfig& config) {
  config.validate();
  StageResult result;
  result.state = straightLineState(start_local, goal_local);
  if (config.iter_ini == 0) {
    return result;
  }

  std::vector<double> times;
  try {
    times = chordLengthTimes(waypoints_local);
  } catch (const DegenerateInputError&) {
    result.degenerate_waypoints = true;
    return result;
  }
  if ((waypoints_local.front() - start_local).norm() > 1e-9 ||
      (waypoints_local.back() - goal_local).norm() > 1e-9) {
    throw std::invalid_argument(
        "waypoint list must start at start_local and end at goal_local");
  }

  std::vector<ResidualBlock> blocks;
  blocks.reserve(waypoints_local.size());
  // The first waypoint sits at tau = 0 where the trajectory is pinned to d,
  // so it carries no residual.
  for (std::size_t i = 1; i < waypoints_local.size(); ++i) {
    blocks.push_back(
        makeWaypointBlock(waypoints_local[i], times[i], config.w01, start_local));
  }
  blocks.push_back(makeSmoothnessBlock(config.w02));

  const SolveReport report =
      solve(blocks, result.state, config.solveOptions(config.iter_ini));
  result.state = report.final_state;
  result.report = report;
  return result;
}

MainResult mainOptimize(const StateVector& init_state, const SdfProvider& provider,
                        const Vec3& goal_local, const PlannerConfig& config,
                        const Vec3& start_local) {
  config.validate();
  BarrierCost barrier(provider, config, start_local);

  std::vector<ResidualBlock> blocks;
  blocks.push_back(makeLengthBlock(config.n_len, config.w11, start_local));
  blocks.push_back(barrier.makeBlock());
  blocks.push_back(makeSmoothnessBlock(config.w13));
  blocks.push_back(makeGoalBlock(goal_local, config.w14, start_local));

  const SolveReport report = solve(blocks, init_state,
                                   config.solveOptions(config.iter_main),
                                   barrier.preEvalHook());

  MainResult result;
  result.state = report.final_state;
  result.report = report;
  result.final_clearances = barrier.clearances(report.final_state);
  result.clamped_queries = barrier.clampedQueries();
  result.batch_queries = barrier.batchQueries();
  return result;
}

CostBreakdown totalCost(const StateVector& state, const SdfProvider& provider,
                        const Vec3& goal_local, const PlannerConfig& config,
                        const Vec3& start_local) {
  config.validate();
  CostBreakdown costs;

  Vec3 previous = evalPosition(state, start_local, 0.0);
  for (int j = 1; j <= config.n_len; ++j) {
    const Vec3 current =
        evalPosition(state, start_local, static_cast<double>(j) / config.n_len);
    costs.f11 += config.w11 * (current - previous).squaredNorm();
    previous = current;
  }

  const auto provider_bounds = provider.bounds();
  std::vector<Vec3> interior(config.n_esdf - 1);
  for (int j = 1; j < config.n_esdf; ++j) {
    Vec3 p = evalPosition(state, start_local, static_cast<double>(j) / config.n_esdf);
    if (provider_bounds && !provider_bounds->contains(p)) {
      p = provider_bounds->clamp(p);
    }
    interior[j - 1] = p;
  }
  const auto samples = provider.evalBatch(interior);
  for (const SdfSample& sample : samples) {
    const double exponent = std::min(-config.alpha * (sample.distance - config.sigma),
                                     2.0 * kMaxBarrierExponent);
    costs.f12 += config.w12 / (config.n_esdf - 1) * std::exp(exponent);
  }

  for (int k : kSmoothnessIndices) {
    costs.f13 += config.w13 * state[k] * state[k];
  }

  costs.f14 =
      config.w14 * (evalPosition(state, start_local, 1.0) - goal_local).squaredNorm();

  costs.total = costs.f11 + costs.f12 + costs.f13 + costs.f14;
  return costs;
}

}  // namespace contraj
