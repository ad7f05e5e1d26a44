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

#include <array>
#include <memory>

#include "contraj/sdf/provider.hpp"
#include "contraj/solver/levenberg_marquardt.hpp"
#include "contraj/trajectory.hpp"

namespace contraj {

// Nonlinear coefficients penalized by the smoothness terms; the linear
// slots 4, 9, 14 and the constants are never touched.
inline constexpr std::array<int, 12> kSmoothnessIndices{0, 1, 2, 3,  5,  6,
                                                        7, 8, 10, 11, 12, 13};

struct PlannerConfig {
  // Stage weights. The absolute-value smoothness penalties are realized as
  // per-coefficient residuals sqrt(w) * c_k, so the assembled cost carries
  // w * sum(c_k^2); the weight ratios keep their meaning.
  double w01 = 10.0;
  double w02 = 1.0;
  double w11 = 1.0;
  double w12 = 3.0;
  double w13 = 0.1;
  double w14 = 10000.0;

  double alpha = 4.0;   // barrier sharpness
  double sigma = 1.5;   // barrier threshold distance (m)
  int n_len = 5;        // length-cost subdivisions
  int n_esdf = 5;       // field samples incl. endpoints; interior ones carry cost
  int iter_ini = 50;    // 0 skips the first stage and seeds the main one directly
  int iter_main = 30;
  double goal_tolerance = 1e-2;  // m
  double duration_s = 2.0;       // real time mapped onto tau in [0, 1]

  Vec3 window_half_extents{3.0, 3.0, 1.6};  // m
  double safe_threshold = -1.0;             // goal-selection threshold; < 0 uses sigma

  // Solver tolerances, exposed so trend experiments are insensitive to them.
  double gradient_tol = 1e-10;
  double step_tol = 1e-12;
  double cost_tol = 1e-8;

  // Per-iteration solver trace sink for verbose runs; not owned.
  std::ostream* solver_trace = nullptr;

  double safeThreshold() const { return safe_threshold < 0.0 ? sigma : safe_threshold; }
  SolveOptions solveOptions(int max_iterations) const;
  void validate() const;
};

struct StageResult {
  StateVector state = StateVector::Zero();
  SolveReport report;
  bool degenerate_waypoints = false;
};

struct MainResult {
  StateVector state = StateVector::Zero();
  SolveReport report;
  std::vector<double> final_clearances;  // interior-sample distances at the result
  bool clamped_queries = false;          // some query left the provider bounds
  int batch_queries = 0;                 // field refreshes during the solve
};

struct CostBreakdown {
  double f11 = 0.0;
  double f12 = 0.0;
  double f13 = 0.0;
  double f14 = 0.0;
  double total = 0.0;
};

// Residual-block builders, shared by both stages and by the jacobian tests.
// Positions chain through trajectories with constant terms d and the
// monomial basis; all blocks are exact.
ResidualBlock makeWaypointBlock(const Vec3& waypoint_local, double tau, double weight,
                                const Vec3& d);
ResidualBlock makeSmoothnessBlock(double weight);
ResidualBlock makeLengthBlock(int n_len, double weight, const Vec3& d);
ResidualBlock makeGoalBlock(const Vec3& goal_local, double weight, const Vec3& d);

// Obstacle barrier over the interior trajectory samples tau_j = j / n_esdf,
// j = 1 .. n_esdf - 1; the fixed endpoints carry no cost. Each residual is
// sqrt(w12 / (n_esdf - 1)) * exp(-alpha * (o_j - sigma) / 2), whose square
// is one barrier summand. Samples are refreshed in one batch whenever the
// solver announces a new state; within one state every tau_j is queried
// exactly once. Queries outside the provider bounds are clamped to them and
// flagged.
class BarrierCost {
 public:
  BarrierCost(const SdfProvider& provider, const PlannerConfig& config, const Vec3& d);

  ResidualBlock makeBlock();
  PreEvalHook preEvalHook();

  // Interior-sample distances for the given state (refreshes if needed).
  const std::vector<double>& clearances(const StateVector& state);

  bool clampedQueries() const;
  int batchQueries() const;

 private:
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// First stage: fit to the in-window waypoints (times from chordLengthTimes)
// plus coefficient shrinkage, starting from the straight line. Degenerate
// waypoint lists fall through to the straight-line state with a flag.
StageResult initialOptimize(std::span<const Vec3> waypoints_local,
                            const Vec3& start_local, const Vec3& goal_local,
                            const PlannerConfig& config);

// Second stage: length + barrier + shrinkage + goal anchoring, seeded with
// the first stage output (or any other state).
MainResult mainOptimize(const StateVector& init_state, const SdfProvider& provider,
                        const Vec3& goal_local, const PlannerConfig& config,
                        const Vec3& start_local = Vec3::Zero());

// Direct evaluation of the main-stage cost components; matches the solver's
// assembled objective term for term.
CostBreakdown totalCost(const StateVector& state, const SdfProvider& provider,
                        const Vec3& goal_local, const PlannerConfig& config,
                        const Vec3& start_local = Vec3::Zero());

}  // namespace contraj
