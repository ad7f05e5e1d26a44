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

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "contraj/trajectory.hpp"

namespace contraj {

// One term of a sum-of-squares problem over the 15-entry state. residual
// and jacobian must be deterministic for fixed external state; the solver
// announces every new evaluation point through the pre-evaluation hook
// before touching either, so stateful costs can refresh caches.
struct ResidualBlock {
  std::string name;
  int residual_dim = 0;
  std::function<Eigen::VectorXd(const StateVector&)> residual;
  std::function<Eigen::MatrixXd(const StateVector&)> jacobian;  // dim x 15
};

enum class Termination { kConverged, kMaxIterations, kNumericalFailure };

const char* terminationName(Termination t);

struct IterationRecord {
  int iteration = 0;
  double cost = 0.0;
  double lambda = 0.0;
  double step_norm = 0.0;
  bool accepted = false;
};

struct SolveOptions {
  int max_iterations = 50;
  double gradient_tol = 1e-10;
  double step_tol = 1e-12;
  double cost_tol = 1e-8;
  double initial_lambda = 1e-4;
  bool record_trace = false;
  std::ostream* trace_stream = nullptr;  // per-iteration text trace when set
};

struct SolveReport {
  StateVector final_state = StateVector::Zero();
  double initial_cost = 0.0;
  double final_cost = 0.0;
  int iterations_used = 0;
  Termination termination = Termination::kConverged;
  double wall_time_s = 0.0;
  std::vector<IterationRecord> trace;
};

// Called with the candidate state before every residual/jacobian evaluation
// at a state the solver has not evaluated yet; never twice in a row for the
// same state.
using PreEvalHook = std::function<void(const StateVector&)>;

// Damped least squares over the summed blocks. Additive damping lambda * I
// on the normal equations, scaled by 10 after a rejected step and by 0.1
// after an accepted one; accepted steps never increase the total cost.
// A non-finite residual or jacobian terminates with kNumericalFailure and
// the last good state.
SolveReport solve(std::span<const ResidualBlock> blocks, const StateVector& x0,
                  const SolveOptions& options = {}, const PreEvalHook& hook = {});

// Max relative entrywise deviation between the block jacobian and a central
// finite difference of its residual, with a 1e-12 floor on the denominator.
double checkJacobian(const ResidualBlock& block, const StateVector& state, double step);

}  // namespace contraj
