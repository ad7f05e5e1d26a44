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

#include "contraj/solver/levenberg_marquardt.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace contraj {

namespace {

using Matrix15 = Eigen::Matrix<double, kStateDim, kStateDim>;

constexpr double kMaxLambda = 1e32;

struct Evaluation {
  double cost = 0.0;
  Matrix15 hessian = Matrix15::Zero();         // sum of J^T J
  StateVector gradient = StateVector::Zero();  // sum of J^T r
};

// Residuals only; used when probing a candidate step.
bool evalCost(std::span<const ResidualBlock> blocks, const StateVector& x, double* cost) {
  double total = 0.0;
  for (const ResidualBlock& block : blocks) {
    const Eigen::VectorXd r = block.residual(x);
    if (!r.allFinite()) {
      return false;
    }
    total += r.squaredNorm();
  }
  *cost = total;
  return std::isfinite(total);
}

// Residuals and jacobians; used at accepted states.
bool evalFull(std::span<const ResidualBlock> blocks, const StateVector& x,
              Evaluation* eval) {
  eval->cost = 0.0;
  eval->hessian.setZero();
  eval->gradient.setZero();
  for (const ResidualBlock& block : blocks) {
    const Eigen::VectorXd r = block.residual(x);
    const Eigen::MatrixXd j = block.jacobian(x);
    if (!r.allFinite() || !j.allFinite()) {
      return false;
    }
    if (j.rows() != r.size() || j.cols() != kStateDim) {
      throw std::invalid_argument("block '" + block.name +
                                  "' jacobian shape mismatch");
    }
    eval->cost += r.squaredNorm();
    eval->hessian.noalias() += j.transpose() * j;
    eval->gradient.noalias() += j.transpose() * r;
  }
  return std::isfinite(eval->cost);
}

}  // namespace

const char* terminationName(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kMaxIterations:
      return "max_iterations";
    case Termination::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

SolveReport solve(std::span<const ResidualBlock> blocks, const StateVector& x0,
                  const SolveOptions& options, const PreEvalHook& hook) {
  if (options.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be >= 1");
  }
  if (!x0.allFinite()) {
    throw std::invalid_argument("initial state must be finite");
  }

  const auto t_start = std::chrono::steady_clock::now();
  auto finish = [&](SolveReport report) {
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return report;
  };

  SolveReport report;
  StateVector x = x0;
  if (hook) {
    hook(x);
  }
  Evaluation eval;
  if (!evalFull(blocks, x, &eval)) {
    report.final_state = x;
    report.termination = Termination::kNumericalFailure;
    return finish(report);
  }
  report.initial_cost = eval.cost;
  report.final_cost = eval.cost;
  report.final_state = x;

  double lambda = options.initial_lambda;
  for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
    report.iterations_used = iteration;

    // Damped normal equations; bump lambda until the factorization yields
    // a usable step.
    StateVector step = StateVector::Zero();
    bool have_step = false;
    while (lambda <= kMaxLambda) {
      Matrix15 damped = eval.hessian;
      damped.diagonal().array() += lambda;
      const Eigen::LDLT<Matrix15> ldlt(damped);
      if (ldlt.info() == Eigen::Success) {
        step = ldlt.solve(-eval.gradient);
        if (step.allFinite()) {
          have_step = true;
          break;
        }
      }
      lambda *= 10.0;
    }
    if (!have_step) {
      report.termination = Termination::kNumericalFailure;
      return finish(report);
    }

    const StateVector candidate = x + step;
    if (hook) {
      hook(candidate);
    }
    double candidate_cost = 0.0;
    if (!evalCost(blocks, candidate, &candidate_cost)) {
      report.termination = Termination::kNumericalFailure;
      return finish(report);
    }

    const bool accepted = candidate_cost <= eval.cost;
    const double step_norm = step.norm();
    if (options.record_trace || options.trace_stream != nullptr) {
      const IterationRecord record{iteration, accepted ? candidate_cost : eval.cost,
                                   lambda, step_norm, accepted};
      if (options.record_trace) {
        report.trace.push_back(record);
      }
      if (options.trace_stream != nullptr) {
        *options.trace_stream << "iter " << record.iteration << " cost " << record.cost
                              << " lambda " << record.lambda << " step "
                              << record.step_norm
                              << (record.accepted ? " accepted" : " rejected") << "\n";
      }
    }

    if (accepted) {
      const double previous_cost = eval.cost;
      x = candidate;
      // Jacobians at the state whose residuals were just computed; the hook
      // already announced it, so no second call for the same state.
      if (!evalFull(blocks, x, &eval)) {
        report.termination = Termination::kNumericalFailure;
        return finish(report);
      }
      report.final_state = x;
      report.final_cost = eval.cost;
      lambda = std::max(lambda * 0.1, 1e-12);

      if (eval.gradient.lpNorm<Eigen::Infinity>() < options.gradient_tol) {
        report.termination = Termination::kConverged;
        return finish(report);
      }
      if (step_norm < options.step_tol * (x.norm() + options.step_tol)) {
        report.termination = Termination::kConverged;
        return finish(report);
      }
      if (previous_cost - candidate_cost <
          options.cost_tol * std::max(previous_cost, 1e-300)) {
        report.termination = Termination::kConverged;
        return finish(report);
      }
    } else {
      lambda *= 10.0;
      if (lambda > kMaxLambda) {
        report.termination = Termination::kConverged;  // no further progress possible
        return finish(report);
      }
    }
  }
  report.termination = Termination::kMaxIterations;
  return finish(report);
}

double checkJacobian(const ResidualBlock& block, const StateVector& state,
                     double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  const Eigen::MatrixXd analytic = block.jacobian(state);
  double max_rel_error = 0.0;
  for (int k = 0; k < kStateDim; ++k) {
    StateVector forward = state;
    StateVector backward = state;
    forward[k] += step;
    backward[k] -= step;
    const Eigen::VectorXd fd =
        (block.residual(forward) - block.residual(backward)) / (2.0 * step);
    if (!fd.allFinite() || !analytic.col(k).allFinite()) {
      return std::numeric_limits<double>::infinity();
    }
    for (Eigen::Index row = 0; row < fd.size(); ++row) {
      const double a = analytic(row, k);
      const double b = fd(row);
      const double denom = std::max({std::abs(a), std::abs(b), 1e-12});
      max_rel_error = std::max(max_rel_error, std::abs(a - b) / denom);
    }
  }
  return max_rel_error;
}

}  // namespace contraj
