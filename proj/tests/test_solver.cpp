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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace contraj {
namespace {

ResidualBlock identityBlock() {
  ResidualBlock block;
  block.name = "identity";
  block.residual_dim = kStateDim;
  block.residual = [](const StateVector& c) { return Eigen::VectorXd(c); };
  block.jacobian = [](const StateVector&) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Identity(kStateDim, kStateDim));
  };
  return block;
}

// Rosenbrock in the first two state entries; the rest are pinned to zero
// through extra residuals.
std::vector<ResidualBlock> rosenbrockBlocks() {
  ResidualBlock rosenbrock;
  rosenbrock.name = "rosenbrock";
  rosenbrock.residual_dim = 2;
  rosenbrock.residual = [](const StateVector& c) {
    Eigen::VectorXd r(2);
    r << 10.0 * (c[1] - c[0] * c[0]), 1.0 - c[0];
    return r;
  };
  rosenbrock.jacobian = [](const StateVector& c) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, kStateDim);
    j(0, 0) = -20.0 * c[0];
    j(0, 1) = 10.0;
    j(1, 0) = -1.0;
    return j;
  };

  ResidualBlock pin;
  pin.name = "pin";
  pin.residual_dim = kStateDim - 2;
  pin.residual = [](const StateVector& c) {
    return Eigen::VectorXd(c.tail(kStateDim - 2));
  };
  pin.jacobian = [](const StateVector&) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(kStateDim - 2, kStateDim);
    j.rightCols(kStateDim - 2).setIdentity();
    return j;
  };
  return {rosenbrock, pin};
}

StateVector randomState(std::mt19937_64& rng, double bound = 5.0) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  StateVector state;
  for (int k = 0; k < kStateDim; ++k) {
    state[k] = dist(rng);
  }
  return state;
}

TEST_CASE("identity residual drives the state to zero") {
  std::mt19937_64 rng(3);
  const std::vector<ResidualBlock> blocks{identityBlock()};
  const SolveReport report = solve(blocks, randomState(rng), {.max_iterations = 20});
  CHECK(report.final_cost < 1e-12);
  CHECK(report.final_state.norm() < 1e-6);
  CHECK(report.termination == Termination::kConverged);
}

TEST_CASE("linear problems reach the normal-equations solution in 3 iterations") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    // Random well-posed consistent linear least squares: r = A (c - c*).
    Eigen::MatrixXd a(kStateDim + 5, kStateDim);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        a(i, j) = dist(rng);
      }
    }
    a.diagonal().array() += 2.0;  // keep it well conditioned
    const StateVector expected = randomState(rng, 2.0);
    const Eigen::VectorXd b = a * expected;

    ResidualBlock block;
    block.name = "linear";
    block.residual_dim = static_cast<int>(a.rows());
    block.residual = [a, b](const StateVector& c) { return Eigen::VectorXd(a * c - b); };
    block.jacobian = [a](const StateVector&) { return Eigen::MatrixXd(a); };
    const std::vector<ResidualBlock> blocks{block};

    // All stopping tolerances off so the full three iterations run.
    const SolveReport report = solve(
        blocks, randomState(rng),
        {.max_iterations = 3, .gradient_tol = 0.0, .step_tol = 0.0, .cost_tol = 0.0});
    CHECK((report.final_state - expected).norm() < 1e-10);
  }
}

TEST_CASE("inconsistent linear systems converge to the cost plateau") {
  // With a nonzero optimal residual the cost flattens into floating-point
  // noise around 1e-8 of state accuracy; the solve stays monotone there.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd a(kStateDim + 5, kStateDim);
  Eigen::VectorXd b(kStateDim + 5);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    b(i) = dist(rng);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      a(i, j) = dist(rng);
    }
  }
  a.diagonal().array() += 2.0;

  ResidualBlock block;
  block.name = "linear";
  block.residual_dim = static_cast<int>(a.rows());
  block.residual = [a, b](const StateVector& c) { return Eigen::VectorXd(a * c - b); };
  block.jacobian = [a](const StateVector&) { return Eigen::MatrixXd(a); };
  const std::vector<ResidualBlock> blocks{block};

  const StateVector expected = (a.transpose() * a).ldlt().solve(a.transpose() * b);
  const SolveReport report = solve(blocks, randomState(rng), {.max_iterations = 10});
  CHECK((report.final_state - expected).norm() < 1e-8);
  CHECK(report.final_cost <= report.initial_cost);
}

TEST_CASE("embedded Rosenbrock converges to its known minimizer") {
  StateVector x0 = StateVector::Zero();
  x0[0] = -1.2;
  x0[1] = 1.0;
  SolveOptions options;
  options.max_iterations = 200;
  options.record_trace = true;
  const SolveReport report = solve(rosenbrockBlocks(), x0, options);
  CHECK(std::abs(report.final_state[0] - 1.0) < 1e-6);
  CHECK(std::abs(report.final_state[1] - 1.0) < 1e-6);

  // Accepted costs never increase.
  double previous = report.initial_cost;
  for (const IterationRecord& record : report.trace) {
    if (record.accepted) {
      CHECK(record.cost <= previous + 1e-15);
      previous = record.cost;
    }
  }
}

TEST_CASE("iteration cap reports max_iterations with monotone cost") {
  StateVector x0 = StateVector::Zero();
  x0[0] = -1.2;
  x0[1] = 1.0;
  const SolveReport report = solve(rosenbrockBlocks(), x0, {.max_iterations = 1});
  CHECK(report.iterations_used == 1);
  CHECK(report.termination == Termination::kMaxIterations);
  CHECK(report.final_cost <= report.initial_cost);
}

TEST_CASE("solver is deterministic") {
  std::mt19937_64 rng(11);
  const StateVector x0 = randomState(rng);
  const auto blocks = rosenbrockBlocks();
  const SolveReport a = solve(blocks, x0, {.max_iterations = 60});
  const SolveReport b = solve(blocks, x0, {.max_iterations = 60});
  CHECK(a.final_state == b.final_state);
  CHECK(a.final_cost == b.final_cost);
  CHECK(a.iterations_used == b.iterations_used);
}

TEST_CASE("pre-evaluation hook sees every new state exactly once") {
  std::vector<StateVector> announced;
  const PreEvalHook hook = [&announced](const StateVector& c) {
    announced.push_back(c);
  };
  StateVector x0 = StateVector::Zero();
  x0[0] = -1.2;
  x0[1] = 1.0;
  SolveOptions options;
  options.max_iterations = 40;
  options.record_trace = true;
  const SolveReport report = solve(rosenbrockBlocks(), x0, options, hook);

  // One call for the initial state plus one per attempted step.
  CHECK(announced.size() == static_cast<std::size_t>(report.iterations_used) + 1);
  for (std::size_t i = 1; i < announced.size(); ++i) {
    CHECK(announced[i] != announced[i - 1]);
  }
  CHECK(announced.front() == x0);
}

TEST_CASE("non-finite residuals stop with the last good state") {
  ResidualBlock block = identityBlock();
  block.residual = [](const StateVector& c) {
    Eigen::VectorXd r = c;
    if (c[0] < 0.9) {  // every step away from x0 explodes
      r[0] = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
  };
  StateVector x0 = StateVector::Ones();
  const SolveReport report = solve(std::vector<ResidualBlock>{block}, x0,
                                   {.max_iterations = 30});
  CHECK(report.termination == Termination::kNumericalFailure);
  CHECK(report.final_state.allFinite());
}

TEST_CASE("jacobian checker accepts exact and flags wrong jacobians") {
  std::mt19937_64 rng(13);
  SUBCASE("linear blocks are exact") {
    CHECK(checkJacobian(identityBlock(), randomState(rng), 1e-6) < 1e-9);
  }
  SUBCASE("rosenbrock analytic jacobian") {
    for (const ResidualBlock& block : rosenbrockBlocks()) {
      CHECK(checkJacobian(block, randomState(rng, 1.0), 1e-7) < 1e-6);
    }
  }
  SUBCASE("a corrupted jacobian is caught") {
    ResidualBlock block = identityBlock();
    block.jacobian = [](const StateVector&) {
      Eigen::MatrixXd j = Eigen::MatrixXd::Identity(kStateDim, kStateDim);
      j(0, 0) = 2.0;
      return j;
    };
    CHECK(checkJacobian(block, randomState(rng), 1e-6) > 0.1);
  }
}

TEST_CASE("trace stream reports one line per iteration") {
  StateVector x0 = StateVector::Zero();
  x0[0] = -1.2;
  x0[1] = 1.0;
  std::ostringstream trace;
  SolveOptions options;
  options.max_iterations = 5;
  options.trace_stream = &trace;
  const SolveReport report = solve(rosenbrockBlocks(), x0, options);
  int lines = 0;
  std::string line;
  std::istringstream in(trace.str());
  while (std::getline(in, line)) {
    CHECK(line.find("iter") == 0);
    ++lines;
  }
  CHECK(lines == report.iterations_used);
}

}  // namespace
}  // namespace contraj
