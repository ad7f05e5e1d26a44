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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "contraj/sdf/analytic_scene.hpp"
#include "contraj/sdf/provider.hpp"

namespace contraj {

struct SirenLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

// Fully connected network with sinusoidal activations, inference only.
// Every hidden layer computes sin(omega0 * (W h + b)); the last layer is
// linear. Input is a 3D point, output a scalar distance. Gradients are
// exact chain-rule derivatives through the sines, so this provider is
// smooth everywhere and needs no interpolation.
class SirenMlp final : public SdfProvider {
 public:
  SirenMlp(std::vector<SirenLayer> layers, double omega0);

  static constexpr double kDefaultOmega0 = 30.0;
  static constexpr int kDefaultHiddenWidth = 256;
  static constexpr int kDefaultHiddenLayers = 4;

  // Sine-aware random initialization: first layer U(-1/in, 1/in), deeper
  // layers U(-sqrt(6/in)/omega0, sqrt(6/in)/omega0).
  static SirenMlp randomInit(int hidden_width, int hidden_layers, double omega0,
                             std::uint64_t seed);

  SdfSample eval(const Vec3& p) const override;
  std::vector<SdfSample> evalBatch(std::span<const Vec3> points) const override;

  // Values only, batched as one matrix pass per layer.
  Eigen::VectorXd forward(const Eigen::Matrix3Xd& points) const;

  double omega0() const { return omega0_; }
  const std::vector<SirenLayer>& layers() const { return layers_; }

  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static SirenMlp load(std::istream& in);
  static SirenMlp load(const std::filesystem::path& path);

 private:
  std::vector<SirenLayer> layers_;
  double omega0_;
};

struct SirenFitOptions {
  int sample_count = 20000;
  int iterations = 2000;
  double step_size = 1e-4;
  std::uint64_t seed = 0;
  int hidden_width = SirenMlp::kDefaultHiddenWidth;
  int hidden_layers = SirenMlp::kDefaultHiddenLayers;
  double omega0 = SirenMlp::kDefaultOmega0;
  int batch_size = 256;
  int holdout_count = 2000;
};

struct SirenFitResult {
  SirenMlp mlp;
  double holdout_rms = 0.0;
  double final_loss = 0.0;
};

// Stochastic gradient fit (Adam steps) of the network output to the exact
// scene field, sampled uniformly inside the scene bounds. Deterministic for
// a fixed seed. Throws TrainingError if the loss becomes non-finite.
SirenFitResult fitSiren(const AnalyticScene& scene, const SirenFitOptions& options);

}  // namespace contraj
