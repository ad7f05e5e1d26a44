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

#include "contraj/sdf/siren.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "contraj/errors.hpp"

namespace contraj {

namespace {

constexpr int kInputDim = 3;
constexpr int kOutputDim = 1;
constexpr const char* kFileMagic = "siren";
constexpr int kFileVersion = 1;

void validateChain(const std::vector<SirenLayer>& layers) {
  if (layers.size() < 2) {
    throw std::invalid_argument("network needs at least one hidden layer");
  }
  int expected_in = kInputDim;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& layer = layers[i];
    if (layer.weight.cols() != expected_in || layer.bias.size() != layer.weight.rows()) {
      std::ostringstream msg;
      msg << "layer " << i << " shape (" << layer.weight.rows() << "x"
          << layer.weight.cols() << ", bias " << layer.bias.size()
          << ") does not chain from input dim " << expected_in;
      throw FormatError(msg.str());
    }
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) {
      throw FormatError("layer " + std::to_string(i) + " has non-finite parameters");
    }
    expected_in = static_cast<int>(layer.weight.rows());
  }
  if (expected_in != kOutputDim) {
    throw FormatError("last layer must have a single output row");
  }
}

}  // namespace

SirenMlp::SirenMlp(std::vector<SirenLayer> layers, double omega0)
    : layers_(std::move(layers)), omega0_(omega0) {
  if (!(omega0 > 0.0)) {
    throw std::invalid_argument("omega0 must be positive");
  }
  validateChain(layers_);
}

SirenMlp SirenMlp::randomInit(int hidden_width, int hidden_layers, double omega0,
                              std::uint64_t seed) {
  if (hidden_width < 1 || hidden_layers < 1) {
    throw std::invalid_argument("network dimensions must be positive");
  }
  std::mt19937_64 rng(seed);
  auto fill_layer = [&rng](int rows, int cols, double bound) {
    std::uniform_real_distribution<double> dist(-bound, bound);
    SirenLayer layer;
    layer.weight.resize(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        layer.weight(r, c) = dist(rng);
      }
    }
    layer.bias.resize(rows);
    for (int r = 0; r < rows; ++r) {
      layer.bias(r) = dist(rng);
    }
    return layer;
  };

  std::vector<SirenLayer> layers;
  layers.reserve(static_cast<std::size_t>(hidden_layers) + 1);
  int in_dim = kInputDim;
  for (int i = 0; i < hidden_layers; ++i) {
    const double bound = i == 0 ? 1.0 / in_dim : std::sqrt(6.0 / in_dim) / omega0;
    layers.push_back(fill_layer(hidden_width, in_dim, bound));
    in_dim = hidden_width;
  }
  layers.push_back(fill_layer(kOutputDim, in_dim, std::sqrt(6.0 / in_dim) / omega0));
  return SirenMlp(std::move(layers), omega0);
}

SdfSample SirenMlp::eval(const Vec3& p) const {
  const std::size_t sine_layers = layers_.size() - 1;

  // Forward pass, caching pre-activations for the gradient chain.
  std::vector<Eigen::VectorXd> pre(sine_layers);
  Eigen::VectorXd h = p;
  for (std::size_t i = 0; i < sine_layers; ++i) {
    pre[i] = layers_[i].weight * h + layers_[i].bias;
    h = (omega0_ * pre[i].array()).sin();
  }
  const auto& last = layers_.back();
  const double value = (last.weight * h + last.bias)(0);

  // Backward row product: d(value)/d(p), 1 x 3 at the end.
  Eigen::RowVectorXd row = last.weight.row(0);
  for (std::size_t i = sine_layers; i-- > 0;) {
    const Eigen::ArrayXd gain = omega0_ * (omega0_ * pre[i].array()).cos();
    row = (row.transpose().array() * gain).matrix().transpose() * layers_[i].weight;
  }
  return {value, Vec3(row(0), row(1), row(2))};
}

std::vector<SdfSample> SirenMlp::evalBatch(std::span<const Vec3> points) const {
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  Eigen::Matrix3Xd input(3, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    input.col(i) = points[static_cast<std::size_t>(i)];
  }

  const std::size_t sine_layers = layers_.size() - 1;
  std::vector<Eigen::MatrixXd> pre(sine_layers);
  Eigen::MatrixXd h = input;
  for (std::size_t i = 0; i < sine_layers; ++i) {
    pre[i] = (layers_[i].weight * h).colwise() + layers_[i].bias;
    h = (omega0_ * pre[i].array()).sin();
  }
  const auto& last = layers_.back();
  const Eigen::RowVectorXd values =
      (last.weight * h).row(0).array() + last.bias(0);

  // One backward sweep carries the gradient rows of every point at once.
  Eigen::MatrixXd rows = last.weight.row(0).transpose().replicate(1, n);
  for (std::size_t i = sine_layers; i-- > 0;) {
    rows.array() *= omega0_ * (omega0_ * pre[i].array()).cos();
    rows = layers_[i].weight.transpose() * rows;
  }

  std::vector<SdfSample> samples(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    samples[static_cast<std::size_t>(i)] = {values(i), Vec3(rows.col(i))};
  }
  return samples;
}

Eigen::VectorXd SirenMlp::forward(const Eigen::Matrix3Xd& points) const {
  const std::size_t sine_layers = layers_.size() - 1;
  Eigen::MatrixXd h = points;
  for (std::size_t i = 0; i < sine_layers; ++i) {
    h = ((omega0_ * ((layers_[i].weight * h).colwise() + layers_[i].bias).array()).sin());
  }
  const auto& last = layers_.back();
  return ((last.weight * h).row(0).array() + last.bias(0)).matrix().transpose();
}

void SirenMlp::save(std::ostream& out) const {
  out.precision(17);
  out << kFileMagic << " " << kFileVersion << "\n";
  out << "omega0 " << omega0_ << "\n";
  out << "layers " << layers_.size() << "\n";
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& layer = layers_[i];
    out << "layer " << i << " " << layer.weight.rows() << " " << layer.weight.cols()
        << "\n";
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        out << layer.weight(r, c) << (c + 1 == layer.weight.cols() ? "\n" : " ");
      }
    }
    out << "bias";
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
      out << " " << layer.bias(r);
    }
    out << "\n";
  }
}

void SirenMlp::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw FormatError("cannot open " + path.string() + " for writing");
  }
  save(out);
}

SirenMlp SirenMlp::load(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kFileMagic) {
    throw FormatError("missing siren header");
  }
  if (version != kFileVersion) {
    throw FormatError("unsupported siren format version " + std::to_string(version));
  }
  std::string key;
  double omega0 = 0.0;
  if (!(in >> key >> omega0) || key != "omega0") {
    throw FormatError("missing omega0 field");
  }
  std::size_t layer_count = 0;
  if (!(in >> key >> layer_count) || key != "layers" || layer_count == 0) {
    throw FormatError("missing layer count");
  }

  std::vector<SirenLayer> layers;
  layers.reserve(layer_count);
  for (std::size_t i = 0; i < layer_count; ++i) {
    std::size_t declared_index = 0;
    Eigen::Index rows = 0, cols = 0;
    if (!(in >> key >> declared_index >> rows >> cols) || key != "layer" ||
        declared_index != i || rows <= 0 || cols <= 0) {
      throw FormatError("bad header for layer " + std::to_string(i));
    }
    SirenLayer layer;
    layer.weight.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        if (!(in >> layer.weight(r, c))) {
          throw FormatError("truncated weights in layer " + std::to_string(i));
        }
      }
    }
    if (!(in >> key) || key != "bias") {
      throw FormatError("missing bias marker in layer " + std::to_string(i));
    }
    layer.bias.resize(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!(in >> layer.bias(r))) {
        throw FormatError("truncated bias in layer " + std::to_string(i));
      }
    }
    if (!layer.weight.allFinite() || !layer.bias.allFinite()) {
      throw FormatError("non-finite parameter in layer " + std::to_string(i));
    }
    layers.push_back(std::move(layer));
  }
  return SirenMlp(std::move(layers), omega0);
}

SirenMlp SirenMlp::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path.string());
  }
  return load(in);
}

SirenFitResult fitSiren(const AnalyticScene& scene, const SirenFitOptions& options) {
  if (options.sample_count < 1000) {
    throw std::invalid_argument("sample_count must be >= 1000");
  }
  if (options.iterations < 0) {
    throw std::invalid_argument("iterations must be >= 0");
  }
  if (!(options.step_size > 0.0)) {
    throw std::invalid_argument("step_size must be positive");
  }

  std::mt19937_64 rng(options.seed);
  const Aabb bounds = *scene.bounds();
  auto draw_point = [&]() {
    Vec3 p;
    for (int axis = 0; axis < 3; ++axis) {
      std::uniform_real_distribution<double> dist(bounds.min[axis], bounds.max[axis]);
      p[axis] = dist(rng);
    }
    return p;
  };

  Eigen::Matrix3Xd train_points(3, options.sample_count);
  Eigen::VectorXd train_targets(options.sample_count);
  for (int i = 0; i < options.sample_count; ++i) {
    const Vec3 p = draw_point();
    train_points.col(i) = p;
    train_targets(i) = scene.eval(p).distance;
  }
  Eigen::Matrix3Xd holdout_points(3, options.holdout_count);
  Eigen::VectorXd holdout_targets(options.holdout_count);
  for (int i = 0; i < options.holdout_count; ++i) {
    const Vec3 p = draw_point();
    holdout_points.col(i) = p;
    holdout_targets(i) = scene.eval(p).distance;
  }

  SirenMlp mlp = SirenMlp::randomInit(options.hidden_width, options.hidden_layers,
                                      options.omega0, options.seed);
  std::vector<SirenLayer> layers = mlp.layers();
  const std::size_t layer_count = layers.size();
  const std::size_t sine_layers = layer_count - 1;
  const double omega0 = options.omega0;

  // Adam state per parameter tensor.
  std::vector<Eigen::MatrixXd> m_w(layer_count), v_w(layer_count);
  std::vector<Eigen::VectorXd> m_b(layer_count), v_b(layer_count);
  for (std::size_t i = 0; i < layer_count; ++i) {
    m_w[i] = Eigen::MatrixXd::Zero(layers[i].weight.rows(), layers[i].weight.cols());
    v_w[i] = m_w[i];
    m_b[i] = Eigen::VectorXd::Zero(layers[i].bias.size());
    v_b[i] = m_b[i];
  }
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;

  const int batch = std::min(options.batch_size, options.sample_count);
  std::vector<int> order(static_cast<std::size_t>(options.sample_count));
  std::iota(order.begin(), order.end(), 0);
  std::size_t cursor = order.size();  // forces a shuffle before the first batch

  double last_loss = 0.0;
  std::vector<Eigen::MatrixXd> pre(sine_layers), act(sine_layers);
  for (int step = 1; step <= options.iterations; ++step) {
    Eigen::Matrix3Xd x(3, batch);
    Eigen::VectorXd t(batch);
    for (int i = 0; i < batch; ++i) {
      if (cursor == order.size()) {
        std::shuffle(order.begin(), order.end(), rng);
        cursor = 0;
      }
      const int idx = order[cursor++];
      x.col(i) = train_points.col(idx);
      t(i) = train_targets(idx);
    }

    // Forward with caches.
    Eigen::MatrixXd h = x;
    for (std::size_t i = 0; i < sine_layers; ++i) {
      pre[i] = (layers[i].weight * h).colwise() + layers[i].bias;
      act[i] = (omega0 * pre[i].array()).sin();
      h = act[i];
    }
    const auto& last = layers.back();
    const Eigen::RowVectorXd out = (last.weight * h).row(0).array() + last.bias(0);
    const Eigen::RowVectorXd err = out - t.transpose();
    last_loss = err.squaredNorm() / batch;
    if (!std::isfinite(last_loss)) {
      throw TrainingError("loss became non-finite at step " + std::to_string(step));
    }

    // Backward.
    std::vector<Eigen::MatrixXd> grad_w(layer_count);
    std::vector<Eigen::VectorXd> grad_b(layer_count);
    Eigen::MatrixXd delta = (2.0 / batch) * err;  // 1 x batch
    grad_w[layer_count - 1] = delta * act[sine_layers - 1].transpose();
    grad_b[layer_count - 1] = delta.rowwise().sum();
    Eigen::MatrixXd back = last.weight.transpose() * delta;
    for (std::size_t i = sine_layers; i-- > 0;) {
      back.array() *= omega0 * (omega0 * pre[i].array()).cos();
      if (i == 0) {
        grad_w[i] = back * x.transpose();
      } else {
        grad_w[i] = back * act[i - 1].transpose();
      }
      grad_b[i] = back.rowwise().sum();
      if (i > 0) {
        back = layers[i].weight.transpose() * back;
      }
    }

    // Adam update.
    const double bias1 = 1.0 - std::pow(kBeta1, step);
    const double bias2 = 1.0 - std::pow(kBeta2, step);
    for (std::size_t i = 0; i < layer_count; ++i) {
      m_w[i] = kBeta1 * m_w[i] + (1.0 - kBeta1) * grad_w[i];
      v_w[i] = kBeta2 * v_w[i].array() + (1.0 - kBeta2) * grad_w[i].array().square();
      layers[i].weight.array() -=
          options.step_size * (m_w[i].array() / bias1) /
          ((v_w[i].array() / bias2).sqrt() + kEps);
      m_b[i] = kBeta1 * m_b[i] + (1.0 - kBeta1) * grad_b[i];
      v_b[i] = kBeta2 * v_b[i].array() + (1.0 - kBeta2) * grad_b[i].array().square();
      layers[i].bias.array() -=
          options.step_size * (m_b[i].array() / bias1) /
          ((v_b[i].array() / bias2).sqrt() + kEps);
    }
  }

  SirenMlp fitted(std::move(layers), omega0);
  const Eigen::VectorXd holdout_pred = fitted.forward(holdout_points);
  const double rms = std::sqrt((holdout_pred - holdout_targets).squaredNorm() /
                               options.holdout_count);
  return {std::move(fitted), rms, last_loss};
}

}  // namespace contraj
