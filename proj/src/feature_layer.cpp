#include "gffpielm/feature_layer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gffpielm/error.hpp"
#include "gffpielm/rng.hpp"

namespace gffpielm {

const char* to_string(Activation a) {
  switch (a) {
    case Activation::GffCosine:
      return "gff_cosine";
    case Activation::VanillaTanh:
      return "vanilla_tanh";
  }
  return "unknown";
}

namespace {

void check_shape(int neurons, int input_dim) {
  if (neurons < 1) throw Error("feature layer: neuron count must be positive, got " +
                               std::to_string(neurons));
  if (input_dim < 1) throw Error("feature layer: input dimension must be positive, got " +
                                 std::to_string(input_dim));
}

}  // namespace

FeatureLayer FeatureLayer::gff(int neurons, int input_dim, double delta_min, double delta_max,
                               std::uint64_t seed) {
  check_shape(neurons, input_dim);
  if (!std::isfinite(delta_min) || !std::isfinite(delta_max))
    throw Error("feature layer: frequency bounds must be finite");
  if (!(delta_min > 0.0) || delta_min > delta_max)
    throw Error("feature layer: need 0 < delta_min <= delta_max");

  FeatureLayer layer;
  layer.neurons_ = neurons;
  layer.input_dim_ = input_dim;
  layer.activation_ = Activation::GffCosine;
  layer.seed_ = seed;

  Rng rng(seed);
  layer.weights_.resize(static_cast<std::size_t>(neurons) * input_dim);
  for (double& w : layer.weights_) w = rng.normal();
  layer.biases_.resize(neurons);
  for (double& b : layer.biases_) b = rng.uniform(0.0, 2.0 * std::numbers::pi);

  layer.frequencies_.resize(neurons);
  if (neurons == 1) {
    layer.frequencies_[0] = delta_min;
  } else {
    const double step = (delta_max - delta_min) / (neurons - 1);
    for (int m = 0; m < neurons; ++m) layer.frequencies_[m] = delta_min + m * step;
    layer.frequencies_.back() = delta_max;
  }
  return layer;
}

FeatureLayer FeatureLayer::vanilla(int neurons, int input_dim, double half_width,
                                   std::uint64_t seed) {
  check_shape(neurons, input_dim);
  if (!std::isfinite(half_width) || !(half_width > 0.0))
    throw Error("feature layer: half-width L must be positive and finite");

  FeatureLayer layer;
  layer.neurons_ = neurons;
  layer.input_dim_ = input_dim;
  layer.activation_ = Activation::VanillaTanh;
  layer.seed_ = seed;
  layer.half_width_ = half_width;

  Rng rng(seed);
  layer.weights_.resize(static_cast<std::size_t>(neurons) * input_dim);
  for (double& w : layer.weights_) w = rng.uniform(-half_width, half_width);
  layer.biases_.resize(neurons);
  for (double& b : layer.biases_) b = rng.uniform(-half_width, half_width);
  return layer;
}

std::optional<std::pair<double, double>> FeatureLayer::frequency_interval() const {
  if (frequencies_.empty()) return std::nullopt;
  return std::pair{frequencies_.front(), frequencies_.back()};
}

double FeatureLayer::preactivation(int m, Point v) const {
  const auto w = weights(m);
  double dot = 0.0;
  for (int i = 0; i < input_dim_; ++i) dot += w[i] * v[i];
  return frequency(m) * dot + biases_[m];
}

double activation_derivative(Activation a, int n, double z) {
  if (a == Activation::GffCosine) {
    // cos(z + n*pi/2), exact phase shifts
    switch (n % 4) {
      case 0:
        return std::cos(z);
      case 1:
        return -std::sin(z);
      case 2:
        return -std::cos(z);
      default:
        return std::sin(z);
    }
  }
  const double t = std::tanh(z);
  switch (n) {
    case 0:
      return t;
    case 1:
      return 1.0 - t * t;
    case 2:
      return -2.0 * t * (1.0 - t * t);
    default:
      throw UnsupportedOrderError("tanh activation: derivative order " + std::to_string(n) +
                                  " not supported (max 2)");
  }
}

double FeatureLayer::derivative(int m, Point v, std::span<const int> orders) const {
  if (m < 0 || m >= neurons_) throw Error("feature layer: neuron index out of range");
  if (static_cast<int>(v.size()) != input_dim_ || static_cast<int>(orders.size()) != input_dim_)
    throw Error("feature layer: point/multi-index dimension mismatch");

  const auto w = weights(m);
  const double delta = frequency(m);
  int total = 0;
  double factor = 1.0;
  for (int i = 0; i < input_dim_; ++i) {
    if (orders[i] < 0) throw Error("feature layer: negative derivative order");
    total += orders[i];
    const double scale = delta * w[i];
    for (int k = 0; k < orders[i]; ++k) factor *= scale;
  }
  if (activation_ == Activation::VanillaTanh && total > 2)
    throw UnsupportedOrderError("tanh activation: derivative order " + std::to_string(total) +
                                " not supported (max 2)");
  return factor * activation_derivative(activation_, total, preactivation(m, v));
}

Eigen::VectorXd FeatureLayer::row(Point v) const {
  if (static_cast<int>(v.size()) != input_dim_)
    throw Error("feature layer: point dimension mismatch");
  Eigen::VectorXd out(neurons_);
  for (int m = 0; m < neurons_; ++m)
    out[m] = activation_derivative(activation_, 0, preactivation(m, v));
  return out;
}

}  // namespace gffpielm
