#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gffpielm/points.hpp"

namespace gffpielm {

enum class Activation {
  GffCosine,    ///< cos(delta_m * w_m.v + b_m), bounded in [-1, 1]
  VanillaTanh,  ///< tanh(w_m.v + b_m), bounded in (-1, 1)
};

const char* to_string(Activation a);

/// Frozen single hidden layer of an extreme learning machine.
///
/// Cosine layers carry one frequency coefficient per neuron, linearly spaced
/// and assigned in ascending order (neuron 0 gets delta_min). Input weights
/// are standard normal; the frequency scale lives only in the coefficients.
/// Tanh layers draw weights and biases uniformly on [-L, L] and have unit
/// frequency coefficients.
///
/// Random stream order: all weights (neuron-major, then coordinate), then
/// all biases.
class FeatureLayer {
 public:
  static FeatureLayer gff(int neurons, int input_dim, double delta_min, double delta_max,
                          std::uint64_t seed);
  static FeatureLayer vanilla(int neurons, int input_dim, double half_width, std::uint64_t seed);

  int neurons() const noexcept { return neurons_; }
  int input_dim() const noexcept { return input_dim_; }
  Activation activation() const noexcept { return activation_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::span<const double> weights(int m) const {
    return {weights_.data() + static_cast<std::size_t>(m) * input_dim_,
            static_cast<std::size_t>(input_dim_)};
  }
  double bias(int m) const { return biases_[m]; }
  /// Frequency coefficient of neuron m; 1 for tanh layers.
  double frequency(int m) const { return frequencies_.empty() ? 1.0 : frequencies_[m]; }
  /// Empty for tanh layers.
  std::span<const double> frequencies() const noexcept { return frequencies_; }
  std::span<const double> all_weights() const noexcept { return weights_; }
  std::span<const double> biases() const noexcept { return biases_; }

  /// Interval the frequencies were spaced over (cosine layers only).
  std::optional<std::pair<double, double>> frequency_interval() const;
  /// Uniform half-width L (tanh layers only).
  std::optional<double> half_width() const noexcept { return half_width_; }

  /// Pre-activation z = delta_m * w_m.v + b_m.
  double preactivation(int m, Point v) const;

  /// Analytic mixed partial derivative of neuron m at v; orders[i] is the
  /// derivative order along input coordinate i. Tanh supports total order <= 2.
  double derivative(int m, Point v, std::span<const int> orders) const;

  /// All neuron outputs at v.
  Eigen::VectorXd row(Point v) const;

  /// Highest total derivative order supported by the activation (-1 = unbounded).
  int max_order() const noexcept { return activation_ == Activation::VanillaTanh ? 2 : -1; }

  friend bool operator==(const FeatureLayer&, const FeatureLayer&) = default;

 private:
  FeatureLayer() = default;

  int neurons_ = 0;
  int input_dim_ = 0;
  Activation activation_ = Activation::GffCosine;
  std::uint64_t seed_ = 0;
  std::vector<double> weights_;
  std::vector<double> biases_;
  std::vector<double> frequencies_;
  std::optional<double> half_width_;
};

/// n-th derivative of the activation evaluated at z.
double activation_derivative(Activation a, int n, double z);

/// Free-function spellings of the layer operations.
inline double feature_derivative(const FeatureLayer& layer, int m, Point v,
                                 std::span<const int> orders) {
  return layer.derivative(m, v, orders);
}
inline Eigen::VectorXd feature_row(const FeatureLayer& layer, Point v) { return layer.row(v); }

}  // namespace gffpielm
