#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gffpielm/error.hpp"
#include "gffpielm/feature_layer.hpp"
#include "oracles.hpp"

using namespace gffpielm;
using std::numbers::pi;

namespace {

double by_hand(const FeatureLayer& layer, int m, const std::vector<double>& v) {
  double z = layer.bias(m);
  for (int i = 0; i < layer.input_dim(); ++i) z += layer.frequency(m) * layer.weights(m)[i] * v[i];
  return layer.activation() == Activation::GffCosine ? std::cos(z) : std::tanh(z);
}

}  // namespace

TEST_CASE("activation derivatives at known points") {
  CHECK(activation_derivative(Activation::GffCosine, 0, 0.0) == doctest::Approx(1.0));
  CHECK(activation_derivative(Activation::GffCosine, 2, 0.0) == doctest::Approx(-1.0));
  // chain rule with delta = 2, w = 1, v = pi/4: -2 sin(pi/2)
  CHECK(2.0 * activation_derivative(Activation::GffCosine, 1, 2.0 * pi / 4) ==
        doctest::Approx(-2.0));
  CHECK(std::cos(pi / 2) == doctest::Approx(activation_derivative(Activation::GffCosine, 0, pi / 2)));
  const double z = 0.37, t = std::tanh(z);
  CHECK(activation_derivative(Activation::VanillaTanh, 1, z) == doctest::Approx(1 - t * t));
  CHECK(activation_derivative(Activation::VanillaTanh, 2, z) ==
        doctest::Approx(-2 * t * (1 - t * t)));
  CHECK_THROWS_AS(activation_derivative(Activation::VanillaTanh, 3, z), UnsupportedOrderError);
  for (int n = 0; n < 8; ++n)
    CHECK(activation_derivative(Activation::GffCosine, n + 4, 0.81) ==
          doctest::Approx(activation_derivative(Activation::GffCosine, n, 0.81)).epsilon(1e-14));
}

TEST_CASE("frequency coefficients are an ascending linspace") {
  const auto layer = FeatureLayer::gff(200, 1, 1.0, 400.0, 7);
  const auto d = layer.frequencies();
  REQUIRE(d.size() == 200);
  CHECK(d.front() == 1.0);
  CHECK(d.back() == 400.0);
  const double step = d[1] - d[0];
  for (std::size_t k = 1; k < d.size(); ++k)
    CHECK(std::abs((d[k] - d[k - 1]) - step) <= 1e-12 * step);

  const auto single = FeatureLayer::gff(1, 2, 3.0, 9.0, 1);
  CHECK(single.frequency(0) == 3.0);
  const auto flat = FeatureLayer::gff(10, 1, 5.0, 5.0, 1);
  for (double v : flat.frequencies()) CHECK(v == 5.0);
}

TEST_CASE("gff weights standard normal, biases in [0, 2pi]") {
  const auto layer = FeatureLayer::gff(5000, 2, 1.0, 100.0, 11);
  double mean = 0, sq = 0;
  for (double w : layer.all_weights()) {
    mean += w;
    sq += w * w;
  }
  const double n = static_cast<double>(layer.all_weights().size());
  mean /= n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.05);
  for (double b : layer.biases()) {
    CHECK(b >= 0.0);
    CHECK(b <= 2 * pi);
  }
  // weights carry no frequency scale
  double maxw = 0;
  for (double w : layer.all_weights()) maxw = std::max(maxw, std::abs(w));
  CHECK(maxw < 6.0);
}

TEST_CASE("vanilla layer bounded by L") {
  for (double L : {10.0, 40.0}) {
    const auto layer = FeatureLayer::vanilla(100, 2, L, 3);
    for (double w : layer.all_weights()) CHECK(std::abs(w) <= L);
    for (double b : layer.biases()) CHECK(std::abs(b) <= L);
    CHECK(layer.frequencies().empty());
    CHECK(layer.frequency(5) == 1.0);
    CHECK(layer.half_width().value() == L);
    CHECK(layer.max_order() == 2);
  }
}

TEST_CASE("constructor errors") {
  CHECK_THROWS_AS(FeatureLayer::gff(0, 1, 1, 2, 1), Error);
  CHECK_THROWS_AS(FeatureLayer::gff(10, 0, 1, 2, 1), Error);
  CHECK_THROWS_AS(FeatureLayer::gff(10, 1, 0, 2, 1), Error);
  CHECK_THROWS_AS(FeatureLayer::gff(10, 1, 3, 2, 1), Error);
  CHECK_THROWS_AS(FeatureLayer::gff(10, 1, 1, NAN, 1), Error);
  CHECK_THROWS_AS(FeatureLayer::vanilla(10, 1, 0.0, 1), Error);
  CHECK_THROWS_AS(FeatureLayer::vanilla(10, 1, -1.0, 1), Error);
}

TEST_CASE("same seed, same layer; different seed, different layer") {
  CHECK(FeatureLayer::gff(50, 3, 1, 10, 42) == FeatureLayer::gff(50, 3, 1, 10, 42));
  CHECK(FeatureLayer::vanilla(50, 3, 4, 42) == FeatureLayer::vanilla(50, 3, 4, 42));
  CHECK_FALSE(FeatureLayer::gff(50, 3, 1, 10, 42) == FeatureLayer::gff(50, 3, 1, 10, 43));
}

TEST_CASE("row matches closed form and order-zero derivative") {
  for (auto layer : {FeatureLayer::gff(30, 2, 1, 20, 5), FeatureLayer::vanilla(30, 2, 3, 5)}) {
    const std::vector<double> v{0.3, -0.7};
    const Eigen::VectorXd r = feature_row(layer, v);
    const std::vector<int> zero{0, 0};
    for (int m = 0; m < layer.neurons(); ++m) {
      CHECK(r[m] == doctest::Approx(by_hand(layer, m, v)).epsilon(1e-14));
      CHECK(r[m] == feature_derivative(layer, m, v, zero));
      CHECK(std::abs(r[m]) <= 1.0);
    }
  }
  const auto layer = FeatureLayer::gff(3, 2, 1, 2, 1);
  const std::vector<double> bad{1.0};
  CHECK_THROWS_AS(layer.row(bad), Error);
}

TEST_CASE("analytic derivatives match finite differences") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int dim = 1; dim <= 3; ++dim) {
    for (auto layer : {FeatureLayer::gff(20, dim, 0.5, 3.0, 9), FeatureLayer::vanilla(20, dim, 2.0, 9)}) {
      for (int trial = 0; trial < 20; ++trial) {
        const int m = static_cast<int>(gen() % 20);
        std::vector<double> v(dim);
        for (auto& x : v) x = u(gen);
        std::vector<int> orders(dim, 0);
        const int total = static_cast<int>(gen() % 3);
        for (int k = 0; k < total; ++k) ++orders[gen() % dim];
        const oracle::Fn f = [&](const std::vector<double>& p) { return by_hand(layer, m, p); };
        const double fd = oracle::derivative(f, v, orders, 1e-3);
        const double an = feature_derivative(layer, m, v, orders);
        if (std::abs(an) < 1e-3)
          CHECK(std::abs(an - fd) <= 1e-8);
        else
          CHECK(oracle::relative_error(an, fd) <= 1e-5);
        ++checked;
      }
    }
  }
  CHECK(checked == 120);
}

TEST_CASE("cosine fourth derivative cycles back") {
  const auto layer = FeatureLayer::gff(10, 2, 1, 5, 3);
  const std::vector<double> v{0.2, 0.9};
  for (int m = 0; m < 10; ++m) {
    for (int axis = 0; axis < 2; ++axis) {
      std::vector<int> orders{0, 0};
      orders[axis] = 4;
      const double k = layer.frequency(m) * layer.weights(m)[axis];
      const std::vector<int> zero{0, 0};
      CHECK(layer.derivative(m, v, orders) ==
            doctest::Approx(std::pow(k, 4) * layer.derivative(m, v, zero)).epsilon(1e-12));
    }
  }
}

TEST_CASE("tanh rejects order three") {
  const auto layer = FeatureLayer::vanilla(4, 2, 1, 1);
  const std::vector<double> v{0.1, 0.2};
  const std::vector<int> third{2, 1};
  CHECK_THROWS_AS(layer.derivative(0, v, third), UnsupportedOrderError);
  const std::vector<int> neg{-1, 0};
  CHECK_THROWS_AS(layer.derivative(0, v, neg), Error);
}
