#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gffpielm/benchmarks.hpp"
#include "gffpielm/diagnostics.hpp"
#include "gffpielm/error.hpp"
#include "gffpielm/rng.hpp"

using namespace gffpielm;

TEST_CASE("metrics") {
  Eigen::MatrixXd H(2, 1);
  H << 1, 1;
  const Eigen::Vector2d Y(1, 3);
  Eigen::VectorXd b(1);
  b << 2;
  CHECK(training_mse(H, b, Y) == doctest::Approx(1.0));

  const Eigen::Vector3d exact(3, 0, 4), pred(3, 0, 5);
  CHECK(relative_l2(exact, pred) == doctest::Approx(0.2));
  CHECK(relative_l2(exact, exact) == 0.0);
  CHECK(max_abs_error(exact, pred) == doctest::Approx(1.0));
  CHECK_THROWS_AS(relative_l2(Eigen::Vector3d::Zero(), pred), Error);

  CHECK(beta_spread(Eigen::Vector3d(1, 2, 8)) == doctest::Approx(4.0));
  CHECK(beta_spread(Eigen::Vector3d::Zero()) == 0.0);
}

TEST_CASE("spectrum lists every neuron in ascending delta") {
  const auto layer = FeatureLayer::gff(100, 1, 1, 1000, 3);
  Eigen::VectorXd beta(100);
  for (int m = 0; m < 100; ++m) beta[m] = (m % 2 ? -1.0 : 1.0) * m;
  const auto s = beta_spectrum(layer, beta, 50);
  REQUIRE(s.delta.size() == 100);
  for (int m = 0; m < 100; ++m) {
    CHECK(s.delta[m] == layer.frequency(m));
    CHECK(s.abs_beta[m] == std::abs(beta[m]));
    if (m > 0) CHECK(s.delta[m] > s.delta[m - 1]);
  }
  CHECK(s.bin_edges.size() == 51);
  CHECK(s.bin_edges.front() == 1.0);
  CHECK(s.bin_edges.back() == 1000.0);
  int total = 0;
  for (int c : s.bin_count) total += c;
  CHECK(total == 100);
  CHECK(s.bin_max.back() == 99.0);

  std::ostringstream os;
  write_spectrum_csv(os, s);
  CHECK(os.str().rfind("delta,abs_beta\n1,0\n", 0) == 0);

  CHECK_THROWS_AS(beta_spectrum(FeatureLayer::vanilla(5, 1, 1, 1), Eigen::VectorXd::Ones(5), 5), Error);
  CHECK_THROWS_AS(beta_spectrum(layer, Eigen::VectorXd::Ones(5), 5), Error);
}

TEST_CASE("interval suggestion from a synthetic spectrum") {
  const auto layer = FeatureLayer::gff(1000, 1, 1, 1000, 1);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(1000);
  for (int m = 0; m < 1000; ++m)
    if (layer.frequency(m) <= 400) beta[m] = 1.0 + (m % 7);
  const auto s = beta_spectrum(layer, beta, 50);
  const auto g = suggest_frequency_interval(s, 1e-3, 1.1);
  CHECK(g.flag == SuggestionFlag::Refined);
  CHECK(g.delta_min == 1.0);
  // last active bin ends at 1 + 20 * 999/50 = 400.6
  CHECK(g.delta_max == doctest::Approx(1.1 * (1 + 20 * 999.0 / 50)));
  CHECK(g.active_fraction == doctest::Approx(20.0 / 50));

  // every bin active -> unchanged
  const auto all = suggest_frequency_interval(beta_spectrum(layer, Eigen::VectorXd::Ones(1000), 50), 1e-3, 1.1);
  CHECK(all.flag == SuggestionFlag::Unchanged);
  CHECK(all.delta_min == 1.0);
  CHECK(all.delta_max == 1000.0);

  // only the top bin inactive: margin pushes past the end and the clamp restores it
  Eigen::VectorXd most = Eigen::VectorXd::Ones(1000);
  for (int m = 990; m < 1000; ++m) most[m] = 0.0;
  const auto clamp = suggest_frequency_interval(beta_spectrum(layer, most, 50), 1e-3, 1.1);
  CHECK(clamp.flag == SuggestionFlag::Unchanged);
  CHECK(clamp.delta_max == 1000.0);

  // low end trimmed
  Eigen::VectorXd high = Eigen::VectorXd::Zero(1000);
  for (int m = 500; m < 600; ++m) high[m] = 1.0;
  const auto mid = suggest_frequency_interval(beta_spectrum(layer, high, 50), 1e-3, 1.0);
  CHECK(mid.flag == SuggestionFlag::Refined);
  CHECK(mid.delta_min > 400);
  CHECK(mid.delta_max < 700);

  const auto zero = suggest_frequency_interval(beta_spectrum(layer, Eigen::VectorXd::Zero(1000), 50), 1e-3, 1.1);
  CHECK(zero.flag == SuggestionFlag::Degenerate);
  Eigen::VectorXd bad = Eigen::VectorXd::Ones(1000);
  bad[3] = NAN;
  CHECK(suggest_frequency_interval(beta_spectrum(layer, bad, 50), 1e-3, 1.1).flag ==
        SuggestionFlag::Degenerate);

  CHECK_THROWS_AS(suggest_frequency_interval(s, 0.0, 1.1), Error);
  CHECK_THROWS_AS(suggest_frequency_interval(s, 1e-3, 0.9), Error);
  CHECK(std::string(to_string(SuggestionFlag::Refined)) == "REFINED");
}

TEST_CASE("refinement loop bookkeeping") {
  const auto spec = get_case("poisson1d_demo");
  const auto colloc = sample_collocation(spec.problem, {400, 1, 0, derive_seed(1, 1)});
  const auto r = refine_and_resolve(spec.problem, 200, 1, 1000, 1, colloc, 3, {});
  REQUIRE_FALSE(r.trail.empty());
  CHECK(r.trail.size() <= 3);
  CHECK(r.trail.front().delta_min == 1.0);
  CHECK(r.trail.front().delta_max == 1000.0);
  for (std::size_t k = 1; k < r.trail.size(); ++k) {
    CHECK(r.trail[k - 1].suggestion.flag == SuggestionFlag::Refined);
    CHECK(r.trail[k].delta_min == r.trail[k - 1].suggestion.delta_min);
    CHECK(r.trail[k].delta_max == r.trail[k - 1].suggestion.delta_max);
  }
  if (r.trail.size() < 3) CHECK(r.trail.back().suggestion.flag != SuggestionFlag::Refined);
  REQUIRE(r.final_layer.has_value());
  CHECK(r.final_layer->frequency_interval()->second == r.trail.back().delta_max);
  CHECK(r.final.l2 == r.trail.back().l2);

  const auto once = refine_and_resolve(spec.problem, 200, 1, 1000, 1, colloc, 1, {});
  CHECK(once.trail.size() == 1);
  CHECK_THROWS_AS(refine_and_resolve(spec.problem, 200, 1, 1000, 1, colloc, 0, {}), Error);
}

TEST_CASE("L sweep") {
  const auto spec = get_case("poisson1d_demo");
  const auto colloc = sample_collocation(spec.problem, {400, 1, 0, 5});
  const auto one = sweep_vanilla_L(spec.problem, colloc, 200, {40.0}, 1, {});
  REQUIRE(one.rows.size() == 1);
  CHECK(one.best == 0);
  CHECK(std::isfinite(one.rows[0].l2));

  const auto mixed = sweep_vanilla_L(spec.problem, colloc, 50, {-1.0, 5.0}, 1, {});
  CHECK_FALSE(mixed.rows[0].error.empty());
  CHECK(mixed.rows[1].error.empty());
  CHECK(mixed.best == 1);

  std::ostringstream os;
  write_sweep_csv(os, mixed);
  CHECK(os.str().rfind("L,mse,l2\n", 0) == 0);
  CHECK_THROWS_AS(sweep_vanilla_L(spec.problem, colloc, 50, {}, 1, {}), Error);
}
