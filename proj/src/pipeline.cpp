#include "gffpielm/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "gffpielm/diagnostics.hpp"
#include "gffpielm/error.hpp"

namespace gffpielm {

namespace {

double linspace_at(const Interval& iv, int k, int n) {
  return n == 1 ? iv.lo : iv.lo + iv.length() * k / (n - 1);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
auto staged(const char* stage, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

PointSet make_evaluation_grid(const Domain& domain, const GridSpec& spec) {
  const int sd = domain.spatial_dim();
  const bool timed = domain.has_time();
  int n = spec.per_axis;
  int slices = spec.time_slices;
  if (sd == 1 && !timed) {
    if (n <= 0) n = 1000;
  } else if (sd == 2 && timed) {
    if (n <= 0) n = 50;
    if (slices <= 0) slices = 10;
  } else {
    if (n <= 0) n = 100;
  }
  if (timed && sd == 1 && slices <= 0) slices = n;

  PointSet grid(domain.input_dim());
  double v[3];
  if (sd == 1) {
    const Interval ix = domain.bounds()[0];
    for (int a = 0; a < n; ++a) {
      v[0] = linspace_at(ix, a, n);
      if (!timed) {
        grid.push_back(std::span<const double>(v, 1));
        continue;
      }
      for (int b = 0; b < slices; ++b) {
        v[1] = linspace_at(domain.time(), b, slices);
        grid.push_back(std::span<const double>(v, 2));
      }
    }
    return grid;
  }

  const Interval ix = domain.bounds()[0], iy = domain.bounds()[1];
  const int time_count = timed ? slices : 1;
  for (int c = 0; c < time_count; ++c) {
    if (timed) v[2] = linspace_at(domain.time(), c, slices);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        v[0] = linspace_at(ix, a, n);
        v[1] = linspace_at(iy, b, n);
        if (domain.contains_spatial(std::span<const double>(v, 2)))
          grid.push_back(std::span<const double>(v, domain.input_dim()));
      }
    }
  }
  return grid;
}

Eigen::VectorXd predict(const FeatureLayer& layer, const Eigen::VectorXd& feature_weights,
                        const PointSet& grid) {
  if (feature_weights.size() != layer.neurons())
    throw Error("predict: weight count does not match the layer");
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd out(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) out[i] = layer.row(grid[i]).dot(feature_weights);
  return out;
}

SolveOutcome solve_with_layer(const PdeProblem& problem, const FeatureLayer& layer,
                              const CollocationSet& colloc, const LabelledData* data,
                              const SolveSettings& settings) {
  SolveOutcome out;

  auto t0 = std::chrono::steady_clock::now();
  LinearSystem sys = staged("assemble", [&] {
    LinearSystem s = assemble_system(problem, layer, colloc, settings.mode);
    if (problem.is_inverse()) {
      if (!data) throw Error("inverse problem needs labelled data");
      s = augment_inverse(std::move(s), problem, layer, *data);
    }
    return s;
  });
  out.assemble_seconds = seconds_since(t0);
  out.rows = sys.row_count();
  out.columns = sys.column_count();
  if (problem.is_inverse() && data && data->points.empty())
    out.warnings.push_back("no labelled data: inverse parameter may be unidentifiable");

  t0 = std::chrono::steady_clock::now();
  out.solution = staged("solve", [&] { return solve_least_squares(sys.H, sys.Y, settings.lstsq); });
  out.solve_seconds = seconds_since(t0);

  staged("evaluate", [&] {
    out.feature_weights = out.solution.beta.head(layer.neurons());
    if (sys.has_inverse_parameter()) out.alpha = out.solution.beta[layer.neurons()];
    out.mse = training_mse(sys.H, out.solution.beta, sys.Y);
    out.beta_spread = beta_spread(out.feature_weights);
    out.grid = make_evaluation_grid(problem.domain, settings.grid);
    out.predicted = predict(layer, out.feature_weights, out.grid);
    if (problem.has_exact()) {
      out.exact.resize(out.predicted.size());
      for (std::size_t i = 0; i < out.grid.size(); ++i) out.exact[i] = problem.exact(out.grid[i]);
      out.l2 = relative_l2(out.exact, out.predicted);
      out.max_abs_error = max_abs_error(out.exact, out.predicted);
    } else {
      out.l2 = std::nan("");
      out.max_abs_error = std::nan("");
    }
    return 0;
  });
  return out;
}

}  // namespace gffpielm
