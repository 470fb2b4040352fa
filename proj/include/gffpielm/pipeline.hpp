#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gffpielm/assembly.hpp"
#include "gffpielm/feature_layer.hpp"
#include "gffpielm/lstsq.hpp"
#include "gffpielm/pde_model.hpp"
#include "gffpielm/sampling.hpp"

namespace gffpielm {

/// Evaluation grid resolution; zero fields select the per-domain defaults:
/// 1D static 1000 points, 1D + time 100 x 100, 2D static 100 x 100 masked
/// bounding box, 2D + time 50 x 50 masked at 10 time slices.
struct GridSpec {
  int per_axis = 0;
  int time_slices = 0;
};

/// Uniform grid (endpoints included) restricted to the closed domain.
PointSet make_evaluation_grid(const Domain& domain, const GridSpec& spec = {});

struct SolveSettings {
  LstsqOptions lstsq;
  AssemblyMode mode = AssemblyMode::Parallel;
  GridSpec grid;
};

/// Everything one assemble/solve/evaluate pass produces.
struct SolveOutcome {
  LstsqSolution solution;
  /// Weights of the feature columns only.
  Eigen::VectorXd feature_weights;
  std::optional<double> alpha;
  Eigen::Index rows = 0;
  Eigen::Index columns = 0;
  double mse = 0.0;
  double l2 = 0.0;
  double max_abs_error = 0.0;
  double beta_spread = 0.0;
  PointSet grid;
  Eigen::VectorXd exact;
  Eigen::VectorXd predicted;
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
  std::vector<std::string> warnings;
};

/// Network output sum_m beta_m h_m(v) at every grid point.
Eigen::VectorXd predict(const FeatureLayer& layer, const Eigen::VectorXd& feature_weights,
                        const PointSet& grid);

/// assemble -> (augment) -> solve -> evaluate. Errors carry the stage name.
/// `data` is required for inverse problems.
SolveOutcome solve_with_layer(const PdeProblem& problem, const FeatureLayer& layer,
                              const CollocationSet& colloc, const LabelledData* data,
                              const SolveSettings& settings);

}  // namespace gffpielm
