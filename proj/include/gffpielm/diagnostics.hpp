#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gffpielm/feature_layer.hpp"
#include "gffpielm/pde_model.hpp"
#include "gffpielm/pipeline.hpp"
#include "gffpielm/sampling.hpp"

namespace gffpielm {

/// (1/N) * |H beta - Y|^2 with N the row count.
double training_mse(const Eigen::MatrixXd& H, const Eigen::VectorXd& beta, const Eigen::VectorXd& Y);

/// |exact - predicted| / |exact| (Euclidean). Throws when |exact| == 0.
double relative_l2(const Eigen::VectorXd& exact, const Eigen::VectorXd& predicted);

double max_abs_error(const Eigen::VectorXd& exact, const Eigen::VectorXd& predicted);

/// max |beta| over the median of the nonzero |beta|; large values flag a
/// frequency interval that is too narrow. 0 when beta is all zero.
double beta_spread(const Eigen::VectorXd& beta);

/// Output-weight magnitudes against frequency coefficient, plus equal-width bins.
struct BetaSpectrum {
  std::vector<double> delta;
  std::vector<double> abs_beta;
  std::vector<double> bin_edges;  ///< bins + 1 edges spanning [delta_1, delta_M]
  std::vector<double> bin_max;    ///< per-bin max |beta|
  std::vector<int> bin_count;     ///< neurons per bin
};

/// `beta` holds one weight per neuron (no inverse-parameter entry).
BetaSpectrum beta_spectrum(const FeatureLayer& layer, const Eigen::VectorXd& beta, int bins);

void write_spectrum_csv(std::ostream& os, const BetaSpectrum& spectrum);

enum class SuggestionFlag { Refined, Unchanged, Degenerate };
const char* to_string(SuggestionFlag f);

struct IntervalSuggestion {
  double delta_min = 0.0;
  double delta_max = 0.0;
  double active_fraction = 0.0;
  SuggestionFlag flag = SuggestionFlag::Unchanged;
};

/// Bin-max thresholding of the spectrum.
///
/// A bin is active when its max |beta| reaches threshold_ratio * max |beta|.
/// The new upper bound is margin * (upper edge of the last active bin), the new
/// lower bound the lower edge of the first active bin; both are clamped to the
/// original interval. Unchanged when every populated bin is active or the
/// clamped interval equals the original; Degenerate when beta is all zero.
IntervalSuggestion suggest_frequency_interval(const BetaSpectrum& spectrum, double threshold_ratio,
                                              double margin);

struct RefinementSettings {
  int bins = 50;
  double threshold_ratio = 1e-3;
  double margin = 1.1;
};

struct IterationRecord {
  double delta_min = 0.0;
  double delta_max = 0.0;
  double mse = 0.0;
  double l2 = 0.0;
  double beta_spread = 0.0;
  IntervalSuggestion suggestion;
};

struct RefinementResult {
  std::vector<IterationRecord> trail;
  SolveOutcome final;
  std::optional<FeatureLayer> final_layer;
};

/// Solve with [delta_min, delta_max], suggest a refined interval from the
/// output-weight spectrum, rebuild the layer and re-solve until the
/// suggestion is Unchanged/Degenerate or max_iterations solves were made.
/// Collocation points and the layer seed are held fixed across iterations.
RefinementResult refine_and_resolve(const PdeProblem& problem, int neurons, double delta_min,
                                    double delta_max, std::uint64_t layer_seed,
                                    const CollocationSet& colloc, int max_iterations,
                                    const SolveSettings& settings,
                                    const RefinementSettings& refinement = {},
                                    const LabelledData* data = nullptr);

struct SweepRow {
  double L = 0.0;
  double mse = 0.0;
  double l2 = 0.0;
  std::string error;  ///< non-empty when this L failed
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Index of the smallest relative L2 among successful rows (-1 if none).
  int best = -1;
};

/// Trial-and-error sweep of the tanh-layer half-width L. Layer seeds are
/// derived from `seed` and the position in `L_values`.
SweepResult sweep_vanilla_L(const PdeProblem& problem, const CollocationSet& colloc, int neurons,
                            const std::vector<double>& L_values, std::uint64_t seed,
                            const SolveSettings& settings, const LabelledData* data = nullptr);

void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

}  // namespace gffpielm
