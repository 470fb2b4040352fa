#include "gffpielm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gffpielm/error.hpp"
#include "gffpielm/rng.hpp"

namespace gffpielm {

double training_mse(const Eigen::MatrixXd& H, const Eigen::VectorXd& beta,
                    const Eigen::VectorXd& Y) {
  if (H.cols() != beta.size() || H.rows() != Y.size())
    throw Error("training_mse: dimension mismatch");
  if (H.rows() == 0) throw Error("training_mse: empty system");
  return (H * beta - Y).squaredNorm() / static_cast<double>(H.rows());
}

double relative_l2(const Eigen::VectorXd& exact, const Eigen::VectorXd& predicted) {
  if (exact.size() != predicted.size()) throw Error("relative_l2: length mismatch");
  const double denom = exact.norm();
  if (!(denom > 0.0)) throw Error("relative_l2: exact solution has zero norm");
  return (exact - predicted).norm() / denom;
}

double max_abs_error(const Eigen::VectorXd& exact, const Eigen::VectorXd& predicted) {
  if (exact.size() != predicted.size()) throw Error("max_abs_error: length mismatch");
  if (exact.size() == 0) return 0.0;
  return (exact - predicted).cwiseAbs().maxCoeff();
}

double beta_spread(const Eigen::VectorXd& beta) {
  std::vector<double> mags;
  for (double b : beta)
    if (b != 0.0) mags.push_back(std::abs(b));
  if (mags.empty()) return 0.0;
  const auto mid = mags.begin() + mags.size() / 2;
  std::nth_element(mags.begin(), mid, mags.end());
  const double median = *mid;
  return *std::max_element(mags.begin(), mags.end()) / median;
}

BetaSpectrum beta_spectrum(const FeatureLayer& layer, const Eigen::VectorXd& beta, int bins) {
  if (layer.activation() != Activation::GffCosine)
    throw Error("beta_spectrum: requires a cosine (frequency-coefficient) layer");
  if (beta.size() != layer.neurons()) throw Error("beta_spectrum: weight count mismatch");
  if (bins < 1) throw Error("beta_spectrum: need at least one bin");

  BetaSpectrum s;
  const auto freqs = layer.frequencies();
  s.delta.assign(freqs.begin(), freqs.end());
  s.abs_beta.resize(beta.size());
  for (Eigen::Index m = 0; m < beta.size(); ++m) s.abs_beta[m] = std::abs(beta[m]);

  const double lo = freqs.front(), hi = freqs.back();
  const double width = (hi - lo) / bins;
  s.bin_edges.resize(bins + 1);
  for (int k = 0; k <= bins; ++k) s.bin_edges[k] = lo + k * width;
  s.bin_edges.back() = hi;
  s.bin_max.assign(bins, 0.0);
  s.bin_count.assign(bins, 0);
  for (std::size_t m = 0; m < s.delta.size(); ++m) {
    int k = width > 0.0 ? static_cast<int>((s.delta[m] - lo) / width) : 0;
    k = std::clamp(k, 0, bins - 1);
    // NaN must survive so the suggestion can report a degenerate spectrum.
    if (std::isnan(s.abs_beta[m]) || std::isnan(s.bin_max[k]))
      s.bin_max[k] = std::nan("");
    else
      s.bin_max[k] = std::max(s.bin_max[k], s.abs_beta[m]);
    ++s.bin_count[k];
  }
  return s;
}

void write_spectrum_csv(std::ostream& os, const BetaSpectrum& spectrum) {
  os.precision(17);
  os << "delta,abs_beta\n";
  for (std::size_t m = 0; m < spectrum.delta.size(); ++m)
    os << spectrum.delta[m] << "," << spectrum.abs_beta[m] << "\n";
}

const char* to_string(SuggestionFlag f) {
  switch (f) {
    case SuggestionFlag::Refined:
      return "REFINED";
    case SuggestionFlag::Unchanged:
      return "UNCHANGED";
    case SuggestionFlag::Degenerate:
      return "DEGENERATE";
  }
  return "?";
}

IntervalSuggestion suggest_frequency_interval(const BetaSpectrum& spectrum, double threshold_ratio,
                                              double margin) {
  if (spectrum.bin_max.empty() || spectrum.bin_edges.size() != spectrum.bin_max.size() + 1)
    throw Error("suggest_frequency_interval: malformed spectrum");
  if (!(threshold_ratio > 0.0 && threshold_ratio < 1.0))
    throw Error("suggest_frequency_interval: threshold_ratio must lie in (0, 1)");
  if (!(margin >= 1.0)) throw Error("suggest_frequency_interval: margin must be >= 1");

  const double lo = spectrum.bin_edges.front(), hi = spectrum.bin_edges.back();
  IntervalSuggestion out{lo, hi, 0.0, SuggestionFlag::Unchanged};

  double global = 0.0;
  for (double b : spectrum.bin_max) {
    if (!std::isfinite(b)) {
      out.flag = SuggestionFlag::Degenerate;
      return out;
    }
    global = std::max(global, b);
  }
  if (!(global > 0.0)) {
    out.flag = SuggestionFlag::Degenerate;
    return out;
  }

  const double tau = threshold_ratio * global;
  const int bins = static_cast<int>(spectrum.bin_max.size());
  int first = -1, last = -1, active = 0, populated = 0;
  for (int k = 0; k < bins; ++k) {
    const bool has_neurons = spectrum.bin_count.empty() || spectrum.bin_count[k] > 0;
    if (!has_neurons) continue;
    ++populated;
    if (spectrum.bin_max[k] >= tau) {
      ++active;
      if (first < 0) first = k;
      last = k;
    }
  }
  out.active_fraction = populated > 0 ? static_cast<double>(active) / populated : 0.0;
  if (active == populated) return out;

  out.delta_min = std::max(spectrum.bin_edges[first], lo);
  out.delta_max = std::min(margin * spectrum.bin_edges[last + 1], hi);
  if (out.delta_max < out.delta_min) out.delta_max = out.delta_min;
  out.flag = (out.delta_min == lo && out.delta_max == hi) ? SuggestionFlag::Unchanged
                                                         : SuggestionFlag::Refined;
  return out;
}

RefinementResult refine_and_resolve(const PdeProblem& problem, int neurons, double delta_min,
                                    double delta_max, std::uint64_t layer_seed,
                                    const CollocationSet& colloc, int max_iterations,
                                    const SolveSettings& settings,
                                    const RefinementSettings& refinement,
                                    const LabelledData* data) {
  if (max_iterations < 1) throw Error("refine_and_resolve: max_iterations must be >= 1");
  RefinementResult result;
  double lo = delta_min, hi = delta_max;
  for (int it = 0; it < max_iterations; ++it) {
    FeatureLayer layer =
        FeatureLayer::gff(neurons, problem.domain.input_dim(), lo, hi, layer_seed);
    SolveOutcome outcome = solve_with_layer(problem, layer, colloc, data, settings);
    const BetaSpectrum spectrum = beta_spectrum(layer, outcome.feature_weights, refinement.bins);
    IterationRecord rec;
    rec.delta_min = lo;
    rec.delta_max = hi;
    rec.mse = outcome.mse;
    rec.l2 = outcome.l2;
    rec.beta_spread = outcome.beta_spread;
    rec.suggestion =
        suggest_frequency_interval(spectrum, refinement.threshold_ratio, refinement.margin);
    result.trail.push_back(rec);
    result.final = std::move(outcome);
    result.final_layer = std::move(layer);
    if (rec.suggestion.flag != SuggestionFlag::Refined) break;
    lo = rec.suggestion.delta_min;
    hi = rec.suggestion.delta_max;
  }
  return result;
}

SweepResult sweep_vanilla_L(const PdeProblem& problem, const CollocationSet& colloc, int neurons,
                            const std::vector<double>& L_values, std::uint64_t seed,
                            const SolveSettings& settings, const LabelledData* data) {
  if (L_values.empty()) throw Error("sweep_vanilla_L: empty L list");
  SweepResult sweep;
  for (std::size_t k = 0; k < L_values.size(); ++k) {
    SweepRow row;
    row.L = L_values[k];
    try {
      const FeatureLayer layer = FeatureLayer::vanilla(neurons, problem.domain.input_dim(),
                                                       row.L, derive_seed(seed, k));
      const SolveOutcome outcome = solve_with_layer(problem, layer, colloc, data, settings);
      row.mse = outcome.mse;
      row.l2 = outcome.l2;
      if (!std::isfinite(row.l2)) row.error = "non-finite relative L2";
    } catch (const std::exception& e) {
      row.error = e.what();
      row.mse = row.l2 = std::nan("");
    }
    sweep.rows.push_back(row);
  }
  for (std::size_t k = 0; k < sweep.rows.size(); ++k) {
    if (!sweep.rows[k].error.empty()) continue;
    if (sweep.best < 0 || sweep.rows[k].l2 < sweep.rows[sweep.best].l2)
      sweep.best = static_cast<int>(k);
  }
  return sweep;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os.precision(17);
  os << "L,mse,l2\n";
  for (const auto& r : sweep.rows) os << r.L << "," << r.mse << "," << r.l2 << "\n";
}

}  // namespace gffpielm
