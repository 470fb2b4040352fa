#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gffpielm/benchmarks.hpp"
#include "gffpielm/diagnostics.hpp"
#include "gffpielm/pipeline.hpp"

namespace gffpielm {

enum class Method { Gff, Vanilla, Both };
enum class Scale { Default, Desk, Paper };

Method parse_method(const std::string& text);
Scale parse_scale(const std::string& text);
GridSpec parse_grid(const std::string& text);
const char* to_string(Method m);
const char* to_string(Scale s);

/// User-facing run settings. Unset optionals fall back to the scale preset,
/// then to the case registry.
struct RunConfig {
  std::string case_name = "poisson1d_demo";
  Method method = Method::Gff;
  Scale scale = Scale::Default;
  std::optional<int> neurons;
  std::optional<int> interior;
  std::optional<int> per_boundary;
  std::optional<int> per_initial;
  std::optional<double> delta_min;
  std::optional<double> delta_max;
  std::optional<double> L;
  std::optional<double> rcond;
  double ridge = 0.0;
  std::uint64_t seed = 1;
  GridSpec grid;
  std::filesystem::path output_dir;
  bool tune = false;
  int max_iterations = 2;
  RefinementSettings refinement;
};

/// Every value that affects a run, fully resolved.
struct EffectiveConfig {
  std::string case_name;
  Scale scale = Scale::Default;
  int neurons = 0;
  SamplingPlan plan;
  double delta_min = 0.0;
  double delta_max = 0.0;
  double L = 0.0;
  std::optional<double> rcond;  ///< unset = per-system default
  double ridge = 0.0;
  std::uint64_t seed = 0;
  GridSpec grid;
  bool tune = false;
  int max_iterations = 0;
  RefinementSettings refinement;
};

EffectiveConfig resolve_config(const RunConfig& config, const CaseSpec& spec);

/// Neuron count and collocation plan of a scale preset (Default = registry values).
void apply_scale(Scale scale, const CaseSpec& spec, int& neurons, SamplingPlan& plan);

/// One (case, method) result row.
struct SolveReport {
  std::string case_name;
  Method method = Method::Gff;
  std::string initialization;
  EffectiveConfig config;
  Eigen::Index rows = 0;
  Eigen::Index columns = 0;
  int effective_rank = 0;
  double rcond_used = 0.0;
  double mse = 0.0;
  double l2 = 0.0;
  double max_abs_error = 0.0;
  std::optional<double> alpha;
  double beta_spread = 0.0;
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
  std::vector<IterationRecord> trail;
  std::vector<std::string> warnings;
};

/// Results of run_case plus the artefacts needed for the CSV outputs.
struct CaseRun {
  std::vector<SolveReport> reports;
  /// Parallel to `reports`.
  std::vector<SolveOutcome> outcomes;
  /// Spectrum of the GFF run, when one was made.
  std::optional<BetaSpectrum> spectrum;
};

/// sample -> layer -> assemble -> (augment) -> solve -> evaluate for each
/// requested method. When config.output_dir is set, writes report.csv,
/// prediction_grid.csv (per-method suffix for Method::Both),
/// beta_vs_delta.csv (GFF) and tuning_trail.csv (tuned runs). Files written
/// before a failure are removed.
CaseRun run_case(const RunConfig& config);

struct Table1Row {
  std::string case_name;
  Method method = Method::Gff;
  std::string initialization;
  double mse = 0.0;
  double l2 = 0.0;
  double seconds = 0.0;
  std::optional<double> alpha;
  std::string reported_mse;
  std::string reported_l2;
  std::string error;
};

/// Both methods on every registry case at registry hyperparameters.
/// Failures are recorded per row. Writes table1_summary.csv when output_dir is non-empty.
std::vector<Table1Row> run_table1(Scale scale, const std::filesystem::path& output_dir,
                                  std::uint64_t seed = 1, std::optional<double> rcond = {});

void write_report_csv(std::ostream& os, const std::vector<SolveReport>& reports);
void write_prediction_csv(std::ostream& os, const Domain& domain, const SolveOutcome& outcome);
void write_trail_csv(std::ostream& os, const std::vector<IterationRecord>& trail);
void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows);

}  // namespace gffpielm
