#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gffpielm/assembly.hpp"
#include "gffpielm/pde_model.hpp"
#include "gffpielm/sampling.hpp"

namespace gffpielm {

/// Published result row, stored verbatim as text.
struct ReportedRow {
  std::string initialization;
  std::string mse;
  std::string l2;
};

/// A registry benchmark: manufactured-solution problem plus published defaults.
struct CaseSpec {
  std::string name;
  std::string title;
  PdeProblem problem;
  double delta_min = 1.0;
  double delta_max = 1.0;
  double vanilla_L = 10.0;
  std::optional<ReportedRow> reported_gff;
  std::optional<ReportedRow> reported_vanilla;
  /// Full-scale hidden-layer width and collocation plan.
  int neurons = 5000;
  SamplingPlan plan;
  std::string notes;
  /// Inverse cases: true parameter value and labelled-data settings.
  std::optional<double> true_alpha;
  int labelled_points = 0;
  std::uint64_t labelled_seed = 0;
  /// False for registry extras that are not one of the published problems.
  bool published = true;
};

/// The eleven published problems, in presentation order.
std::vector<std::string> list_cases();
/// Registry extras (not published problems).
std::vector<std::string> experimental_cases();

/// Throws gffpielm::Error for unknown names.
CaseSpec get_case(std::string_view name);

Eigen::VectorXd evaluate_exact(const CaseSpec& spec, const PointSet& grid);

/// Noiseless labelled interior samples for inverse cases (empty otherwise).
LabelledData labelled_data(const CaseSpec& spec);

/// Key/value text manifest describing every registry case.
std::string case_manifest();

/// Number of retained terms in the series-solution wave case.
inline constexpr int kSeriesTerms = 20;

}  // namespace gffpielm
