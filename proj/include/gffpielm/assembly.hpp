#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "gffpielm/feature_layer.hpp"
#include "gffpielm/pde_model.hpp"
#include "gffpielm/points.hpp"
#include "gffpielm/sampling.hpp"

namespace gffpielm {

enum class RowKind { Pde, Condition, Data };

struct RowTag {
  RowKind kind = RowKind::Pde;
  /// Condition index for RowKind::Condition, -1 otherwise.
  int condition = -1;
  friend bool operator==(const RowTag&, const RowTag&) = default;
};

struct ColumnTag {
  /// Neuron index, or -1 for the inverse-parameter column.
  int neuron = 0;
  bool is_inverse_parameter() const { return neuron < 0; }
  friend bool operator==(const ColumnTag&, const ColumnTag&) = default;
};

/// H * beta = Y with row/column provenance.
struct LinearSystem {
  Eigen::MatrixXd H;
  Eigen::VectorXd Y;
  std::vector<RowTag> rows;
  std::vector<ColumnTag> columns;
  /// Input point of every row, in row order.
  PointSet row_points;

  Eigen::Index row_count() const { return H.rows(); }
  Eigen::Index column_count() const { return H.cols(); }
  bool has_inverse_parameter() const {
    return !columns.empty() && columns.back().is_inverse_parameter();
  }
};

/// Labelled interior samples of the solution for inverse problems.
struct LabelledData {
  PointSet points;
  std::vector<double> values;
};

enum class AssemblyMode {
  Parallel,  ///< OpenMP over neuron columns
  Serial,    ///< entry-by-entry reference through apply_operator_to_feature
};

namespace kernels {

/// Fills H.block(row0, 0, points.size(), layer.neurons()) with op applied to every feature.
void operator_block_parallel(Eigen::Ref<Eigen::MatrixXd> H, Eigen::Index row0,
                             const LinearOperator& op, const FeatureLayer& layer,
                             const PointSet& points);
void operator_block_serial(Eigen::Ref<Eigen::MatrixXd> H, Eigen::Index row0,
                           const LinearOperator& op, const FeatureLayer& layer,
                           const PointSet& points);

}  // namespace kernels

/// PDE rows (interior points) followed by one row block per condition.
/// Inverse problems assemble the known part of the source; see augment_inverse.
LinearSystem assemble_system(const PdeProblem& problem, const FeatureLayer& layer,
                             const CollocationSet& colloc,
                             AssemblyMode mode = AssemblyMode::Parallel);

/// Appends the inverse-parameter column (-g on PDE rows, 0 elsewhere) and one
/// data row per labelled point.
LinearSystem augment_inverse(LinearSystem system, const PdeProblem& problem,
                             const FeatureLayer& layer, const LabelledData& data);

/// Debug dump: one CSV row per equation, H entries then Y.
void write_system_csv(std::ostream& os, const LinearSystem& system);

}  // namespace gffpielm
