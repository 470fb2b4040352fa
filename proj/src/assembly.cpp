#include "gffpielm/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "gffpielm/error.hpp"

namespace gffpielm {

namespace kernels {

void operator_block_serial(Eigen::Ref<Eigen::MatrixXd> H, Eigen::Index row0,
                           const LinearOperator& op, const FeatureLayer& layer,
                           const PointSet& points) {
  const int M = layer.neurons();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (int m = 0; m < M; ++m)
      H(row0 + static_cast<Eigen::Index>(i), m) = apply_operator_to_feature(op, layer, m, points[i]);
}

void operator_block_parallel(Eigen::Ref<Eigen::MatrixXd> H, Eigen::Index row0,
                             const LinearOperator& op, const FeatureLayer& layer,
                             const PointSet& points) {
  const int M = layer.neurons();
  const int dim = layer.input_dim();
  const auto& terms = op.terms();
  const int K = static_cast<int>(terms.size());
  const Eigen::Index N = static_cast<Eigen::Index>(points.size());
  if (N == 0) return;

  int max_order = 0;
  std::vector<int> term_order(K);
  for (int k = 0; k < K; ++k) {
    term_order[k] = terms[k].total_order();
    max_order = std::max(max_order, term_order[k]);
  }
  if (layer.activation() == Activation::VanillaTanh && max_order > 2)
    throw UnsupportedOrderError("tanh activation: derivative order " + std::to_string(max_order) +
                                " not supported (max 2)");

  // Coefficients depend on the point only.
  Eigen::MatrixXd coeff(K, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (int k = 0; k < K; ++k) coeff(k, i) = terms[k].coefficient(points[i]);

  const double* pts = points.coords().data();
  const bool cosine = layer.activation() == Activation::GffCosine;

#pragma omp parallel for schedule(static)
  for (int m = 0; m < M; ++m) {
    const auto w = layer.weights(m);
    const double delta = layer.frequency(m);
    const double b = layer.bias(m);
    double factor[8];
    for (int k = 0; k < K && k < 8; ++k) {
      double f = 1.0;
      for (int a = 0; a < dim; ++a) {
        const double scale = delta * w[a];
        for (int r = 0; r < terms[k].orders[a]; ++r) f *= scale;
      }
      factor[k] = f;
    }
    for (Eigen::Index i = 0; i < N; ++i) {
      const double* v = pts + i * dim;
      double dot = 0.0;
      for (int a = 0; a < dim; ++a) dot += w[a] * v[a];
      const double z = delta * dot + b;
      double d[4];
      if (cosine) {
        const double c = std::cos(z), s = std::sin(z);
        d[0] = c;
        d[1] = -s;
        d[2] = -c;
        d[3] = s;
      } else {
        const double t = std::tanh(z);
        d[0] = t;
        d[1] = 1.0 - t * t;
        d[2] = -2.0 * t * (1.0 - t * t);
        d[3] = 0.0;
      }
      double sum = 0.0;
      for (int k = 0; k < K; ++k) sum += coeff(k, i) * (factor[k] * d[term_order[k] % 4]);
      H(row0 + i, m) = sum;
    }
  }
}

}  // namespace kernels

namespace {

void fill_block(Eigen::MatrixXd& H, Eigen::Index row0, const LinearOperator& op,
                const FeatureLayer& layer, const PointSet& points, AssemblyMode mode) {
  // The fast kernel keeps per-term factors on the stack.
  if (mode == AssemblyMode::Serial || op.terms().size() > 8)
    kernels::operator_block_serial(H, row0, op, layer, points);
  else
    kernels::operator_block_parallel(H, row0, op, layer, points);
}

}  // namespace

LinearSystem assemble_system(const PdeProblem& problem, const FeatureLayer& layer,
                             const CollocationSet& colloc, AssemblyMode mode) {
  problem.validate();
  const int dim = problem.domain.input_dim();
  if (layer.input_dim() != dim)
    throw Error("assemble: layer input dimension " + std::to_string(layer.input_dim()) +
                " does not match problem dimension " + std::to_string(dim));
  if (colloc.per_condition.size() != problem.conditions.size())
    throw Error("assemble: collocation set does not match the problem's conditions");
  if (colloc.interior.size() > 0 && colloc.interior.dim() != dim)
    throw Error("assemble: interior point dimension mismatch");

  const Eigen::Index rows = static_cast<Eigen::Index>(colloc.total_points());
  LinearSystem sys;
  sys.H.resize(rows, layer.neurons());
  sys.Y.resize(rows);
  sys.rows.reserve(rows);
  sys.row_points = PointSet(dim);
  sys.row_points.reserve(rows);
  sys.columns.resize(layer.neurons());
  for (int m = 0; m < layer.neurons(); ++m) sys.columns[m].neuron = m;

  Eigen::Index r = 0;
  fill_block(sys.H, r, problem.op, layer, colloc.interior, mode);
  for (std::size_t i = 0; i < colloc.interior.size(); ++i, ++r) {
    sys.Y[r] = problem.source(colloc.interior[i]);
    sys.rows.push_back({RowKind::Pde, -1});
    sys.row_points.push_back(colloc.interior[i]);
  }
  for (std::size_t c = 0; c < problem.conditions.size(); ++c) {
    const auto& spec = problem.conditions[c];
    const PointSet& pts = colloc.per_condition[c];
    if (pts.size() > 0 && pts.dim() != dim)
      throw Error("assemble: condition '" + spec.label + "' point dimension mismatch");
    fill_block(sys.H, r, spec.op, layer, pts, mode);
    for (std::size_t i = 0; i < pts.size(); ++i, ++r) {
      sys.Y[r] = spec.target(pts[i]);
      sys.rows.push_back({RowKind::Condition, static_cast<int>(c)});
      sys.row_points.push_back(pts[i]);
    }
  }

  if (!sys.Y.allFinite()) throw Error("assemble: non-finite source or target value");
  if (!sys.H.allFinite()) throw Error("assemble: non-finite matrix entry");
  return sys;
}

LinearSystem augment_inverse(LinearSystem system, const PdeProblem& problem,
                             const FeatureLayer& layer, const LabelledData& data) {
  if (!problem.is_inverse()) throw Error("augment_inverse: problem has no inverse profile");
  if (system.has_inverse_parameter()) throw Error("augment_inverse: system already augmented");
  if (data.points.size() != data.values.size())
    throw Error("augment_inverse: labelled points and values differ in count");
  if (data.points.size() > 0 && data.points.dim() != layer.input_dim())
    throw Error("augment_inverse: labelled point dimension mismatch");
  if (system.column_count() != layer.neurons())
    throw Error("augment_inverse: system does not match the layer");

  const Eigen::Index old_rows = system.row_count();
  const Eigen::Index cols = system.column_count();
  const Eigen::Index n_data = static_cast<Eigen::Index>(data.points.size());

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(old_rows + n_data, cols + 1);
  H.topLeftCorner(old_rows, cols) = system.H;
  Eigen::VectorXd Y(old_rows + n_data);
  Y.head(old_rows) = system.Y;
  system.H = std::move(H);
  system.Y = std::move(Y);
  system.columns.push_back({-1});

  // alpha * g moves to the left-hand side; condition rows do not depend on alpha.
  for (Eigen::Index r = 0; r < old_rows; ++r) {
    if (system.rows[r].kind != RowKind::Pde) continue;
    const double g = problem.inverse_profile(system.row_points[r]);
    if (!std::isfinite(g)) throw Error("augment_inverse: non-finite inverse profile value");
    system.H(r, cols) = -g;
  }

  for (Eigen::Index k = 0; k < n_data; ++k) {
    const Point v = data.points[k];
    system.H.row(old_rows + k).head(cols) = layer.row(v).transpose();
    system.Y[old_rows + k] = data.values[k];
    system.rows.push_back({RowKind::Data, -1});
    system.row_points.push_back(v);
  }
  return system;
}

void write_system_csv(std::ostream& os, const LinearSystem& system) {
  os.precision(17);
  for (Eigen::Index c = 0; c < system.column_count(); ++c) {
    if (system.columns[c].is_inverse_parameter())
      os << "alpha,";
    else
      os << "h" << system.columns[c].neuron << ",";
  }
  os << "Y\n";
  for (Eigen::Index r = 0; r < system.row_count(); ++r) {
    for (Eigen::Index c = 0; c < system.column_count(); ++c) os << system.H(r, c) << ",";
    os << system.Y[r] << "\n";
  }
}

}  // namespace gffpielm
