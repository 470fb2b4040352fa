#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gffpielm/feature_layer.hpp"
#include "gffpielm/points.hpp"

namespace gffpielm {

/// One term coefficient(v) * d^orders of a linear differential operator.
struct OperatorTerm {
  double constant = 1.0;
  /// Optional variable coefficient; multiplies `constant` when set.
  ScalarField variable;
  std::vector<int> orders;

  int total_order() const;
  double coefficient(Point v) const { return variable ? constant * variable(v) : constant; }
};

/// Sum of operator terms. Every term's multi-index has the same length.
class LinearOperator {
 public:
  LinearOperator() = default;
  explicit LinearOperator(std::vector<OperatorTerm> terms);

  static LinearOperator identity(int input_dim);
  /// coefficient * d/dv_axis^order
  static LinearOperator partial(int input_dim, int axis, int order, double coefficient = 1.0);

  /// Appends a constant-coefficient term.
  LinearOperator& add(double coefficient, std::vector<int> orders);

  const std::vector<OperatorTerm>& terms() const noexcept { return terms_; }
  int input_dim() const noexcept { return terms_.empty() ? 0 : static_cast<int>(terms_[0].orders.size()); }
  int max_order() const;

 private:
  std::vector<OperatorTerm> terms_;
};

/// Sum over terms of coefficient(v) * layer.derivative(m, v, orders).
double apply_operator_to_feature(const LinearOperator& op, const FeatureLayer& layer, int m,
                                 Point v);

/// Central-difference application of op to u (second-order accurate).
/// Test oracle for analytic sources and targets.
double apply_operator_to_function(const LinearOperator& op, const ScalarField& u, Point v,
                                  double fd_step);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// A piece of the spatial boundary parametrized by normalized arc length s in [0, 1].
struct BoundarySegment {
  std::string name;
  /// Writes the spatial point at parameter s.
  std::function<void(double s, std::span<double> out)> at;
  /// Distance from a spatial point to this segment.
  std::function<double(Point spatial)> distance;
  /// True when the segment is a single spatial point (1D boundaries).
  bool zero_measure = false;
};

/// Mesh-free problem domain: a spatial region optionally crossed with a time interval.
///
/// Spatial shapes:
///  - box: per-coordinate intervals (1 or 2 spatial dims)
///  - polar star: { c + r(cos t, sin t) : r <= R(t) } for positive periodic R
///  - pacman: disk of radius R minus the open angular sector (theta_lo, theta_hi)
class Domain {
 public:
  enum class Shape { Box, PolarStar, Pacman };

  /// Empty placeholder; use the named constructors.
  Domain() = default;

  static Domain box(std::vector<Interval> spatial, std::optional<Interval> time = std::nullopt);
  /// radius_bound must be >= max R(theta); it sizes the rejection-sampling box.
  static Domain polar_star(std::array<double, 2> center, std::function<double(double)> radius,
                           double radius_bound, std::optional<Interval> time = std::nullopt);
  static Domain pacman(std::array<double, 2> center, double radius, double sector_lo,
                       double sector_hi, std::optional<Interval> time = std::nullopt);

  Shape shape() const noexcept { return shape_; }
  int spatial_dim() const noexcept { return static_cast<int>(bounds_.size()); }
  int input_dim() const noexcept { return spatial_dim() + (time_ ? 1 : 0); }
  bool has_time() const noexcept { return time_.has_value(); }
  const Interval& time() const { return *time_; }

  /// Spatial bounding box, one interval per spatial coordinate.
  const std::vector<Interval>& bounds() const noexcept { return bounds_; }
  /// Closed-domain membership of a full input point (space x time).
  bool contains(Point v) const;
  /// Closed-domain membership of a spatial point.
  bool contains_spatial(Point x) const;
  /// Spatial area (length in 1D) of the region.
  double spatial_measure() const;

  const std::vector<BoundarySegment>& boundary() const noexcept { return segments_; }

 private:
  Shape shape_ = Shape::Box;
  std::vector<Interval> bounds_;
  std::optional<Interval> time_;
  std::array<double, 2> center_{};
  std::function<double(double)> radius_fn_;
  double radius_ = 0.0;
  double sector_lo_ = 0.0;
  double sector_hi_ = 0.0;
  double star_area_ = 0.0;
  std::vector<BoundarySegment> segments_;
};

inline bool domain_contains(const Domain& domain, Point v) { return domain.contains(v); }

/// Where a condition's collocation points live.
struct Region {
  enum class Kind { Boundary, Initial };
  Kind kind = Kind::Boundary;
  /// Index into Domain::boundary() when kind == Boundary.
  int segment = 0;

  static Region boundary(int segment) { return {Kind::Boundary, segment}; }
  static Region initial() { return {Kind::Initial, 0}; }
};

/// Boundary or initial condition op[u] = target on a region.
struct ConditionSpec {
  std::string label;
  LinearOperator op;
  Region region;
  ScalarField target;
};

/// Linear PDE  op[u] = source  on a domain, with conditions.
///
/// Inverse problems set inverse_profile g: the true source is
/// source + alpha * g with one unknown scalar alpha.
struct PdeProblem {
  std::string name;
  Domain domain;
  LinearOperator op;
  ScalarField source;
  std::vector<ConditionSpec> conditions;
  ScalarField exact;
  ScalarField inverse_profile;

  bool is_inverse() const { return static_cast<bool>(inverse_profile); }
  bool has_exact() const { return static_cast<bool>(exact); }
  /// Throws when operators, conditions and domain disagree on dimensions or regions.
  void validate() const;
};

}  // namespace gffpielm
