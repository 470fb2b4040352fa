#include "gffpielm/pde_model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "gffpielm/error.hpp"

namespace gffpielm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Slack for closed-boundary membership of points computed on the boundary.
constexpr double kBoundarySlack = 1e-12;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

// Central-difference stencil applied along `axis`, then recursively to the remaining axes.
double fd_recursive(const ScalarField& u, std::vector<double>& v, std::span<const int> orders,
                    int axis, double h) {
  if (axis == static_cast<int>(orders.size())) return u(v);
  const int order = orders[axis];
  if (order == 0) return fd_recursive(u, v, orders, axis + 1, h);

  const double x0 = v[axis];
  auto at = [&](double offset) {
    v[axis] = x0 + offset;
    const double r = fd_recursive(u, v, orders, axis + 1, h);
    v[axis] = x0;
    return r;
  };
  switch (order) {
    case 1:
      return (at(h) - at(-h)) / (2.0 * h);
    case 2:
      return (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h);
    default:
      throw UnsupportedOrderError("finite-difference oracle supports per-axis order <= 2");
  }
}

}  // namespace

int OperatorTerm::total_order() const {
  int n = 0;
  for (int a : orders) n += a;
  return n;
}

LinearOperator::LinearOperator(std::vector<OperatorTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.orders.size() != terms_.front().orders.size())
      throw Error("linear operator: terms disagree on input dimension");
    for (int a : t.orders)
      if (a < 0) throw Error("linear operator: negative derivative order");
  }
}

LinearOperator LinearOperator::identity(int input_dim) {
  return LinearOperator({OperatorTerm{1.0, {}, std::vector<int>(input_dim, 0)}});
}

LinearOperator LinearOperator::partial(int input_dim, int axis, int order, double coefficient) {
  std::vector<int> orders(input_dim, 0);
  orders.at(axis) = order;
  return LinearOperator({OperatorTerm{coefficient, {}, std::move(orders)}});
}

LinearOperator& LinearOperator::add(double coefficient, std::vector<int> orders) {
  if (!terms_.empty() && orders.size() != terms_.front().orders.size())
    throw Error("linear operator: term dimension mismatch");
  for (int a : orders)
    if (a < 0) throw Error("linear operator: negative derivative order");
  terms_.push_back(OperatorTerm{coefficient, {}, std::move(orders)});
  return *this;
}

int LinearOperator::max_order() const {
  int n = 0;
  for (const auto& t : terms_) n = std::max(n, t.total_order());
  return n;
}

double apply_operator_to_feature(const LinearOperator& op, const FeatureLayer& layer, int m,
                                 Point v) {
  double sum = 0.0;
  for (const auto& term : op.terms())
    sum += term.coefficient(v) * layer.derivative(m, v, term.orders);
  return sum;
}

double apply_operator_to_function(const LinearOperator& op, const ScalarField& u, Point v,
                                  double fd_step) {
  std::vector<double> work(v.begin(), v.end());
  double sum = 0.0;
  for (const auto& term : op.terms()) {
    if (term.orders.size() != v.size()) throw Error("finite-difference oracle: dimension mismatch");
    sum += term.coefficient(v) * fd_recursive(u, work, term.orders, 0, fd_step);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Domain

Domain Domain::box(std::vector<Interval> spatial, std::optional<Interval> time) {
  if (spatial.empty() || spatial.size() > 2) throw Error("box domain: 1 or 2 spatial dims");
  for (const auto& iv : spatial)
    if (!(iv.lo < iv.hi)) throw Error("box domain: empty interval");
  if (time && !(time->lo < time->hi)) throw Error("box domain: empty time interval");

  Domain d;
  d.shape_ = Shape::Box;
  d.bounds_ = spatial;
  d.time_ = time;

  if (spatial.size() == 1) {
    const Interval iv = spatial[0];
    for (const double x : {iv.lo, iv.hi}) {
      d.segments_.push_back(BoundarySegment{
          x == iv.lo ? "x=lo" : "x=hi", [x](double, std::span<double> out) { out[0] = x; },
          [x](Point p) { return std::abs(p[0] - x); }, true});
    }
  } else {
    const Interval ix = spatial[0], iy = spatial[1];
    // Faces in order: bottom (y=lo), right (x=hi), top (y=hi), left (x=lo).
    d.segments_.push_back(BoundarySegment{
        "y=lo",
        [ix, iy](double s, std::span<double> out) {
          out[0] = ix.lo + s * ix.length();
          out[1] = iy.lo;
        },
        [ix, iy](Point p) {
          return std::hypot(std::max({ix.lo - p[0], 0.0, p[0] - ix.hi}), p[1] - iy.lo);
        }});
    d.segments_.push_back(BoundarySegment{
        "x=hi",
        [ix, iy](double s, std::span<double> out) {
          out[0] = ix.hi;
          out[1] = iy.lo + s * iy.length();
        },
        [ix, iy](Point p) {
          return std::hypot(p[0] - ix.hi, std::max({iy.lo - p[1], 0.0, p[1] - iy.hi}));
        }});
    d.segments_.push_back(BoundarySegment{
        "y=hi",
        [ix, iy](double s, std::span<double> out) {
          out[0] = ix.lo + s * ix.length();
          out[1] = iy.hi;
        },
        [ix, iy](Point p) {
          return std::hypot(std::max({ix.lo - p[0], 0.0, p[0] - ix.hi}), p[1] - iy.hi);
        }});
    d.segments_.push_back(BoundarySegment{
        "x=lo",
        [ix, iy](double s, std::span<double> out) {
          out[0] = ix.lo;
          out[1] = iy.lo + s * iy.length();
        },
        [ix, iy](Point p) {
          return std::hypot(p[0] - ix.lo, std::max({iy.lo - p[1], 0.0, p[1] - iy.hi}));
        }});
  }
  return d;
}

Domain Domain::polar_star(std::array<double, 2> center, std::function<double(double)> radius,
                          double radius_bound, std::optional<Interval> time) {
  if (!radius || !(radius_bound > 0.0)) throw Error("polar star domain: invalid radius");
  if (time && !(time->lo < time->hi)) throw Error("polar star domain: empty time interval");

  Domain d;
  d.shape_ = Shape::PolarStar;
  d.center_ = center;
  d.radius_fn_ = radius;
  d.radius_ = radius_bound;
  d.time_ = time;
  d.bounds_ = {{center[0] - radius_bound, center[0] + radius_bound},
               {center[1] - radius_bound, center[1] + radius_bound}};

  // Arc-length table for the boundary curve r = R(theta), plus the enclosed area.
  constexpr int kTable = 8192;
  auto table = std::make_shared<std::vector<double>>(kTable + 1, 0.0);
  const double dtheta = kTwoPi / kTable;
  auto curve = [&](double th) {
    const double r = radius(th);
    if (!(r > 0.0) || r > radius_bound * (1.0 + 1e-12)) throw Error("polar star domain: R(theta) out of (0, bound]");
    return std::array{center[0] + r * std::cos(th), center[1] + r * std::sin(th)};
  };
  auto prev = curve(0.0);
  double area = 0.0;
  for (int k = 1; k <= kTable; ++k) {
    const auto cur = curve(k * dtheta);
    (*table)[k] = (*table)[k - 1] + std::hypot(cur[0] - prev[0], cur[1] - prev[1]);
    const double rm = radius((k - 0.5) * dtheta);
    area += 0.5 * rm * rm * dtheta;
    prev = cur;
  }
  d.star_area_ = area;

  auto at = [center, radius, table, dtheta](double s, std::span<double> out) {
    const double total = table->back();
    const double target = std::clamp(s, 0.0, 1.0) * total;
    auto it = std::lower_bound(table->begin(), table->end(), target);
    int k = static_cast<int>(std::distance(table->begin(), it));
    k = std::clamp(k, 1, static_cast<int>(table->size()) - 1);
    const double seg = (*table)[k] - (*table)[k - 1];
    const double frac = seg > 0.0 ? (target - (*table)[k - 1]) / seg : 0.0;
    const double th = (k - 1 + frac) * dtheta;
    const double r = radius(th);
    out[0] = center[0] + r * std::cos(th);
    out[1] = center[1] + r * std::sin(th);
  };
  // Radial distance to the curve; exact (zero) for points generated by `at`.
  auto distance = [center, radius](Point p) {
    const double dx = p[0] - center[0], dy = p[1] - center[1];
    return std::abs(std::hypot(dx, dy) - radius(std::atan2(dy, dx)));
  };
  d.segments_.push_back(BoundarySegment{"curve", at, distance});
  return d;
}

Domain Domain::pacman(std::array<double, 2> center, double radius, double sector_lo,
                      double sector_hi, std::optional<Interval> time) {
  if (!(radius > 0.0)) throw Error("pacman domain: radius must be positive");
  if (!(sector_lo < sector_hi) || sector_hi - sector_lo >= kTwoPi)
    throw Error("pacman domain: need sector_lo < sector_hi < sector_lo + 2*pi");
  if (time && !(time->lo < time->hi)) throw Error("pacman domain: empty time interval");

  Domain d;
  d.shape_ = Shape::Pacman;
  d.center_ = center;
  d.radius_ = radius;
  d.sector_lo_ = sector_lo;
  d.sector_hi_ = sector_hi;
  d.time_ = time;
  d.bounds_ = {{center[0] - radius, center[0] + radius}, {center[1] - radius, center[1] + radius}};

  const double arc_from = sector_hi;
  const double arc_span = kTwoPi - (sector_hi - sector_lo);
  d.segments_.push_back(BoundarySegment{
      "arc",
      [=](double s, std::span<double> out) {
        const double th = arc_from + s * arc_span;
        out[0] = center[0] + radius * std::cos(th);
        out[1] = center[1] + radius * std::sin(th);
      },
      [=](Point p) {
        const double dx = p[0] - center[0], dy = p[1] - center[1];
        const double rel = wrap_angle(std::atan2(dy, dx) - arc_from);
        if (rel <= arc_span) return std::abs(std::hypot(dx, dy) - radius);
        // Outside the arc's angular range: distance to the nearer endpoint.
        double best = 1e300;
        for (double th : {arc_from, arc_from + arc_span})
          best = std::min(best, std::hypot(p[0] - (center[0] + radius * std::cos(th)),
                                           p[1] - (center[1] + radius * std::sin(th))));
        return best;
      }});
  for (const auto& [name, th] : {std::pair{"edge_hi", sector_hi}, std::pair{"edge_lo", sector_lo}}) {
    const double c = std::cos(th), s_ = std::sin(th);
    d.segments_.push_back(BoundarySegment{
        name,
        [=](double s, std::span<double> out) {
          out[0] = center[0] + s * radius * c;
          out[1] = center[1] + s * radius * s_;
        },
        [=](Point p) {
          const double dx = p[0] - center[0], dy = p[1] - center[1];
          const double along = std::clamp(dx * c + dy * s_, 0.0, radius);
          return std::hypot(dx - along * c, dy - along * s_);
        }});
  }
  return d;
}

bool Domain::contains_spatial(Point x) const {
  switch (shape_) {
    case Shape::Box:
      for (int i = 0; i < spatial_dim(); ++i)
        if (!bounds_[i].contains(x[i])) return false;
      return true;
    case Shape::PolarStar: {
      const double dx = x[0] - center_[0], dy = x[1] - center_[1];
      return std::hypot(dx, dy) <= radius_fn_(std::atan2(dy, dx)) + kBoundarySlack;
    }
    case Shape::Pacman: {
      const double dx = x[0] - center_[0], dy = x[1] - center_[1];
      const double r = std::hypot(dx, dy);
      if (r > radius_ + kBoundarySlack) return false;
      if (r == 0.0) return true;
      // Removed wedge is the open sector; a point is inside it when its angle,
      // measured from sector_lo, falls strictly inside the sector width and it
      // is farther than the slack from both edges.
      const double th = std::atan2(dy, dx);
      const double rel = wrap_angle(th - sector_lo_);
      const double width = sector_hi_ - sector_lo_;
      if (rel > 0.0 && rel < width) {
        const double to_lo = r * std::sin(std::min(rel, std::numbers::pi / 2));
        const double to_hi = r * std::sin(std::min(width - rel, std::numbers::pi / 2));
        return std::min(to_lo, to_hi) <= kBoundarySlack;
      }
      return true;
    }
  }
  return false;
}

bool Domain::contains(Point v) const {
  if (static_cast<int>(v.size()) != input_dim()) return false;
  if (time_ && !time_->contains(v[spatial_dim()])) return false;
  return contains_spatial(v.first(spatial_dim()));
}

double Domain::spatial_measure() const {
  switch (shape_) {
    case Shape::Box: {
      double m = 1.0;
      for (const auto& iv : bounds_) m *= iv.length();
      return m;
    }
    case Shape::PolarStar:
      return star_area_;
    case Shape::Pacman:
      return 0.5 * radius_ * radius_ * (kTwoPi - (sector_hi_ - sector_lo_));
  }
  return 0.0;
}

void PdeProblem::validate() const {
  const int dim = domain.input_dim();
  if (op.terms().empty()) throw Error("problem '" + name + "': empty PDE operator");
  if (op.input_dim() != dim) throw Error("problem '" + name + "': operator dimension mismatch");
  if (!source) throw Error("problem '" + name + "': missing source term");
  for (const auto& c : conditions) {
    if (c.op.input_dim() != dim)
      throw Error("problem '" + name + "': condition '" + c.label + "' dimension mismatch");
    if (!c.target) throw Error("problem '" + name + "': condition '" + c.label + "' has no target");
    if (c.region.kind == Region::Kind::Boundary &&
        (c.region.segment < 0 ||
         c.region.segment >= static_cast<int>(domain.boundary().size())))
      throw Error("problem '" + name + "': condition '" + c.label + "' on unknown boundary segment");
    if (c.region.kind == Region::Kind::Initial && !domain.has_time())
      throw Error("problem '" + name + "': initial condition on a static domain");
  }
}

}  // namespace gffpielm
