#include "gffpielm/sampling.hpp"

#include <array>
#include <ostream>

#include "gffpielm/error.hpp"
#include "gffpielm/rng.hpp"

namespace gffpielm {

namespace {

constexpr int kRejectionBudget = 1000;

// Uniform draw on the open interval (lo, hi).
double open_uniform(Rng& rng, double lo, double hi) {
  for (;;) {
    const double x = rng.uniform(lo, hi);
    if (x > lo && x < hi) return x;
  }
}

// Spatial point strictly inside (box) or inside the closed region (other shapes).
void draw_spatial(const Domain& domain, Rng& rng, std::span<double> out, long long& budget) {
  const int d = domain.spatial_dim();
  if (domain.shape() == Domain::Shape::Box) {
    for (int i = 0; i < d; ++i) out[i] = open_uniform(rng, domain.bounds()[i].lo, domain.bounds()[i].hi);
    return;
  }
  for (;;) {
    if (budget-- <= 0)
      throw Error("sampling: rejection budget exhausted (degenerate domain?)");
    for (int i = 0; i < d; ++i) out[i] = rng.uniform(domain.bounds()[i].lo, domain.bounds()[i].hi);
    if (domain.contains_spatial(std::span<const double>(out.data(), d))) return;
  }
}

}  // namespace

void SamplingPlan::validate() const {
  if (interior < 0 || per_boundary < 0 || per_initial < 0)
    throw Error("sampling plan: counts must be non-negative");
  if (interior == 0 && per_boundary == 0 && per_initial == 0)
    throw Error("sampling plan: all counts are zero");
}

std::size_t CollocationSet::total_points() const {
  std::size_t n = interior.size();
  for (const auto& p : per_condition) n += p.size();
  return n;
}

PointSet sample_interior(const Domain& domain, int n, std::uint64_t seed) {
  if (n < 0) throw Error("sample_interior: negative count");
  const int dim = domain.input_dim();
  const int sd = domain.spatial_dim();
  PointSet points(dim);
  points.reserve(n);
  Rng rng(seed);
  long long budget = static_cast<long long>(kRejectionBudget) * std::max(n, 1);
  std::array<double, 4> v{};
  for (int k = 0; k < n; ++k) {
    draw_spatial(domain, rng, std::span<double>(v.data(), sd), budget);
    if (domain.has_time()) v[sd] = open_uniform(rng, domain.time().lo, domain.time().hi);
    points.push_back(std::span<const double>(v.data(), dim));
  }
  return points;
}

PointSet sample_condition_region(const Domain& domain, const ConditionSpec& spec, int n,
                                 std::uint64_t seed, std::vector<std::string>* flags) {
  if (n < 0) throw Error("sample_condition_region: negative count");
  const int dim = domain.input_dim();
  const int sd = domain.spatial_dim();
  PointSet points(dim);
  Rng rng(seed);
  std::array<double, 4> v{};

  if (spec.region.kind == Region::Kind::Initial) {
    if (!domain.has_time()) throw Error("sampling: initial region on a static domain");
    long long budget = static_cast<long long>(kRejectionBudget) * std::max(n, 1);
    points.reserve(n);
    for (int k = 0; k < n; ++k) {
      if (domain.shape() == Domain::Shape::Box) {
        // Closed slice: boundary-coordinate values are allowed at t = t0.
        for (int i = 0; i < sd; ++i) v[i] = rng.uniform(domain.bounds()[i].lo, domain.bounds()[i].hi);
      } else {
        draw_spatial(domain, rng, std::span<double>(v.data(), sd), budget);
      }
      v[sd] = domain.time().lo;
      points.push_back(std::span<const double>(v.data(), dim));
    }
    return points;
  }

  const auto& segments = domain.boundary();
  if (spec.region.segment < 0 || spec.region.segment >= static_cast<int>(segments.size()))
    throw Error("sampling: unknown boundary segment");
  const BoundarySegment& seg = segments[spec.region.segment];

  // A point boundary of a static 1D domain holds one distinct point.
  if (seg.zero_measure && !domain.has_time()) {
    if (n == 0) return points;
    seg.at(0.0, std::span<double>(v.data(), sd));
    points.push_back(std::span<const double>(v.data(), dim));
    if (n > 1 && flags)
      flags->push_back("condition '" + spec.label + "': zero-measure region, " +
                       std::to_string(n) + " points requested, 1 distinct point used");
    return points;
  }

  points.reserve(n);
  for (int k = 0; k < n; ++k) {
    seg.at(seg.zero_measure ? 0.0 : rng.uniform(), std::span<double>(v.data(), sd));
    if (domain.has_time()) v[sd] = rng.uniform(domain.time().lo, domain.time().hi);
    points.push_back(std::span<const double>(v.data(), dim));
  }
  return points;
}

CollocationSet sample_collocation(const PdeProblem& problem, const SamplingPlan& plan) {
  plan.validate();
  CollocationSet set;
  set.seed = plan.seed;
  set.interior = sample_interior(problem.domain, plan.interior, derive_seed(plan.seed, 0));
  set.per_condition.reserve(problem.conditions.size());
  for (std::size_t c = 0; c < problem.conditions.size(); ++c) {
    const auto& spec = problem.conditions[c];
    const int n = spec.region.kind == Region::Kind::Initial ? plan.per_initial : plan.per_boundary;
    set.per_condition.push_back(
        sample_condition_region(problem.domain, spec, n, derive_seed(plan.seed, c + 1), &set.flags));
  }
  return set;
}

PointSet grid_1d(double lo, double hi, int n) {
  if (n < 1) throw Error("grid_1d: need at least one point");
  PointSet points(1);
  points.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double x = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
    points.push_back(std::span<const double>(&x, 1));
  }
  return points;
}

void write_collocation_csv(std::ostream& os, const PdeProblem& problem,
                           const CollocationSet& colloc) {
  const int dim = problem.domain.input_dim();
  for (int i = 0; i < dim; ++i) os << "v" << i << ",";
  os << "region\n";
  os.precision(17);
  auto emit = [&](const PointSet& ps, const std::string& tag) {
    for (std::size_t k = 0; k < ps.size(); ++k) {
      for (double c : ps[k]) os << c << ",";
      os << tag << "\n";
    }
  };
  emit(colloc.interior, "interior");
  for (std::size_t c = 0; c < colloc.per_condition.size(); ++c)
    emit(colloc.per_condition[c], problem.conditions.at(c).label);
}

}  // namespace gffpielm
