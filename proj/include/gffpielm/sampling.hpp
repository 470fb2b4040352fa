#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gffpielm/pde_model.hpp"
#include "gffpielm/points.hpp"

namespace gffpielm {

/// Collocation counts. Every boundary segment and every initial condition
/// gets its own count of points.
struct SamplingPlan {
  int interior = 0;
  int per_boundary = 0;
  int per_initial = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct CollocationSet {
  PointSet interior;
  /// One point list per ConditionSpec, in problem order.
  std::vector<PointSet> per_condition;
  std::uint64_t seed = 0;
  /// Notes about degenerate regions (e.g. single-point boundaries).
  std::vector<std::string> flags;

  std::size_t total_points() const;
  friend bool operator==(const CollocationSet&, const CollocationSet&) = default;
};

/// n points strictly inside the domain. Box domains draw each coordinate
/// uniformly; other shapes use rejection from the spatial bounding box with a
/// budget of 1000*n proposals.
PointSet sample_interior(const Domain& domain, int n, std::uint64_t seed);

/// n points on a condition's region. Boundary segments are sampled uniformly
/// in arc length (times a uniform time draw); initial slices uniformly in
/// space at the start time. A zero-measure region yields its single distinct
/// point and appends a note to `flags` when n > 1.
PointSet sample_condition_region(const Domain& domain, const ConditionSpec& spec, int n,
                                 std::uint64_t seed, std::vector<std::string>* flags = nullptr);

/// Samples every region of a problem with seeds derived from plan.seed.
CollocationSet sample_collocation(const PdeProblem& problem, const SamplingPlan& plan);

/// n uniformly spaced points on [lo, hi], endpoints included. For plotting only.
PointSet grid_1d(double lo, double hi, int n);

/// Writes one CSV row per point: coordinates then region tag.
void write_collocation_csv(std::ostream& os, const PdeProblem& problem,
                           const CollocationSet& colloc);

}  // namespace gffpielm
