#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gffpielm {

/// A point in input space: spatial coordinates followed by time, if any.
using Point = std::span<const double>;

/// Scalar function of an input point (sources, targets, exact solutions).
using ScalarField = std::function<double(Point)>;

/// Packed row-major list of points sharing one dimension.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim) : dim_(dim) {}

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  Point operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }

  void push_back(Point p) { coords_.insert(coords_.end(), p.begin(), p.end()); }
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

}  // namespace gffpielm
