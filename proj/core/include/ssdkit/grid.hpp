#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ssdkit/types.hpp"

namespace ssdkit {

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;

  double step() const { return (hi - lo) / (count - 1); }
  double node(int k) const { return lo + k * step(); }
};

/// Uniform rectangular grid; node coordinates are always produced by the same
/// affine formula so that identical axes yield bit-identical values.
class GridSpec {
 public:
  GridSpec() = default;
  explicit GridSpec(std::vector<GridAxis> axes);

  static GridSpec uniform(double lo, double hi, int count, int dim);

  const std::vector<GridAxis>& axes() const { return axes_; }
  int dim() const { return static_cast<int>(axes_.size()); }
  std::size_t node_count() const;

  Vector node(std::size_t flat_index) const;
  std::vector<int> multi_index(std::size_t flat_index) const;
  std::size_t flat_index(const std::vector<int>& idx) const;

  /// All axis indices strictly inside [1, count-2].
  bool is_interior(std::size_t flat_index) const;

  /// Flat index of the node matching x within tolerance; throws OffGridPoint.
  std::size_t locate(const Vector& x) const;

  double max_step() const;

  std::string describe() const;

  bool operator==(const GridSpec& other) const;

 private:
  std::vector<GridAxis> axes_;
};

}  // namespace ssdkit
