#include "ssdkit/grid.hpp"

#include <cmath>
#include <sstream>

namespace ssdkit {

GridSpec::GridSpec(std::vector<GridAxis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) {
    throw Error(ErrorCode::InvalidParams, "grid needs at least one axis");
  }
  for (const auto& a : axes_) {
    if (!(a.lo < a.hi)) {
      throw Error(ErrorCode::InvalidParams, "grid axis needs lo < hi");
    }
    if (a.count < 2) {
      throw Error(ErrorCode::InvalidParams, "grid axis needs count >= 2");
    }
  }
}

GridSpec GridSpec::uniform(double lo, double hi, int count, int dim) {
  return GridSpec(std::vector<GridAxis>(static_cast<std::size_t>(dim),
                                        GridAxis{lo, hi, count}));
}

std::size_t GridSpec::node_count() const {
  std::size_t n = 1;
  for (const auto& a : axes_) n *= static_cast<std::size_t>(a.count);
  return n;
}

std::vector<int> GridSpec::multi_index(std::size_t flat_index) const {
  // Row-major: first axis slowest, last axis fastest.
  std::vector<int> idx(axes_.size());
  for (std::size_t a = axes_.size(); a-- > 0;) {
    const auto c = static_cast<std::size_t>(axes_[a].count);
    idx[a] = static_cast<int>(flat_index % c);
    flat_index /= c;
  }
  return idx;
}

std::size_t GridSpec::flat_index(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    flat = flat * static_cast<std::size_t>(axes_[a].count) +
           static_cast<std::size_t>(idx[a]);
  }
  return flat;
}

Vector GridSpec::node(std::size_t flat_index) const {
  const auto idx = multi_index(flat_index);
  Vector x(static_cast<Eigen::Index>(axes_.size()));
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    x[static_cast<Eigen::Index>(a)] = axes_[a].node(idx[a]);
  }
  return x;
}

bool GridSpec::is_interior(std::size_t flat_index) const {
  const auto idx = multi_index(flat_index);
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (idx[a] == 0 || idx[a] == axes_[a].count - 1) return false;
  }
  return true;
}

std::size_t GridSpec::locate(const Vector& x) const {
  require_dim(x, dim(), "grid point");
  std::vector<int> idx(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const auto& ax = axes_[a];
    const double t = (x[static_cast<Eigen::Index>(a)] - ax.lo) / ax.step();
    const int k = static_cast<int>(std::lround(t));
    const double at = x[static_cast<Eigen::Index>(a)];
    if (k < 0 || k >= ax.count ||
        std::abs(at - ax.node(k)) > 1e-9 * (1.0 + std::abs(at))) {
      std::ostringstream os;
      os << "coordinate " << at << " on axis " << a << " is not a grid node";
      throw Error(ErrorCode::OffGridPoint, os.str());
    }
    idx[a] = k;
  }
  return flat_index(idx);
}

double GridSpec::max_step() const {
  double h = 0.0;
  for (const auto& a : axes_) h = std::max(h, a.step());
  return h;
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (a) os << ";";
    os << "[" << axes_[a].lo << "," << axes_[a].hi << "]x" << axes_[a].count;
  }
  return os.str();
}

bool GridSpec::operator==(const GridSpec& other) const {
  if (axes_.size() != other.axes_.size()) return false;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (axes_[a].lo != other.axes_[a].lo || axes_[a].hi != other.axes_[a].hi ||
        axes_[a].count != other.axes_[a].count) {
      return false;
    }
  }
  return true;
}

}  // namespace ssdkit
