#pragma once

#include <vector>

#include "ssdkit/grid.hpp"

namespace ssdkit {

/// Discrete conjugate along one axis:
///   out[k] = max_j ( ss[k] * xs[j] - cost[j] )
/// taken over finite cost entries (+inf entries are excluded). Returns -inf
/// when every entry is +inf. xs and ss must be ascending. Linear time via the
/// lower convex hull of (xs[j], cost[j]) and a slope sweep; the hull carries
/// the discrete max exactly because dominated points never attain it.
std::vector<double> dlt_1d(const std::vector<double>& xs,
                           const std::vector<double>& cost,
                           const std::vector<double>& ss);

/// Factored multi-dimensional discrete Legendre transform of grid samples:
///   out(s) = max over primal nodes x of ( s.x - values(x) )
/// computed one axis at a time, O(nodes) per axis. `values` is row-major over
/// `primal` (first axis slowest); the result is row-major over `dual`.
std::vector<double> discrete_legendre_transform(const GridSpec& primal,
                                                const std::vector<double>& values,
                                                const GridSpec& dual);

}  // namespace ssdkit
