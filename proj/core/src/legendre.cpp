#include "ssdkit/legendre.hpp"

#include <cmath>

namespace ssdkit {

std::vector<double> dlt_1d(const std::vector<double>& xs,
                           const std::vector<double>& cost,
                           const std::vector<double>& ss) {
  if (xs.size() != cost.size()) {
    throw Error(ErrorCode::DimensionMismatch, "dlt_1d: xs/cost size mismatch");
  }
  std::vector<double> out(ss.size(), -kInf);

  // Lower convex hull of the finite (x, cost) points; slopes strictly
  // increase along the hull.
  std::vector<std::size_t> hull;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (cost[j] == kInf) continue;
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull[hull.size() - 1];
      // slope(a,b) >= slope(b,j): b is not a lower-hull vertex.
      if ((cost[b] - cost[a]) * (xs[j] - xs[b]) >=
          (cost[j] - cost[b]) * (xs[b] - xs[a])) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(j);
  }
  if (hull.empty()) return out;

  std::size_t h = 0;
  for (std::size_t k = 0; k < ss.size(); ++k) {
    const double s = ss[k];
    while (h + 1 < hull.size() &&
           s * (xs[hull[h + 1]] - xs[hull[h]]) >=
               cost[hull[h + 1]] - cost[hull[h]]) {
      ++h;
    }
    double best = s * xs[hull[h]] - cost[hull[h]];
    // Rounding at a slope boundary can stop the sweep one vertex short.
    if (h + 1 < hull.size()) {
      best = std::max(best, s * xs[hull[h + 1]] - cost[hull[h + 1]]);
    }
    out[k] = best;
  }
  return out;
}

std::vector<double> discrete_legendre_transform(const GridSpec& primal,
                                                const std::vector<double>& values,
                                                const GridSpec& dual) {
  if (primal.dim() != dual.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "primal and dual grids must have the same dimension");
  }
  if (values.size() != primal.node_count()) {
    throw Error(ErrorCode::DimensionMismatch, "grid value count mismatch");
  }
  const int d = primal.dim();

  std::vector<double> work = values;
  // Shape of `work`: axes < a already have dual counts, axes >= a primal.
  for (int a = 0; a < d; ++a) {
    std::size_t outer = 1, inner = 1;
    for (int t = 0; t < a; ++t) outer *= static_cast<std::size_t>(dual.axes()[t].count);
    for (int t = a + 1; t < d; ++t) {
      inner *= static_cast<std::size_t>(primal.axes()[t].count);
    }
    const auto& pax = primal.axes()[static_cast<std::size_t>(a)];
    const auto& dax = dual.axes()[static_cast<std::size_t>(a)];
    std::vector<double> xs(static_cast<std::size_t>(pax.count));
    std::vector<double> ss(static_cast<std::size_t>(dax.count));
    for (int k = 0; k < pax.count; ++k) xs[static_cast<std::size_t>(k)] = pax.node(k);
    for (int k = 0; k < dax.count; ++k) ss[static_cast<std::size_t>(k)] = dax.node(k);

    std::vector<double> next(outer * static_cast<std::size_t>(dax.count) * inner);
    std::vector<double> line(static_cast<std::size_t>(pax.count));
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t in = 0; in < inner; ++in) {
        for (int k = 0; k < pax.count; ++k) {
          const double v =
              work[(o * static_cast<std::size_t>(pax.count) + static_cast<std::size_t>(k)) * inner + in];
          // First axis consumes f directly; later axes consume the negated
          // running maxima (max_x [s x + F] = max_x [s x - (-F)]).
          line[static_cast<std::size_t>(k)] = (a == 0) ? v : (v == -kInf ? kInf : -v);
        }
        const auto transformed = dlt_1d(xs, line, ss);
        for (int k = 0; k < dax.count; ++k) {
          next[(o * static_cast<std::size_t>(dax.count) + static_cast<std::size_t>(k)) * inner + in] =
              transformed[static_cast<std::size_t>(k)];
        }
      }
    }
    work = std::move(next);
  }
  return work;
}

}  // namespace ssdkit
