#include <doctest.h>

#include "oracles.hpp"
#include "ssdkit/legendre.hpp"
#include "ssdkit/rng.hpp"

using namespace ssdkit;

namespace {

std::vector<double> axis_nodes(const GridAxis& ax) {
  std::vector<double> xs(static_cast<std::size_t>(ax.count));
  for (int k = 0; k < ax.count; ++k) xs[static_cast<std::size_t>(k)] = ax.node(k);
  return xs;
}

}  // namespace

TEST_CASE("dlt_1d equals the brute-force discrete sup, convex data") {
  const GridAxis ax{-2.0, 2.0, 101};
  const auto xs = axis_nodes(ax);
  std::vector<double> cost(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) cost[j] = 0.5 * xs[j] * xs[j];
  const auto out = dlt_1d(xs, cost, xs);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    double brute = -kInf;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      brute = std::max(brute, xs[k] * xs[j] - cost[j]);
    }
    CHECK(out[k] == doctest::Approx(brute).epsilon(1e-13));
  }
}

TEST_CASE("dlt_1d equals the brute-force discrete sup, random nonconvex data with holes") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const GridAxis ax{-3.0, 3.0, 41};
    const auto xs = axis_nodes(ax);
    std::vector<double> cost(xs.size());
    for (auto& v : cost) {
      v = rng.uniform(0, 1) < 0.2 ? kInf : rng.uniform(-5, 5);
    }
    if (std::all_of(cost.begin(), cost.end(), [](double v) { return v == kInf; })) {
      cost[7] = 0.0;
    }
    const GridAxis dual{-4.0, 4.0, 33};
    const auto ss = axis_nodes(dual);
    const auto out = dlt_1d(xs, cost, ss);
    for (std::size_t k = 0; k < ss.size(); ++k) {
      double brute = -kInf;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (cost[j] == kInf) continue;
        brute = std::max(brute, ss[k] * xs[j] - cost[j]);
      }
      CHECK(out[k] == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("2-D transform factors exactly against the full scan") {
  Rng rng(9);
  const GridSpec primal({GridAxis{-1.0, 1.0, 9}, GridAxis{-2.0, 1.0, 7}});
  const GridSpec dual({GridAxis{-2.0, 2.0, 8}, GridAxis{-1.0, 1.0, 6}});
  std::vector<double> values(primal.node_count());
  for (auto& v : values) v = rng.uniform(0, 1) < 0.15 ? kInf : rng.uniform(-3, 3);
  values[0] = 1.0;
  const auto out = discrete_legendre_transform(primal, values, dual);
  for (std::size_t k = 0; k < dual.node_count(); ++k) {
    const Vector s = dual.node(k);
    double brute = -kInf;
    for (std::size_t j = 0; j < primal.node_count(); ++j) {
      if (values[j] == kInf) continue;
      brute = std::max(brute, s.dot(primal.node(j)) - values[j]);
    }
    CHECK(out[k] == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("transform of the discrete squared-norm is the squared-norm on aligned grids") {
  const GridSpec grid = GridSpec::uniform(-2.0, 2.0, 41, 1);
  std::vector<double> values(grid.node_count());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double x = grid.node(j)[0];
    values[j] = 0.5 * x * x;
  }
  const auto star = discrete_legendre_transform(grid, values, grid);
  for (std::size_t k = 0; k < star.size(); ++k) {
    const double s = grid.node(k)[0];
    CHECK(star[k] == doctest::Approx(0.5 * s * s).epsilon(1e-12));
  }
}
