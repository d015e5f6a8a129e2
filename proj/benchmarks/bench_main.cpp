#include <benchmark/benchmark.h>

#include "ssdkit/fitzpatrick.hpp"
#include "ssdkit/legendre.hpp"
#include "ssdkit/vz_mas.hpp"

namespace {

using namespace ssdkit;

const SSDSpace& pairing1() {
  static const SSDSpace space = builtin_space("pairing", {1});
  return space;
}

const QPositiveSet& diagonal601() {
  static const QPositiveSet set = [] {
    SetParams params;
    params.lo = -3.0;
    params.hi = 3.0;
    params.count = 601;
    return builtin_set(pairing1(), "diagonal", params);
  }();
  return set;
}

void BM_phi_eval(benchmark::State& state) {
  const auto& space = pairing1();
  const auto& A = diagonal601();
  Vector b(2);
  b << 1.0, -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi(space, A, b));
  }
}
BENCHMARK(BM_phi_eval);

void BM_envelope_lp(benchmark::State& state) {
  const auto& space = pairing1();
  const auto& A = diagonal601();
  const auto triple = fitzpatrick_triple(space, A);
  Vector b(2);
  b << 0.5, 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(triple.psi.eval(b));
  }
}
BENCHMARK(BM_envelope_lp);

void BM_dlt_1d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> xs(n), cost(n), ss(n);
  for (int j = 0; j < n; ++j) {
    xs[j] = -2.0 + 4.0 * j / (n - 1);
    cost[j] = 0.5 * xs[j] * xs[j];
    ss[j] = xs[j];
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dlt_1d(xs, cost, ss));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_dlt_1d)->Range(256, 65536)->Complexity(benchmark::oN);

void BM_vz_residual(benchmark::State& state) {
  const auto& space = pairing1();
  const auto f = ConvexFunction::half_sqnorm(2);
  const GridSpec search = GridSpec::uniform(-3.0, 3.0, 61, 2);
  Vector c(2);
  c << 1.0, -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vz_residual(space, f, c, search));
  }
}
BENCHMARK(BM_vz_residual);

}  // namespace

BENCHMARK_MAIN();
