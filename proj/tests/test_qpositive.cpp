#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "ssdkit/qpositive.hpp"
#include "ssdkit/rng.hpp"

using namespace ssdkit;
using oracles::vec2;
using oracles::vec3;

TEST_CASE("every set is q-positive under the identity form") {
  const SSDSpace space = builtin_space("hilbert-identity", {3});
  Rng rng(3);
  std::vector<Vector> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(rng.vector(3, -5, 5));
  CHECK(is_q_positive(space, pts).positive);
}

TEST_CASE("only singletons are q-positive under the negated form") {
  const SSDSpace space = builtin_space("hilbert-negative", {2});
  CHECK(is_q_positive(space, {vec2(1, 2)}).positive);
  const auto res = is_q_positive(space, {vec2(0, 0), vec2(1, 0)});
  CHECK(!res.positive);
  REQUIRE(res.violation.has_value());
  CHECK(res.violation->value == doctest::Approx(-0.5));
}

TEST_CASE("empty input is rejected") {
  const SSDSpace space = builtin_space("r3-swap");
  try {
    is_q_positive(space, {});
    FAIL("expected EmptySet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySet);
  }
}

TEST_CASE("helix classification with witness from the exhaustive oracle") {
  const SSDSpace space = builtin_space("r3-swap");
  SetParams params;
  params.lo = -10.0;
  params.hi = 10.0;
  params.count = 401;

  params.lambda = 1.0;
  const auto unit = sample_builtin_set(space, "helix", params);
  CHECK(is_q_positive(space, unit.points).positive);

  params.lambda = 0.5;
  const auto flat = sample_builtin_set(space, "helix", params);
  const auto res = is_q_positive(space, flat.points);
  REQUIRE(!res.positive);
  const auto scan = oracles::pair_scan(space, flat.points);
  CHECK(res.violation->value == scan.min_q);
  CHECK(res.violation->witness[0] == flat.points[scan.i]);
  CHECK(res.violation->witness[1] == flat.points[scan.j]);
  // QPositiveSet construction must reject the same sample.
  CHECK_THROWS_AS(builtin_set(space, "helix", params), Error);
}

TEST_CASE("line through (1,-1,2) is q-positive in the swap space") {
  const SSDSpace space = builtin_space("r3-swap");
  SetParams params;
  params.direction = vec3(1, -1, 2);
  params.count = 121;
  const QPositiveSet line = builtin_set(space, "line", params);
  CHECK(line.size() == 121);
}

TEST_CASE("sampled span of any b with q(b) >= 0 is q-positive") {
  const std::vector<SSDSpace> spaces = {builtin_space("r3-swap"),
                                        builtin_space("pairing", {2})};
  Rng rng(29);
  for (const auto& space : spaces) {
    int found = 0;
    while (found < 50) {
      const Vector b = rng.vector(space.dim, -3, 3);
      if (q(space, b) < 0.0) continue;
      ++found;
      std::vector<Vector> span;
      for (int k = -10; k <= 10; ++k) span.push_back((k / 3.0) * b);
      CHECK(is_q_positive(space, span).positive);
    }
  }
}

TEST_CASE("within any q-positive set the inf over pair gaps is exactly zero") {
  const SSDSpace space = builtin_space("pairing", {1});
  SetParams params;
  params.lo = -3.0;
  params.hi = 3.0;
  params.count = 121;
  const QPositiveSet A = builtin_set(space, "diagonal", params);
  for (const auto& a : A.points()) {
    double min_gap = kInf;
    for (const auto& other : A.points()) min_gap = std::min(min_gap, q(space, other - a));
    CHECK(min_gap == 0.0);
  }
}

TEST_CASE("maximality falsifier finds nothing for the sampled diagonal") {
  const SSDSpace space = builtin_space("pairing", {1});
  SetParams params;
  params.lo = -3.0;
  params.hi = 3.0;
  params.count = 121;  // step 0.05
  const QPositiveSet A = builtin_set(space, "diagonal", params);
  const GridSpec grid = GridSpec::uniform(-2.0, 2.0, 41, 2);  // step 0.1
  CHECK(maximality_falsifier(space, A, grid, 0.2).empty());
}

TEST_CASE("maximality falsifier finds nothing for a singleton under the negated form") {
  const SSDSpace space = builtin_space("hilbert-negative", {2});
  const QPositiveSet A(space, {Vector::Zero(2)});
  const GridSpec grid = GridSpec::uniform(-1.0, 1.0, 11, 2);
  CHECK(maximality_falsifier(space, A, grid, 0.2).empty());
}

TEST_CASE("maximality falsifier exposes a non-maximal singleton") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A(space, {vec2(1, 1)});
  const GridSpec grid = GridSpec::uniform(0.0, 3.0, 7, 2);  // step 0.5
  const auto candidates = maximality_falsifier(space, A, grid, 0.2);
  CHECK(!candidates.empty());
  bool found_22 = false;
  for (const auto& cand : candidates) {
    if ((cand.witness[0] - vec2(2, 2)).norm() < 1e-12) {
      found_22 = true;
      CHECK(cand.value == doctest::Approx(1.0));
    }
  }
  CHECK(found_22);
}

TEST_CASE("point CSV files round-trip") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "ssdkit_points_test.csv").string();
  std::vector<Vector> pts = {vec3(1.5, -2.25, 0.015625), vec3(0, 1e-9, -3)};
  save_points_csv(path, pts);
  const auto loaded = load_points_csv(path, 3);
  REQUIRE(loaded.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(loaded[i] == pts[i]);
  std::remove(path.c_str());
}

TEST_CASE("point CSV loader reports bad rows") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "ssdkit_points_bad.csv").string();
  {
    std::ofstream out(path);
    out << "1.0,2.0\n1.0,oops\n";
  }
  try {
    load_points_csv(path);
    FAIL("expected IOError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IOError);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
  std::remove(path.c_str());
}
