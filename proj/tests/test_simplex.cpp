#include <doctest.h>

#include "oracles.hpp"
#include "ssdkit/simplex.hpp"

using namespace ssdkit;

TEST_CASE("simplex solves a basic equality program") {
  // min x1 + 2 x2 s.t. x1 + x2 = 1, x >= 0 -> x = (1, 0), value 1.
  Matrix A(1, 2);
  A << 1, 1;
  Vector b(1), c(2);
  b << 1;
  c << 1, 2;
  const auto res = solve_equality_lp(A, b, c);
  REQUIRE(res.status == LpStatus::optimal);
  CHECK(res.value == doctest::Approx(1.0));
  CHECK(res.solution[0] == doctest::Approx(1.0));
  CHECK(res.solution[1] == doctest::Approx(0.0));
}

TEST_CASE("simplex detects infeasibility") {
  // x1 + x2 = -1 with x >= 0.
  Matrix A(1, 2);
  A << 1, 1;
  Vector b(1), c(2);
  b << -1;
  c << 1, 1;
  CHECK(solve_equality_lp(A, b, c).status == LpStatus::infeasible);
}

TEST_CASE("simplex detects unboundedness") {
  // min -x1 s.t. x1 - x2 = 0: (t, t) feasible for all t.
  Matrix A(1, 2);
  A << 1, -1;
  Vector b(1), c(2);
  b << 0;
  c << -1, 0;
  CHECK(solve_equality_lp(A, b, c).status == LpStatus::unbounded);
}

TEST_CASE("simplex handles a degenerate vertex") {
  // Redundant constraints meeting at x = (0, 1).
  Matrix A(3, 2);
  A << 1, 1, 2, 2, 1, 0;
  Vector b(3), c(2);
  b << 1, 2, 0;
  c << 3, 1;
  const auto res = solve_equality_lp(A, b, c);
  REQUIRE(res.status == LpStatus::optimal);
  CHECK(res.value == doctest::Approx(1.0));
}

TEST_CASE("simplex barycentric value matches the direct formula") {
  // min v.lambda s.t. [points; 1] lambda = [x; 1]: the unique lambda for two
  // points with x between them is ((b-x)/(b-a), (x-a)/(b-a)).
  Matrix A(2, 2);
  A << -1, 1, 1, 1;
  Vector b(2), c(2);
  b << 0.5, 1.0;
  c << 3.0, 7.0;
  const auto res = solve_equality_lp(A, b, c);
  REQUIRE(res.status == LpStatus::optimal);
  CHECK(res.solution[0] == doctest::Approx(0.25));
  CHECK(res.solution[1] == doctest::Approx(0.75));
  CHECK(res.value == doctest::Approx(0.25 * 3.0 + 0.75 * 7.0));
}
