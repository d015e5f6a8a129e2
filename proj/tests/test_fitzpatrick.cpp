#include <doctest.h>

#include "oracles.hpp"
#include "ssdkit/fitzpatrick.hpp"
#include "ssdkit/rng.hpp"

using namespace ssdkit;
using oracles::vec2;

namespace {

QPositiveSet diagonal(const SSDSpace& space, int count = 121) {
  SetParams params;
  params.lo = -3.0;
  params.hi = 3.0;
  params.count = count;
  return builtin_set(space, "diagonal", params);
}

}  // namespace

TEST_CASE("phi of the origin singleton is identically zero") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A(space, {Vector::Zero(2)});
  Rng rng(97);
  for (int i = 0; i < 100; ++i) {
    CHECK(phi(space, A, rng.vector(2, -5, 5)) == 0.0);
  }
}

TEST_CASE("phi at (1,-1) over the sampled diagonal") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A = diagonal(space);
  // q(1,-1) = -1 and the inf over the sample of q((t,t)-(1,-1)) = t^2 - 1 is
  // attained at the sample point t = 0.
  CHECK(phi(space, A, vec2(1, -1)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("phi of a two-point set at the origin") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A(space, {vec2(-1, -1), vec2(1, 1)});
  CHECK(phi(space, A, vec2(0, 0)) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("both phi routes agree on every builtin sample") {
  const SSDSpace pairing = builtin_space("pairing", {1});
  const SSDSpace swap = builtin_space("r3-swap");
  SetParams line_params;
  line_params.direction = oracles::vec3(1, -1, 2);
  SetParams helix_params;
  helix_params.lo = -10;
  helix_params.hi = 10;
  helix_params.count = 201;
  std::vector<std::pair<const SSDSpace*, QPositiveSet>> fixtures;
  fixtures.emplace_back(&pairing, diagonal(pairing));
  fixtures.emplace_back(&pairing, builtin_set(pairing, "sgn-graph"));
  fixtures.emplace_back(&swap, builtin_set(swap, "line", line_params));
  fixtures.emplace_back(&swap, builtin_set(swap, "helix", helix_params));

  Rng rng(101);
  for (const auto& [space, A] : fixtures) {
    for (int i = 0; i < 1000; ++i) {
      const Vector b = rng.vector(space->dim, -3, 3);
      const auto routes = phi_two_route(*space, A, b);
      CHECK(std::abs(routes.by_sup - routes.by_inf_gap) <= 1e-9);
    }
  }
}

TEST_CASE("phi equals q and psi stays below q on the set itself") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A = diagonal(space);
  const auto triple = fitzpatrick_triple(space, A);
  for (const auto& a : A.points()) {
    CHECK(std::abs(triple.phi.eval(a) - q(space, a)) <= 1e-9);
    CHECK(triple.psi.eval(a) <= q(space, a) + 1e-9);
  }
}

TEST_CASE("theta values") {
  const SSDSpace space = builtin_space("pairing", {1});
  SUBCASE("diagonal sample at (1,1)") {
    const QPositiveSet A = diagonal(space);
    CHECK(theta(space, A, vec2(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    // Against the closed-form limit (s1+s2)^2/4 at duals whose midpoint
    // lands on the t-sample lattice.
    Rng rng(103);
    for (int i = 0; i < 50; ++i) {
      const double s1 = std::round(rng.uniform(-10, 10)) * 0.1;
      const double s2 = std::round(rng.uniform(-10, 10)) * 0.1;
      const double expected = 0.25 * (s1 + s2) * (s1 + s2);
      CHECK(theta(space, A, vec2(s1, s2)) ==
            doctest::Approx(expected).epsilon(1e-9));
    }
  }
  SUBCASE("origin singleton") {
    const QPositiveSet A(space, {Vector::Zero(2)});
    Rng rng(107);
    for (int i = 0; i < 50; ++i) {
      CHECK(theta(space, A, rng.vector(2, -5, 5)) == 0.0);
    }
  }
  SUBCASE("singleton at (1,1) against (2,0)") {
    const QPositiveSet A(space, {vec2(1, 1)});
    CHECK(theta(space, A, vec2(2, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("psi envelope values") {
  const SSDSpace space = builtin_space("pairing", {1});
  SUBCASE("singleton") {
    const Vector a = vec2(0.5, -1.5);
    const QPositiveSet A(space, {a});
    CHECK(psi(space, A, a) == doctest::Approx(q(space, a)).epsilon(1e-9));
    CHECK(psi(space, A, vec2(0, 0)) == kInf);
  }
  SUBCASE("two points") {
    const QPositiveSet A(space, {vec2(-1, -1), vec2(1, 1)});
    CHECK(psi(space, A, vec2(0, 0)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(psi(space, A, vec2(2, 2)) == kInf);
  }
}

TEST_CASE("sandwich holds for the squared norm over the diagonal") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A = diagonal(space, 601);
  const auto f = ConvexFunction::half_sqnorm(2);
  const GridSpec grid = GridSpec::uniform(-2.0, 2.0, 21, 2);
  const auto report = sandwich_check(space, A, f, grid, 1e-6);
  for (const auto& line : report.checks) {
    CHECK(line.status == CheckStatus::pass);
  }
}

TEST_CASE("sandwich reports the phi >= q failure of a non-maximal set") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A(space, {vec2(-1, -1), vec2(1, 1)});
  const GridSpec grid = GridSpec::uniform(-2.0, 2.0, 5, 2);  // includes (0,0)
  const auto report =
      sandwich_check(space, A, ConvexFunction::half_sqnorm(2), grid, 1e-9);
  REQUIRE(report.checks.size() == 3);
  const auto& phi_line = report.checks[2];
  CHECK(phi_line.ref == "sandwich.phi-ge-q");
  CHECK(phi_line.status == CheckStatus::fail);
  CHECK(phi_line.max_violation == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(!phi_line.witness.empty());
  // The origin demonstrates the failure: phi = -1 there while q = 0.
  CHECK(q(space, vec2(0, 0)) - phi(space, A, vec2(0, 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phi itself is trivially sandwiched") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A = diagonal(space);
  const auto triple = fitzpatrick_triple(space, A);
  const GridSpec grid = GridSpec::uniform(-2.0, 2.0, 11, 2);
  const auto report = sandwich_check(space, A, triple.phi, grid, 1e-9);
  CHECK(report.checks[0].status == CheckStatus::pass);
  CHECK(report.checks[1].status == CheckStatus::pass);
}

TEST_CASE("conjugate dominance for the origin singleton") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A(space, {Vector::Zero(2)});
  CHECK(phi_intrinsic_conjugate_at(space, A, Vector::Zero(2)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(phi_intrinsic_conjugate_at(space, A, vec2(1, 0)) == kInf);
  const GridSpec grid = GridSpec::uniform(-1.0, 1.0, 5, 2);
  const auto report = conjugate_dominance_check(space, A, grid, grid, 1e-8);
  for (const auto& line : report.checks) {
    CHECK(line.status == CheckStatus::pass);
  }
}

TEST_CASE("conjugate dominance and involution over the sampled diagonal") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A = diagonal(space);
  const GridSpec grid = GridSpec::uniform(-2.0, 2.0, 21, 2);
  const GridSpec dual = map_box(space.form_matrix, grid);
  const auto report = conjugate_dominance_check(space, A, grid, dual, 1e-8);
  for (const auto& line : report.checks) {
    INFO(line.name);
    CHECK(line.status == CheckStatus::pass);
  }
}

TEST_CASE("two-point set: conjugate dominates and equals psi at the origin") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A(space, {vec2(-1, -1), vec2(1, 1)});
  const double at_origin = phi_intrinsic_conjugate_at(space, A, vec2(0, 0));
  CHECK(at_origin == doctest::Approx(1.0).epsilon(1e-9));  // also psi(0,0)
  CHECK(at_origin >= std::max(phi(space, A, vec2(0, 0)), q(space, vec2(0, 0))));
}

TEST_CASE("envelope chain: psi >= conj(phi) >= q inside the hull, collapsing for invertible forms") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A = diagonal(space);
  const auto triple = fitzpatrick_triple(space, A);
  const GridSpec grid = GridSpec::uniform(-2.0, 2.0, 21, 2);
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const Vector b = grid.node(k);
    const double psi_b = triple.psi.eval(b);
    if (psi_b == kInf) continue;
    const double conj_b = phi_intrinsic_conjugate_at(space, A, b);
    CHECK(psi_b >= conj_b - 1e-8);
    CHECK(conj_b >= q(space, b) - 1e-8);
    CHECK(std::abs(psi_b - conj_b) <= 1e-8);  // invertible form collapse
  }
}

TEST_CASE("coincidence sets of psi and phi contain the set") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet A = diagonal(space, 61);
  const auto triple = fitzpatrick_triple(space, A);
  const auto pts_phi = coincidence_set(space, triple.phi, A.points(), 1e-8);
  const auto pts_psi = coincidence_set(space, triple.psi, A.points(), 1e-8);
  CHECK(pts_phi.size() == A.size());
  CHECK(pts_psi.size() == A.size());
}

TEST_CASE("refining the sample raises phi and lowers psi") {
  const SSDSpace space = builtin_space("pairing", {1});
  const QPositiveSet coarse = diagonal(space, 31);
  const QPositiveSet fine = diagonal(space, 61);  // superset sample
  const auto tc = fitzpatrick_triple(space, coarse);
  const auto tf = fitzpatrick_triple(space, fine);
  const GridSpec grid = GridSpec::uniform(-2.0, 2.0, 11, 2);
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const Vector b = grid.node(k);
    CHECK(tc.phi.eval(b) <= tf.phi.eval(b) + 1e-12);
    CHECK(tc.psi.eval(b) >= tf.psi.eval(b) - 1e-9);
  }
}
