#pragma once

#include "ssdkit/convex_function.hpp"
#include "ssdkit/qpositive.hpp"
#include "ssdkit/report.hpp"

namespace ssdkit {

/// The three convex functions attached to a finite q-positive set A:
///   phi(b)   = max over a in A of form(a,b) - q(a)      (max-affine)
///   theta(d) = max over a in A of a.d - q(a)            (max-affine, dual var)
///   psi      = lower convex envelope of {a -> q(a)}     (point envelope)
/// phi = q on A and psi <= q on A are checked at construction.
struct FitzpatrickTriple {
  ConvexFunction phi;
  ConvexFunction theta;
  ConvexFunction psi;
};

FitzpatrickTriple fitzpatrick_triple(const SSDSpace& space, const QPositiveSet& A);

struct PhiRoutes {
  double by_sup;      // max over A of form(a,b) - q(a)
  double by_inf_gap;  // q(b) - min over A of q(a - b)
};

/// Both algebraic routes to phi; they agree up to rounding.
PhiRoutes phi_two_route(const SSDSpace& space, const QPositiveSet& A,
                        const Vector& b);

/// phi(b), cross-checked against the second route at a scaled 1e-9 slack.
double phi(const SSDSpace& space, const QPositiveSet& A, const Vector& b);

double theta(const SSDSpace& space, const QPositiveSet& A, const Vector& d);

/// Envelope value by linear program; +inf outside conv(A).
double psi(const SSDSpace& space, const QPositiveSet& A, const Vector& b);

/// Exact value of the intrinsic conjugate of phi at c, valid for any form
/// matrix: the polyhedral star-conjugate of phi evaluated at S*c.
double phi_intrinsic_conjugate_at(const SSDSpace& space, const QPositiveSet& A,
                                  const Vector& c);

/// psi >= f >= phi at grid nodes (+inf psi nodes are counted, not asserted),
/// with phi >= q as a separate line that only maximal sets must satisfy.
CheckReport sandwich_check(const SSDSpace& space, const QPositiveSet& A,
                           const ConvexFunction& f, const GridSpec& grid,
                           double tol);

/// Dominance and involution properties of the intrinsic conjugate of phi:
/// conj(phi) <= q on A, conj(phi) >= max(phi, q) on the grid, double
/// conjugation returns phi, the pairing bound form(b,a) <= q(a) + phi(b),
/// and agreement between the exact conjugate and a brute-force sup over
/// dual_search.
CheckReport conjugate_dominance_check(const SSDSpace& space, const QPositiveSet& A,
                                      const GridSpec& grid,
                                      const GridSpec& dual_search, double tol);

}  // namespace ssdkit
