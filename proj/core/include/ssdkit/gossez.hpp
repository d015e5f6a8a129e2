#pragma once

#include "ssdkit/fitzpatrick.hpp"
#include "ssdkit/qpositive.hpp"
#include "ssdkit/report.hpp"

namespace ssdkit {

/// Dual structure on the pairing side of a space with invertible form S:
/// iota(b) = S b, dual form matrix S^-1 (forced by the compatibility identity
/// dual_form(iota(b), c*) = b.c*), involutive when S*S = I. p_tilde exists
/// only when the dual form satisfies the norm bound; otherwise operations
/// that need it refuse to run.
struct SSDDual {
  SSDSpace base;
  SSDSpace dual;            // same dimension, form matrix S^-1
  bool involutive = false;  // |S*S - I|_max <= 1e-10
  bool banach_dual = false; // base.banach and |S^-1| <= 1 + 1e-9

  Vector iota(const Vector& b) const { return base.form_matrix * b; }
  Vector iota_tilde(const Vector& d) const { return dual.form_matrix * d; }
};

/// Requires invertible S (condition number <= 1e8, else SingularForm).
SSDDual make_dual(const SSDSpace& space);

double q_tilde(const SSDDual& dual, const Vector& d);
/// NotBanachDual when the dual norm bound fails.
double p_tilde(const SSDDual& dual, const Vector& d);

struct GossezMembership {
  bool member = false;
  double gap = 0.0;        // inf over A of q_tilde(iota(a) - d)
  double theta_gap = 0.0;  // q_tilde(d) - theta(d), the second expression
};

/// d belongs to the Gossez extension of A iff gap >= -tol. Both defining
/// expressions are computed and must agree in sign beyond tol.
GossezMembership gossez_membership(const SSDSpace& space, const SSDDual& dual,
                                   const QPositiveSet& A, const Vector& d,
                                   double tol = kEpsIneq);

/// min over the dual grid of theta(d) - q_tilde(d); the set is NI-consistent
/// when the minimum stays above -tol - allowance, where the additive
/// allowance covers theta's underestimate from sampling A.
CheckReport ni_check(const SSDSpace& space, const SSDDual& dual,
                     const QPositiveSet& A, const GridSpec& dual_grid,
                     double tol);

struct ExtensionCheckParams {
  GridSpec dual_grid;
  double tol = kEpsIneq;
  int random_duals = 100;
  std::uint64_t seed = 42;
};

/// iota(A) lies in the extension; when the NI gap clears, the extension
/// computed from memberships coincides on the grid with the coincidence set
/// of theta against q_tilde; and the conjugate chain
/// theta^@ >= phi^* >= theta holds at random duals.
CheckReport extension_consistency_check(const SSDSpace& space, const SSDDual& dual,
                                        const QPositiveSet& A,
                                        const ExtensionCheckParams& params);

}  // namespace ssdkit
