#pragma once

#include "ssdkit/types.hpp"

namespace ssdkit {

enum class LpStatus { optimal, infeasible, unbounded, failed };

struct LpResult {
  LpStatus status = LpStatus::failed;
  double value = 0.0;
  Vector solution;  // primal x at optimum
};

/// Two-phase dense tableau simplex for
///   min c'x  subject to  A x = b,  x >= 0.
/// Sized for small dense instances (few equality rows, up to a few thousand
/// columns). Dantzig pricing with a Bland fallback against cycling.
LpResult solve_equality_lp(const Matrix& A, const Vector& b, const Vector& c,
                           double pivot_tol = 1e-11);

}  // namespace ssdkit
