#pragma once

#include "ssdkit/convex_function.hpp"
#include "ssdkit/gossez.hpp"
#include "ssdkit/qpositive.hpp"
#include "ssdkit/report.hpp"

namespace ssdkit {

struct VzResidual {
  double residual = kInf;  // min over the search grid of (f-q)(y) + p(c-y)
  Vector minimizer;
  double pq_bound = kInf;  // inf p over the extracted coincidence sample
};

/// Residual of the defining identity of a VZ function at c, together with
/// the coincidence-set upper bound it can never exceed.
VzResidual vz_residual(const SSDSpace& space, const ConvexFunction& f,
                       const Vector& c, const GridSpec& search,
                       double extract_tol = 1e-6);

struct VzParams {
  GridSpec probes;
  GridSpec search;
  double tol = 1e-3;          // verdict tolerance for both routes
  double extract_tol = 1e-6;  // |f - q| threshold for the coincidence sample
};

struct VZReport {
  bool is_vz = false;          // residual route
  bool is_vz_density = false;  // f >= q plus p-density of the coincidence set
  bool routes_agree = false;
  double max_residual = 0.0;
  double min_residual = 0.0;
  Vector witness;  // probe attaining max_residual
  double min_f_minus_q = 0.0;
  double max_density_gap = 0.0;
  std::vector<double> p_density_gaps;  // per probe
  std::size_t pq_sample_size = 0;
  GridSpec probes;
  std::string notes;
};

/// Classifies f by the residual route and, independently, by the
/// nonnegativity + p-density route; the two verdicts must agree.
VZReport is_vz(const SSDSpace& space, const ConvexFunction& f,
               const VzParams& params);

/// VZReport rendered as report lines, including the conjugate route when the
/// representation supports an exact intrinsic conjugate: the conjugate is a
/// VZ function exactly when f is, with the same coincidence set.
CheckReport vz_check(const SSDSpace& space, const ConvexFunction& f,
                     const VzParams& params, bool conjugate_route = true);

struct MasParams {
  GridSpec primal_grid;
  GridSpec dual_grid;
  double tol = 1e-9;
};

/// f >= q on the primal grid and conj(f) >= q_tilde on the dual grid. The
/// conjugate is exact for closed representations; the grid-sampled route
/// carries an additive mesh allowance.
CheckReport mas_check(const SSDSpace& space, const SSDDual& dual,
                      const ConvexFunction& f, const MasParams& params);

struct DualityCheckParams {
  std::vector<Vector> probes;
  GridSpec search;       // grid-path minimization box, primal side
  GridSpec dual_search;  // grid-path minimization box, dual side
  double tol = 1e-8;     // exact-path tolerance
};

/// Two-sided identity between the primal residual inf-convolution and its
/// dual counterpart composed with iota. Positive-definite quadratics take
/// the exact closed-form path (tolerance `tol`); every other representation
/// is minimized on the grids against a reported C*h bound.
CheckReport infconv_duality_check(const SSDSpace& space, const SSDDual& dual,
                                  const ConvexFunction& f,
                                  const DualityCheckParams& params);

struct DistanceBoundsParams {
  std::vector<Vector> pq_sample;  // sampled coincidence set, nonempty
  std::vector<Vector> probes;
  double mesh = 0.0;        // sample spacing, used as the additive allowance
  double tol = 1e-9;
  double ratio_floor = 0.25;  // min sqrt(-inf q) for the sharpness ratio
  double ratio_tol = 1e-3;
};

/// Distance-to-coincidence-set bounds at each probe: the constant-5 bound
/// against sqrt(f - q), and the sqrt(2) bounds against sqrt(-inf q) and
/// sqrt(f - q); records the achieved sharpness ratio.
CheckReport distance_bounds_check(const SSDSpace& space, const ConvexFunction& f,
                                  const DistanceBoundsParams& params);

struct PairBoundParams {
  int pairs = 1000;
  double lo = -2.0;
  double hi = 2.0;
  std::uint64_t seed = 42;
  double tol = 1e-9;
};

/// Pairwise lower bounds on -q(b - c) for functions dominating q: the
/// squared-sum-of-roots bound and its linear relaxation. Residuals of f - q
/// within -tol are clamped to zero; below that the precondition f >= q has
/// failed and FBelowQ is thrown.
CheckReport pair_bound_check(const SSDSpace& space, const ConvexFunction& f,
                             const PairBoundParams& params);

/// Slope magnitude estimate for f on a centered box of the given radius.
double slope_bound(const ConvexFunction& f, double radius);

}  // namespace ssdkit
