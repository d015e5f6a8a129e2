#include "ssdkit/fitzpatrick.hpp"

#include <cmath>
#include <sstream>

#include "ssdkit/parallel.hpp"

namespace ssdkit {

namespace {

std::vector<double> q_values(const SSDSpace& space, const QPositiveSet& A) {
  std::vector<double> qs;
  qs.reserve(A.size());
  for (const auto& a : A.points()) qs.push_back(q(space, a));
  return qs;
}

}  // namespace

FitzpatrickTriple fitzpatrick_triple(const SSDSpace& space, const QPositiveSet& A) {
  const auto qs = q_values(space, A);
  std::vector<Vector> phi_slopes;
  phi_slopes.reserve(A.size());
  for (const auto& a : A.points()) phi_slopes.push_back(space.form_matrix * a);

  FitzpatrickTriple triple{
      ConvexFunction::max_affine(std::move(phi_slopes), qs),
      ConvexFunction::max_affine(A.points(), qs),
      ConvexFunction::point_envelope(A.points(), qs),
  };

  for (std::size_t i = 0; i < A.size(); ++i) {
    const Vector& a = A.points()[i];
    const double scale = 1.0 + std::abs(qs[i]);
    if (std::abs(triple.phi.eval(a) - qs[i]) > 1e-9 * scale) {
      throw Error(ErrorCode::InvalidParams,
                  "phi does not coincide with q on the set");
    }
    if (triple.psi.eval(a) > qs[i] + 1e-9 * scale) {
      throw Error(ErrorCode::InvalidParams, "psi exceeds q on the set");
    }
  }
  return triple;
}

PhiRoutes phi_two_route(const SSDSpace& space, const QPositiveSet& A,
                        const Vector& b) {
  require_dim(b, space.dim, "phi argument");
  double by_sup = -kInf;
  double min_q_gap = kInf;
  for (const auto& a : A.points()) {
    by_sup = std::max(by_sup, form(space, a, b) - q(space, a));
    min_q_gap = std::min(min_q_gap, q(space, a - b));
  }
  return PhiRoutes{by_sup, q(space, b) - min_q_gap};
}

double phi(const SSDSpace& space, const QPositiveSet& A, const Vector& b) {
  const auto routes = phi_two_route(space, A, b);
  const double scale =
      1.0 + std::abs(q(space, b)) + std::abs(routes.by_sup);
  if (std::abs(routes.by_sup - routes.by_inf_gap) > 1e-9 * scale) {
    std::ostringstream os;
    os << "phi route disagreement: " << routes.by_sup << " vs "
       << routes.by_inf_gap;
    throw std::logic_error(os.str());
  }
  return routes.by_sup;
}

double theta(const SSDSpace& space, const QPositiveSet& A, const Vector& d) {
  require_dim(d, space.dim, "theta argument");
  double best = -kInf;
  for (const auto& a : A.points()) {
    best = std::max(best, a.dot(d) - q(space, a));
  }
  return best;
}

double psi(const SSDSpace& space, const QPositiveSet& A, const Vector& b) {
  return ConvexFunction::point_envelope(A.points(), q_values(space, A)).eval(b);
}

double phi_intrinsic_conjugate_at(const SSDSpace& space, const QPositiveSet& A,
                                  const Vector& c) {
  require_dim(c, space.dim, "conjugate argument");
  std::vector<Vector> slopes;
  slopes.reserve(A.size());
  for (const auto& a : A.points()) slopes.push_back(space.form_matrix * a);
  const auto star = ConvexFunction::point_envelope(std::move(slopes),
                                                   q_values(space, A));
  return star.eval(space.form_matrix * c);
}

CheckReport sandwich_check(const SSDSpace& space, const QPositiveSet& A,
                           const ConvexFunction& f, const GridSpec& grid,
                           double tol) {
  const auto triple = fitzpatrick_triple(space, A);
  CheckReport report;

  // Per-node values into slots, reduced sequentially afterwards; the psi
  // column is the expensive one (one envelope program per node).
  const std::size_t n = grid.node_count();
  std::vector<double> phi_col(n), f_col(n), psi_col(n), q_col(n);
  parallel_for(n, [&](std::size_t k) {
    const Vector x = grid.node(k);
    phi_col[k] = triple.phi.eval(x);
    f_col[k] = f.eval(x);
    psi_col[k] = triple.psi.eval(x);
    q_col[k] = q(space, x);
  });

  double upper_violation = -kInf;
  double lower_violation = -kInf;
  double q_violation = -kInf;
  Vector upper_witness, lower_witness, q_witness;
  std::size_t psi_infinite = 0;

  for (std::size_t k = 0; k < n; ++k) {
    if (psi_col[k] == kInf) {
      ++psi_infinite;
    } else if (f_col[k] != kInf && f_col[k] - psi_col[k] > upper_violation) {
      upper_violation = f_col[k] - psi_col[k];
      upper_witness = grid.node(k);
    }
    if (f_col[k] != kInf && phi_col[k] - f_col[k] > lower_violation) {
      lower_violation = phi_col[k] - f_col[k];
      lower_witness = grid.node(k);
    }
    if (q_col[k] - phi_col[k] > q_violation) {
      q_violation = q_col[k] - phi_col[k];
      q_witness = grid.node(k);
    }
  }

  std::ostringstream skipped;
  skipped << psi_infinite << " node(s) outside conv(A) skipped; sampling: "
          << A.sampling();
  report.add(CheckLine::from_violation(
      "psi-dominates-f", "sandwich.upper", upper_violation, tol, 0.0,
      upper_violation > -kInf ? std::vector<Vector>{upper_witness}
                              : std::vector<Vector>{},
      skipped.str()));
  report.add(CheckLine::from_violation(
      "f-dominates-phi", "sandwich.lower", lower_violation, tol, 0.0,
      lower_violation > -kInf ? std::vector<Vector>{lower_witness}
                              : std::vector<Vector>{}));
  report.add(CheckLine::from_violation(
      "phi-dominates-q", "sandwich.phi-ge-q", q_violation, tol, 0.0,
      q_violation > -kInf ? std::vector<Vector>{q_witness}
                          : std::vector<Vector>{},
      "expected only for maximal A"));
  return report;
}

CheckReport conjugate_dominance_check(const SSDSpace& space, const QPositiveSet& A,
                                      const GridSpec& grid,
                                      const GridSpec& dual_search, double tol) {
  const auto triple = fitzpatrick_triple(space, A);
  CheckReport report;

  std::vector<Vector> star_points;
  star_points.reserve(A.size());
  for (const auto& a : A.points()) star_points.push_back(space.form_matrix * a);
  const auto star = ConvexFunction::point_envelope(star_points, q_values(space, A));
  const auto conj_at = [&](const Vector& c) {
    return star.eval(space.form_matrix * c);
  };

  // (a) conj(phi) <= q on A itself.
  double on_set_violation = -kInf;
  for (const auto& a : A.points()) {
    on_set_violation = std::max(on_set_violation, conj_at(a) - q(space, a));
  }
  report.add(CheckLine::from_violation("conj-phi-below-q-on-set", "fitz.conj.on-set",
                                       on_set_violation, tol));

  // (b) conj(phi) >= max(phi, q) on grid nodes, and the brute-force sup over
  // dual_search never exceeds the exact value.
  const std::size_t m = dual_search.node_count();
  std::vector<Vector> dual_nodes(m);
  std::vector<double> phi_at_dual(m);
  for (std::size_t j = 0; j < m; ++j) {
    dual_nodes[j] = dual_search.node(j);
    phi_at_dual[j] = triple.phi.eval(dual_nodes[j]);
  }

  const std::size_t n = grid.node_count();
  std::vector<double> exact_col(n), lower_col(n), brute_col(n);
  parallel_for(n, [&](std::size_t k) {
    const Vector c = grid.node(k);
    exact_col[k] = conj_at(c);
    lower_col[k] = std::max(triple.phi.eval(c), q(space, c));
    double brute = -kInf;
    for (std::size_t j = 0; j < m; ++j) {
      brute = std::max(brute, form(space, dual_nodes[j], c) - phi_at_dual[j]);
    }
    brute_col[k] = brute;
  });

  double dominance_violation = -kInf;
  double brute_violation = -kInf;
  Vector dominance_witness;
  for (std::size_t k = 0; k < n; ++k) {
    if (exact_col[k] == kInf) continue;
    if (lower_col[k] - exact_col[k] > dominance_violation) {
      dominance_violation = lower_col[k] - exact_col[k];
      dominance_witness = grid.node(k);
    }
    brute_violation = std::max(brute_violation, brute_col[k] - exact_col[k]);
  }
  report.add(CheckLine::from_violation(
      "conj-phi-dominates-phi-and-q", "fitz.conj.dominates", dominance_violation,
      tol, 0.0,
      dominance_violation > -kInf ? std::vector<Vector>{dominance_witness}
                                  : std::vector<Vector>{}));
  report.add(CheckLine::from_violation(
      "brute-force-conjugate-below-exact", "fitz.conj.brute-consistency",
      brute_violation, tol, 0.0, {},
      "sup over " + dual_search.describe() + " never exceeds the exact value"));

  // (c) double conjugation returns phi; exact polyhedral route when the form
  // is invertible, otherwise skipped.
  CheckLine involution;
  involution.name = "double-conjugation-returns-phi";
  involution.ref = "fitz.conj.involution";
  try {
    const auto conj = intrinsic_conjugate(triple.phi, space);
    const auto back = intrinsic_conjugate(conj, space);
    double violation = -kInf;
    for (std::size_t k = 0; k < n; ++k) {
      const Vector b = grid.node(k);
      violation = std::max(violation, std::abs(back.eval(b) - triple.phi.eval(b)));
    }
    involution = CheckLine::from_violation(involution.name, involution.ref,
                                           violation, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularForm) throw;
    involution.status = CheckStatus::skipped;
    involution.notes = "form matrix is singular; polyhedral round trip unavailable";
  }
  report.add(involution);

  // Pairing bound: form(b,a) <= q(a) + phi(b) for a in A, b on the grid.
  double pairing_violation = -kInf;
  for (std::size_t k = 0; k < n; ++k) {
    const Vector b = grid.node(k);
    const double phi_b = triple.phi.eval(b);
    for (std::size_t i = 0; i < A.size(); ++i) {
      const Vector& a = A.points()[i];
      pairing_violation = std::max(
          pairing_violation, form(space, b, a) - q(space, a) - phi_b);
    }
  }
  report.add(CheckLine::from_violation("pairing-bound", "fitz.pairing-bound",
                                       pairing_violation, tol));
  return report;
}

}  // namespace ssdkit
