#include "ssdkit/vz_mas.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssdkit/legendre.hpp"
#include "ssdkit/parallel.hpp"
#include "ssdkit/rng.hpp"

namespace ssdkit {

namespace {

struct SearchTable {
  std::vector<Vector> nodes;   // finite-f nodes only
  std::vector<double> f_minus_q;
  double min_f_minus_q = kInf;
};

SearchTable tabulate(const SSDSpace& space, const ConvexFunction& f,
                     const GridSpec& search) {
  SearchTable table;
  const std::size_t n = search.node_count();
  for (std::size_t k = 0; k < n; ++k) {
    Vector y = search.node(k);
    const double fy = f.eval(y);
    if (fy == kInf) continue;
    const double gap = fy - q(space, y);
    table.min_f_minus_q = std::min(table.min_f_minus_q, gap);
    table.nodes.push_back(std::move(y));
    table.f_minus_q.push_back(gap);
  }
  if (table.nodes.empty()) {
    throw Error(ErrorCode::EmptySearchGrid,
                "search grid does not meet the domain of f");
  }
  return table;
}

VzResidual residual_from_table(const SSDSpace& space, const SearchTable& table,
                               const Vector& c, double extract_tol) {
  VzResidual out;
  double bound = kInf;
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    const double total = table.f_minus_q[i] + p(space, c - table.nodes[i]);
    if (total < out.residual) {
      out.residual = total;
      out.minimizer = table.nodes[i];
    }
    if (std::abs(table.f_minus_q[i]) <= extract_tol) {
      bound = std::min(bound, p(space, c - table.nodes[i]));
    }
  }
  out.pq_bound = bound;
  return out;
}

}  // namespace

VzResidual vz_residual(const SSDSpace& space, const ConvexFunction& f,
                       const Vector& c, const GridSpec& search,
                       double extract_tol) {
  if (!space.banach) {
    throw Error(ErrorCode::NotBanachSpace, "the VZ residual needs p");
  }
  require_dim(c, space.dim, "probe");
  return residual_from_table(space, tabulate(space, f, search), c, extract_tol);
}

VZReport is_vz(const SSDSpace& space, const ConvexFunction& f,
               const VzParams& params) {
  if (!space.banach) {
    throw Error(ErrorCode::NotBanachSpace, "the VZ classification needs p");
  }
  const SearchTable table = tabulate(space, f, params.search);

  std::vector<Vector> pq;
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    if (std::abs(table.f_minus_q[i]) <= params.extract_tol) {
      pq.push_back(table.nodes[i]);
    }
  }

  VZReport report;
  report.probes = params.probes;
  report.pq_sample_size = pq.size();
  report.min_f_minus_q = table.min_f_minus_q;
  report.max_residual = -kInf;
  report.min_residual = kInf;
  report.max_density_gap = -kInf;

  const std::size_t n = params.probes.node_count();
  std::vector<double> residuals(n);
  report.p_density_gaps.assign(n, kInf);
  parallel_for(n, [&](std::size_t k) {
    const Vector c = params.probes.node(k);
    residuals[k] =
        residual_from_table(space, table, c, params.extract_tol).residual;
    double gap = kInf;
    for (const auto& a : pq) gap = std::min(gap, p(space, c - a));
    report.p_density_gaps[k] = gap;
  });
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(residuals[k]) > report.max_residual) {
      report.max_residual = std::abs(residuals[k]);
      report.witness = params.probes.node(k);
    }
    report.min_residual = std::min(report.min_residual, residuals[k]);
    report.max_density_gap = std::max(report.max_density_gap, report.p_density_gaps[k]);
  }

  report.is_vz = report.max_residual <= params.tol;
  const bool f_ge_q = table.min_f_minus_q >= -params.tol;
  report.is_vz_density = f_ge_q && report.max_density_gap <= params.tol;
  report.routes_agree = report.is_vz == report.is_vz_density;

  std::ostringstream notes;
  notes << "search " << params.search.describe() << ", coincidence sample of "
        << pq.size() << " node(s) at |f-q| <= " << params.extract_tol;
  report.notes = notes.str();
  return report;
}

CheckReport vz_check(const SSDSpace& space, const ConvexFunction& f,
                     const VzParams& params, bool conjugate_route) {
  CheckReport out;
  const VZReport report = is_vz(space, f, params);

  CheckLine residual_line = CheckLine::from_violation(
      "vz-residual", "vz.residual", report.max_residual, params.tol, 0.0,
      report.witness.size() ? std::vector<Vector>{report.witness}
                            : std::vector<Vector>{},
      report.notes);
  out.add(residual_line);

  CheckLine density_line;
  density_line.name = "vz-density-route";
  density_line.ref = "vz.density-route";
  density_line.max_violation =
      std::max(-report.min_f_minus_q, report.max_density_gap);
  density_line.tolerance = params.tol;
  density_line.status =
      report.is_vz_density ? CheckStatus::pass : CheckStatus::fail;
  density_line.notes = report.is_vz_density
                           ? "f >= q and the coincidence sample is p-dense"
                           : "route rejects: f >= q or p-density fails";
  out.add(density_line);

  CheckLine agree = CheckLine::from_violation(
      "vz-routes-agree", "vz.route-agreement",
      report.routes_agree ? 0.0 : 1.0, 0.0, 0.0, {},
      std::string("residual route: ") + (report.is_vz ? "vz" : "not vz") +
          ", density route: " + (report.is_vz_density ? "vz" : "not vz"));
  out.add(agree);

  if (conjugate_route &&
      f.kind() != ConvexFunction::Kind::grid_sampled) {
    CheckLine conj_line;
    conj_line.name = "vz-conjugate-route";
    conj_line.ref = "vz.conjugate";
    try {
      const auto g = intrinsic_conjugate(f, space);
      const VZReport creport = is_vz(space, g, params);
      const bool verdicts_match = creport.is_vz == report.is_vz;

      // Coincidence samples extracted from the same grid must match as
      // point lists up to the grid mesh.
      const SearchTable tf = tabulate(space, f, params.search);
      const SearchTable tg = tabulate(space, g, params.search);
      auto extract = [&](const SearchTable& t) {
        std::vector<Vector> pts;
        for (std::size_t i = 0; i < t.nodes.size(); ++i) {
          if (std::abs(t.f_minus_q[i]) <= params.extract_tol) {
            pts.push_back(t.nodes[i]);
          }
        }
        return pts;
      };
      const auto pf = extract(tf);
      const auto pg = extract(tg);
      double hausdorff = 0.0;
      for (const auto& a : pf) {
        double d = kInf;
        for (const auto& b : pg) d = std::min(d, (a - b).norm());
        hausdorff = std::max(hausdorff, d);
      }
      for (const auto& b : pg) {
        double d = kInf;
        for (const auto& a : pf) d = std::min(d, (b - a).norm());
        hausdorff = std::max(hausdorff, d);
      }
      const double mesh_allowance =
          params.search.max_step() * std::sqrt(double(space.dim));
      conj_line = CheckLine::from_violation(
          conj_line.name, conj_line.ref,
          verdicts_match ? hausdorff : kInf, mesh_allowance, 0.0, {},
          std::string("conjugate verdict: ") + (creport.is_vz ? "vz" : "not vz") +
              ", coincidence samples " + std::to_string(pf.size()) + "/" +
              std::to_string(pg.size()) + " node(s)");
    } catch (const Error& e) {
      conj_line.status = CheckStatus::skipped;
      conj_line.notes = std::string("conjugate unavailable: ") + e.what();
    }
    out.add(conj_line);
  }
  return out;
}

double slope_bound(const ConvexFunction& f, double radius) {
  switch (f.kind()) {
    case ConvexFunction::Kind::quadratic: {
      const auto& ff = f.as_quadratic();
      return spectral_norm_power_iteration(ff.Q) * radius + ff.b.norm();
    }
    case ConvexFunction::Kind::max_affine: {
      double m = 0.0;
      for (const auto& s : f.as_max_affine().slopes) m = std::max(m, s.norm());
      return m;
    }
    case ConvexFunction::Kind::point_envelope: {
      const auto& e = f.as_point_envelope();
      double m = 0.0;
      for (std::size_t i = 0; i < e.points.size(); ++i) {
        for (std::size_t j = i + 1; j < e.points.size(); ++j) {
          const double d = (e.points[i] - e.points[j]).norm();
          if (d > 1e-12) {
            m = std::max(m, std::abs(e.values[i] - e.values[j]) / d);
          }
        }
      }
      return m;
    }
    case ConvexFunction::Kind::grid_sampled: {
      const auto& gval = f.as_grid_sampled();
      const auto& grid = gval.grid;
      double m = 0.0;
      const std::size_t n = grid.node_count();
      for (std::size_t k = 0; k < n; ++k) {
        if (gval.values[k] == kInf) continue;
        const auto idx = grid.multi_index(k);
        for (int axis = 0; axis < grid.dim(); ++axis) {
          auto nb = idx;
          if (nb[static_cast<std::size_t>(axis)] + 1 >=
              grid.axes()[static_cast<std::size_t>(axis)].count) {
            continue;
          }
          ++nb[static_cast<std::size_t>(axis)];
          const double fn = gval.values[grid.flat_index(nb)];
          if (fn == kInf) continue;
          m = std::max(m, std::abs(fn - gval.values[k]) /
                              grid.axes()[static_cast<std::size_t>(axis)].step());
        }
      }
      return m;
    }
  }
  return 0.0;
}

CheckReport mas_check(const SSDSpace& space, const SSDDual& dual,
                      const ConvexFunction& f, const MasParams& params) {
  CheckReport out;

  double primal_violation = -kInf;
  Vector primal_witness;
  const std::size_t n = params.primal_grid.node_count();
  for (std::size_t k = 0; k < n; ++k) {
    const Vector x = params.primal_grid.node(k);
    const double fx = f.eval(x);
    if (fx == kInf) continue;
    const double v = q(space, x) - fx;
    if (v > primal_violation) {
      primal_violation = v;
      primal_witness = x;
    }
  }
  out.add(CheckLine::from_violation(
      "f-dominates-q", "mas.primal", primal_violation, params.tol, 0.0,
      primal_violation > -kInf ? std::vector<Vector>{primal_witness}
                               : std::vector<Vector>{}));

  double allowance = 0.0;
  std::string conj_note = "exact conjugate";
  ConvexFunction fstar = [&] {
    if (f.kind() == ConvexFunction::Kind::grid_sampled) {
      double dmax = 0.0;
      for (const auto& ax : params.dual_grid.axes()) {
        dmax += std::max(ax.lo * ax.lo, ax.hi * ax.hi);
      }
      const auto& grid = f.as_grid_sampled().grid;
      allowance = (std::sqrt(dmax) + slope_bound(f, 0.0)) * grid.max_step() *
                  std::sqrt(double(space.dim)) / 2.0;
      std::ostringstream os;
      os << "discrete conjugate underestimates; mesh allowance " << allowance;
      conj_note = os.str();
      return conjugate_star(f, params.dual_grid);
    }
    return conjugate_star(f);
  }();

  double dual_violation = -kInf;
  Vector dual_witness;
  const std::size_t m = params.dual_grid.node_count();
  for (std::size_t k = 0; k < m; ++k) {
    const Vector d = params.dual_grid.node(k);
    const double fs = fstar.eval(d);
    if (fs == kInf) continue;
    const double v = q_tilde(dual, d) - fs;
    if (v > dual_violation) {
      dual_violation = v;
      dual_witness = d;
    }
  }
  out.add(CheckLine::from_violation(
      "conjugate-dominates-dual-q", "mas.dual", dual_violation, params.tol,
      allowance,
      dual_violation > -kInf ? std::vector<Vector>{dual_witness}
                             : std::vector<Vector>{},
      conj_note));
  return out;
}

namespace {

struct QuadraticForms {
  Matrix A;
  Vector a;
  double alpha = 0.0;
};

}  // namespace

CheckReport infconv_duality_check(const SSDSpace& space, const SSDDual& dual,
                                  const ConvexFunction& f,
                                  const DualityCheckParams& params) {
  CheckReport out;
  if (!dual.banach_dual) {
    CheckLine line;
    line.name = "infconv-duality";
    line.ref = "duality.infconv";
    line.status = CheckStatus::skipped;
    line.notes = "dual form violates the norm bound; p_tilde is unavailable";
    out.add(line);
    return out;
  }
  const Matrix& S = space.form_matrix;
  const Matrix& St = dual.dual.form_matrix;
  const Matrix I = Matrix::Identity(space.dim, space.dim);

  bool exact = false;
  if (f.kind() == ConvexFunction::Kind::quadratic) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(f.as_quadratic().Q);
    exact = es.eigenvalues().minCoeff() > 1e-12;
  }

  double worst = -kInf;
  Vector worst_probe;
  double tolerance = params.tol;
  std::string note;

  if (exact) {
    const auto& ff = f.as_quadratic();
    const auto fs = conjugate_star(f).as_quadratic();
    for (const auto& c : params.probes) {
      const double lhs =
          quadratic_infconv(ff.Q - S, ff.b, ff.c, I + S, Vector::Zero(space.dim),
                            0.0, c)
              .value;
      const double rhs =
          quadratic_infconv(fs.Q - St, fs.b, fs.c, I + St,
                            Vector::Zero(space.dim), 0.0, dual.iota(c))
              .value;
      const double gap = std::abs(-lhs - rhs);
      if (gap > worst) {
        worst = gap;
        worst_probe = c;
      }
    }
    note = "closed-form path on " + std::to_string(params.probes.size()) +
           " probe(s)";
  } else {
    ConvexFunction fstar = conjugate_star(f, params.dual_search);
    double box_r = 0.0;
    for (const auto& ax : params.search.axes()) {
      box_r = std::max({box_r, std::abs(ax.lo), std::abs(ax.hi)});
    }
    double dual_box_r = 0.0;
    for (const auto& ax : params.dual_search.axes()) {
      dual_box_r = std::max({dual_box_r, std::abs(ax.lo), std::abs(ax.hi)});
    }
    double probe_r = 0.0;
    for (const auto& c : params.probes) probe_r = std::max(probe_r, c.norm());

    const double g_lhs = slope_bound(f, box_r) + space.spectral_norm * box_r +
                         (1.0 + space.spectral_norm) * (probe_r + box_r);
    const double g_rhs = slope_bound(fstar, dual_box_r) +
                         dual.dual.spectral_norm * dual_box_r +
                         (1.0 + dual.dual.spectral_norm) *
                             (space.spectral_norm * probe_r + dual_box_r);
    const double h = std::max(params.search.max_step(),
                              params.dual_search.max_step());
    tolerance = (g_lhs + g_rhs) * std::sqrt(double(space.dim)) / 2.0 * h;

    for (const auto& c : params.probes) {
      const auto lhs = inf_conv(
          [&](const Vector& y) {
            const double fy = f.eval(y);
            return fy == kInf ? kInf : fy - q(space, y);
          },
          [&](const Vector& z) { return p(space, z); }, c, params.search);
      const auto rhs = inf_conv(
          [&](const Vector& d) {
            const double fs = fstar.eval(d);
            return fs == kInf ? kInf : fs - q_tilde(dual, d);
          },
          [&](const Vector& z) { return p_tilde(dual, z); }, dual.iota(c),
          params.dual_search);
      const double gap = std::abs(-lhs.value - rhs.value);
      if (gap > worst) {
        worst = gap;
        worst_probe = c;
      }
    }
    std::ostringstream os;
    os << "grid path, slope bounds " << g_lhs << " / " << g_rhs << ", mesh " << h;
    note = os.str();
  }

  out.add(CheckLine::from_violation(
      "infconv-duality", "duality.infconv", worst, tolerance, 0.0,
      worst > -kInf ? std::vector<Vector>{worst_probe} : std::vector<Vector>{},
      note));
  return out;
}

CheckReport distance_bounds_check(const SSDSpace& space, const ConvexFunction& f,
                                  const DistanceBoundsParams& params) {
  if (params.pq_sample.empty()) {
    throw Error(ErrorCode::EmptyPqSet,
                "distance bounds need a nonempty coincidence sample");
  }
  CheckReport out;

  double v5 = -kInf, v_infq = -kInf, v_fq = -kInf;
  Vector w5, w_infq, w_fq;
  double max_ratio = -kInf, min_ratio = kInf;
  std::size_t ratio_probes = 0;
  const double allowance = params.mesh;

  for (const auto& d : params.probes) {
    double dist = kInf;
    double inf_q = kInf;
    for (const auto& a : params.pq_sample) {
      dist = std::min(dist, (a - d).norm());
      inf_q = std::min(inf_q, q(space, a - d));
    }
    const double fd = f.eval(d);
    if (fd != kInf) {
      double fq = fd - q(space, d);
      if (fq < 0.0 && fq >= -params.tol) fq = 0.0;
      if (fq >= 0.0) {
        const double bound5 = 5.0 * std::sqrt(fq);
        if (dist - bound5 > v5) {
          v5 = dist - bound5;
          w5 = d;
        }
        const double bound_fq = std::sqrt(2.0) * std::sqrt(fq);
        if (dist - bound_fq > v_fq) {
          v_fq = dist - bound_fq;
          w_fq = d;
        }
      }
    }
    const double neg_infq = std::max(0.0, -inf_q);
    const double bound_infq = std::sqrt(2.0) * std::sqrt(neg_infq);
    if (dist - bound_infq > v_infq) {
      v_infq = dist - bound_infq;
      w_infq = d;
    }
    if (std::sqrt(neg_infq) >= params.ratio_floor) {
      const double ratio = dist / std::sqrt(neg_infq);
      max_ratio = std::max(max_ratio, ratio);
      min_ratio = std::min(min_ratio, ratio);
      ++ratio_probes;
    }
  }

  std::ostringstream sampling;
  sampling << params.pq_sample.size() << "-point coincidence sample, mesh "
           << params.mesh << " added as allowance";
  out.add(CheckLine::from_violation(
      "dist-constant5", "dist.const5", v5, params.tol, allowance,
      v5 > -kInf ? std::vector<Vector>{w5} : std::vector<Vector>{},
      sampling.str()));
  out.add(CheckLine::from_violation(
      "dist-sqrt2-inf-q", "dist.sqrt2-inf-q", v_infq, params.tol, allowance,
      v_infq > -kInf ? std::vector<Vector>{w_infq} : std::vector<Vector>{},
      "negative -inf q clamped to 0 within the mesh allowance"));
  out.add(CheckLine::from_violation(
      "dist-sqrt2-f-minus-q", "dist.sqrt2-fq", v_fq, params.tol, allowance,
      v_fq > -kInf ? std::vector<Vector>{w_fq} : std::vector<Vector>{}));

  CheckLine ratio_line;
  ratio_line.name = "sharpness-ratio";
  ratio_line.ref = "dist.sharpness";
  if (ratio_probes == 0) {
    ratio_line.status = CheckStatus::skipped;
    ratio_line.notes = "no probe clears the ratio denominator floor";
  } else {
    std::ostringstream os;
    os << "achieved ratio in [" << min_ratio << ", " << max_ratio << "] over "
       << ratio_probes << " probe(s), denominator floor " << params.ratio_floor;
    ratio_line = CheckLine::from_violation(
        ratio_line.name, ratio_line.ref, max_ratio - std::sqrt(2.0),
        params.ratio_tol, 0.0, {}, os.str());
  }
  out.add(ratio_line);
  return out;
}

CheckReport pair_bound_check(const SSDSpace& space, const ConvexFunction& f,
                             const PairBoundParams& params) {
  CheckReport out;
  Rng rng(params.seed);

  double sqrt_violation = -kInf;
  double linear_violation = -kInf;
  double min_fq = kInf;
  std::vector<Vector> sqrt_witness;
  int used = 0;
  bool clamped = false;

  for (int t = 0; t < params.pairs; ++t) {
    const Vector b = rng.vector(space.dim, params.lo, params.hi);
    const Vector c = rng.vector(space.dim, params.lo, params.hi);
    const double fb = f.eval(b);
    const double fc = f.eval(c);
    if (fb == kInf || fc == kInf) continue;
    double gb = fb - q(space, b);
    double gc = fc - q(space, c);
    min_fq = std::min({min_fq, gb, gc});
    if (gb < -params.tol || gc < -params.tol) {
      std::ostringstream os;
      os << "f falls below q by " << std::max(-gb, -gc) << " on a sampled pair";
      throw Error(ErrorCode::FBelowQ, os.str());
    }
    if (gb < 0.0 || gc < 0.0) clamped = true;
    gb = std::max(0.0, gb);
    gc = std::max(0.0, gc);
    ++used;

    const double lhs = -q(space, b - c);
    const double root_sum = std::sqrt(gb) + std::sqrt(gc);
    const double v1 = lhs - root_sum * root_sum;
    if (v1 > sqrt_violation) {
      sqrt_violation = v1;
      sqrt_witness = {b, c};
    }
    linear_violation = std::max(linear_violation, lhs - 2.0 * gb - 2.0 * gc);
  }

  std::ostringstream notes;
  notes << used << " finite pair(s) of " << params.pairs << ", seed "
        << params.seed << ", min f-q = " << min_fq;
  if (clamped) notes << "; residuals within -tol clamped to 0";
  out.add(CheckLine::from_violation("pair-sqrt-bound", "pairs.sqrt-bound",
                                    sqrt_violation, params.tol, 0.0,
                                    sqrt_witness, notes.str()));
  out.add(CheckLine::from_violation("pair-linear-bound", "pairs.linear-bound",
                                    linear_violation, params.tol));
  return out;
}

}  // namespace ssdkit
