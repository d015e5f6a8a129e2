#include "ssdkit/convex_function.hpp"

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ssdkit/legendre.hpp"
#include "ssdkit/simplex.hpp"

namespace ssdkit {

namespace {

Matrix symmetrized(const Matrix& Q, const char* what) {
  double asym = 0.0, scale = 0.0;
  for (Eigen::Index i = 0; i < Q.rows(); ++i) {
    for (Eigen::Index j = 0; j < Q.cols(); ++j) {
      asym = std::max(asym, std::abs(Q(i, j) - Q(j, i)));
      scale = std::max(scale, std::abs(Q(i, j)));
    }
  }
  if (asym > 1e-12 * std::max(1.0, scale)) {
    throw Error(ErrorCode::InvalidParams,
                std::string(what) + " matrix must be symmetric");
  }
  return 0.5 * (Q + Q.transpose());
}

Matrix inverse_or_throw(const Matrix& M, ErrorCode code, const char* what) {
  Eigen::FullPivLU<Matrix> lu(M);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw Error(code, std::string(what) + " is singular");
  }
  return lu.inverse();
}

}  // namespace

ConvexFunction ConvexFunction::quadratic(Matrix Q, Vector b, double c) {
  if (Q.rows() != Q.cols() || Q.rows() == 0 || b.size() != Q.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "quadratic Q/b dimensions");
  }
  Matrix sym = symmetrized(Q, "quadratic");
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw Error(ErrorCode::InvalidParams,
                "quadratic matrix must be positive semidefinite");
  }
  return ConvexFunction(Quadratic{std::move(sym), std::move(b), c});
}

ConvexFunction ConvexFunction::max_affine(std::vector<Vector> slopes,
                                          std::vector<double> offsets) {
  if (slopes.empty() || slopes.size() != offsets.size()) {
    throw Error(ErrorCode::ImproperFunction,
                "max-affine needs at least one piece, slopes matching offsets");
  }
  for (const auto& m : slopes) {
    if (m.size() != slopes.front().size()) {
      throw Error(ErrorCode::DimensionMismatch, "max-affine slope dimensions");
    }
  }
  return ConvexFunction(MaxAffine{std::move(slopes), std::move(offsets)});
}

ConvexFunction ConvexFunction::grid_sampled(GridSpec grid,
                                            std::vector<double> values) {
  if (values.size() != grid.node_count()) {
    throw Error(ErrorCode::DimensionMismatch, "grid value count mismatch");
  }
  bool any_finite = false;
  for (double v : values) {
    if (std::isnan(v) || v == -kInf) {
      throw Error(ErrorCode::InvalidParams,
                  "grid values must be finite or +inf");
    }
    any_finite = any_finite || std::isfinite(v);
  }
  if (!any_finite) {
    throw Error(ErrorCode::ImproperFunction, "grid function has no finite value");
  }
  return ConvexFunction(GridSampled{std::move(grid), std::move(values)});
}

ConvexFunction ConvexFunction::point_envelope(std::vector<Vector> points,
                                              std::vector<double> values) {
  if (points.empty() || points.size() != values.size()) {
    throw Error(ErrorCode::ImproperFunction,
                "point envelope needs at least one point, values matching points");
  }
  for (const auto& a : points) {
    if (a.size() != points.front().size()) {
      throw Error(ErrorCode::DimensionMismatch, "envelope point dimensions");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidParams, "envelope values must be finite");
    }
  }
  return ConvexFunction(PointEnvelope{std::move(points), std::move(values)});
}

ConvexFunction ConvexFunction::half_sqnorm(int dim) {
  return quadratic(Matrix::Identity(dim, dim), Vector::Zero(dim), 0.0);
}

int ConvexFunction::dim() const {
  switch (kind()) {
    case Kind::quadratic: return static_cast<int>(as_quadratic().Q.rows());
    case Kind::max_affine:
      return static_cast<int>(as_max_affine().slopes.front().size());
    case Kind::grid_sampled: return as_grid_sampled().grid.dim();
    case Kind::point_envelope:
      return static_cast<int>(as_point_envelope().points.front().size());
  }
  return 0;
}

const char* ConvexFunction::kind_name() const {
  switch (kind()) {
    case Kind::quadratic: return "quadratic";
    case Kind::max_affine: return "max-affine";
    case Kind::grid_sampled: return "grid-sampled";
    case Kind::point_envelope: return "point-envelope";
  }
  return "?";
}

double ConvexFunction::eval(const Vector& x) const {
  require_dim(x, dim(), "eval argument");
  switch (kind()) {
    case Kind::quadratic: {
      const auto& f = as_quadratic();
      return 0.5 * x.dot(f.Q * x) + f.b.dot(x) + f.c;
    }
    case Kind::max_affine: {
      const auto& f = as_max_affine();
      double best = -kInf;
      for (std::size_t i = 0; i < f.slopes.size(); ++i) {
        best = std::max(best, f.slopes[i].dot(x) - f.offsets[i]);
      }
      return best;
    }
    case Kind::grid_sampled: {
      const auto& f = as_grid_sampled();
      return f.values[f.grid.locate(x)];
    }
    case Kind::point_envelope: {
      const auto& f = as_point_envelope();
      // min sum(lambda_i v_i) s.t. sum(lambda_i a_i) = x, sum(lambda_i) = 1,
      // lambda >= 0; infeasible means x is outside the convex hull.
      const int d = static_cast<int>(x.size());
      const int n = static_cast<int>(f.points.size());
      Matrix A(d + 1, n);
      for (int j = 0; j < n; ++j) {
        A.col(j).head(d) = f.points[static_cast<std::size_t>(j)];
        A(d, j) = 1.0;
      }
      Vector rhs(d + 1);
      rhs.head(d) = x;
      rhs[d] = 1.0;
      Vector cost(n);
      for (int j = 0; j < n; ++j) cost[j] = f.values[static_cast<std::size_t>(j)];
      const LpResult lp = solve_equality_lp(A, rhs, cost);
      if (lp.status == LpStatus::infeasible) return kInf;
      if (lp.status != LpStatus::optimal) {
        throw Error(ErrorCode::LPNumericalFailure,
                    std::string("envelope LP ") +
                        (lp.status == LpStatus::unbounded ? "unbounded" : "stalled") +
                        " at n=" + std::to_string(n));
      }
      return lp.value;
    }
  }
  return kInf;
}

namespace {

ConvexFunction conjugate_quadratic(const ConvexFunction::Quadratic& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(f.Q);
  const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, lmax)) {
    throw Error(ErrorCode::DegenerateQuadratic,
                "closed-form conjugate needs a positive definite quadratic");
  }
  Matrix Qi = inverse_or_throw(f.Q, ErrorCode::DegenerateQuadratic, "quadratic");
  Qi = 0.5 * (Qi + Qi.transpose());
  Vector bi = -(Qi * f.b);
  const double ci = 0.5 * f.b.dot(Qi * f.b) - f.c;
  return ConvexFunction::quadratic(std::move(Qi), std::move(bi), ci);
}

}  // namespace

ConvexFunction conjugate_star(const ConvexFunction& f) {
  switch (f.kind()) {
    case ConvexFunction::Kind::quadratic:
      return conjugate_quadratic(f.as_quadratic());
    case ConvexFunction::Kind::max_affine: {
      const auto& m = f.as_max_affine();
      return ConvexFunction::point_envelope(m.slopes, m.offsets);
    }
    case ConvexFunction::Kind::point_envelope: {
      const auto& e = f.as_point_envelope();
      return ConvexFunction::max_affine(e.points, e.values);
    }
    case ConvexFunction::Kind::grid_sampled:
      throw Error(ErrorCode::InvalidParams,
                  "grid-sampled conjugation needs a dual grid");
  }
  throw Error(ErrorCode::InvalidParams, "unreachable");
}

ConvexFunction conjugate_star(const ConvexFunction& f, const GridSpec& dual_grid) {
  if (f.kind() != ConvexFunction::Kind::grid_sampled) {
    return conjugate_star(f);
  }
  const auto& g = f.as_grid_sampled();
  auto values = discrete_legendre_transform(g.grid, g.values, dual_grid);
  return ConvexFunction::grid_sampled(dual_grid, std::move(values));
}

ConvexFunction intrinsic_conjugate(const ConvexFunction& f, const SSDSpace& space) {
  if (f.dim() != space.dim) {
    throw Error(ErrorCode::DimensionMismatch, "function/space dimensions");
  }
  const Matrix& S = space.form_matrix;
  switch (f.kind()) {
    case ConvexFunction::Kind::quadratic: {
      // f*(Sc): compose the closed-form conjugate with the form matrix.
      const auto star = conjugate_star(f).as_quadratic();
      Matrix Q = S * star.Q * S;
      Q = 0.5 * (Q + Q.transpose());
      return ConvexFunction::quadratic(std::move(Q), S * star.b, star.c);
    }
    case ConvexFunction::Kind::point_envelope: {
      const auto& e = f.as_point_envelope();
      std::vector<Vector> slopes;
      slopes.reserve(e.points.size());
      for (const auto& a : e.points) slopes.push_back(S * a);
      return ConvexFunction::max_affine(std::move(slopes), e.values);
    }
    case ConvexFunction::Kind::max_affine: {
      // The conjugate's domain is the hull of the slopes pulled back through
      // S; only an invertible form keeps that a point envelope.
      const Matrix Si = inverse_or_throw(S, ErrorCode::SingularForm, "form matrix");
      const auto& m = f.as_max_affine();
      std::vector<Vector> points;
      points.reserve(m.slopes.size());
      for (const auto& s : m.slopes) points.push_back(Si * s);
      return ConvexFunction::point_envelope(std::move(points), m.offsets);
    }
    case ConvexFunction::Kind::grid_sampled:
      throw Error(ErrorCode::InvalidParams,
                  "grid-sampled intrinsic conjugation needs a dual grid");
  }
  throw Error(ErrorCode::InvalidParams, "unreachable");
}

ConvexFunction intrinsic_conjugate(const ConvexFunction& f, const SSDSpace& space,
                                   const GridSpec& dual_grid) {
  if (f.kind() != ConvexFunction::Kind::grid_sampled) {
    return intrinsic_conjugate(f, space);
  }
  const auto& g = f.as_grid_sampled();
  if (g.grid.dim() != space.dim || dual_grid.dim() != space.dim) {
    throw Error(ErrorCode::DimensionMismatch, "grid/space dimensions");
  }
  const std::size_t np = g.grid.node_count();
  std::vector<Vector> nodes;
  nodes.reserve(np);
  for (std::size_t j = 0; j < np; ++j) nodes.push_back(g.grid.node(j));

  const std::size_t nd = dual_grid.node_count();
  std::vector<double> out(nd, -kInf);
  for (std::size_t k = 0; k < nd; ++k) {
    const Vector c = dual_grid.node(k);
    double best = -kInf;
    for (std::size_t j = 0; j < np; ++j) {
      if (g.values[j] == kInf) continue;
      best = std::max(best, form(space, nodes[j], c) - g.values[j]);
    }
    out[k] = best;
  }
  return ConvexFunction::grid_sampled(dual_grid, std::move(out));
}

InfConvValue inf_conv(const GridFunction& h, const GridFunction& k,
                      const Vector& x, const GridSpec& search) {
  if (search.dim() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "search grid dimension");
  }
  InfConvValue best;
  bool dom_h_met = false;
  const std::size_t n = search.node_count();
  for (std::size_t j = 0; j < n; ++j) {
    const Vector y = search.node(j);
    const double hy = h(y);
    if (hy == kInf) continue;
    dom_h_met = true;
    const double total = hy + k(x - y);
    if (total < best.value) {
      best.value = total;
      best.minimizer = y;
    }
  }
  if (!dom_h_met) {
    throw Error(ErrorCode::EmptySearchGrid,
                "search grid does not meet the domain of the first integrand");
  }
  return best;
}

InfConvValue inf_conv(const ConvexFunction& h, const ConvexFunction& k,
                      const Vector& x, const GridSpec& search) {
  if (h.kind() == ConvexFunction::Kind::quadratic &&
      k.kind() == ConvexFunction::Kind::quadratic) {
    const auto& qh = h.as_quadratic();
    const auto& qk = k.as_quadratic();
    Eigen::SelfAdjointEigenSolver<Matrix> eh(qh.Q), ek(qk.Q);
    if (eh.eigenvalues().minCoeff() > 1e-12 && ek.eigenvalues().minCoeff() > 1e-12) {
      return quadratic_infconv(qh.Q, qh.b, qh.c, qk.Q, qk.b, qk.c, x);
    }
  }
  return inf_conv([&](const Vector& y) { return h.eval(y); },
                  [&](const Vector& z) { return k.eval(z); }, x, search);
}

ConvexFunction inf_conv_quadratic(const ConvexFunction& h, const ConvexFunction& k) {
  const auto hs = conjugate_star(h).as_quadratic();
  const auto ks = conjugate_star(k).as_quadratic();
  Matrix Q = hs.Q + ks.Q;
  return conjugate_star(
      ConvexFunction::quadratic(std::move(Q), hs.b + ks.b, hs.c + ks.c));
}

InfConvValue quadratic_infconv(const Matrix& A, const Vector& a, double alpha,
                               const Matrix& B, const Vector& b, double beta,
                               const Vector& x) {
  Matrix H = A + B;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.transpose()));
  if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::DegenerateQuadratic,
                "quadratic inf-convolution needs A + B positive definite");
  }
  const Vector y = H.ldlt().solve(B * x + b - a);
  const Vector r = x - y;
  InfConvValue out;
  out.value = 0.5 * y.dot(A * y) + a.dot(y) + alpha + 0.5 * r.dot(B * r) +
              b.dot(r) + beta;
  out.minimizer = y;
  return out;
}

BiconjugateReport biconjugate_check(const ConvexFunction& f, const GridSpec& grid,
                                    const GridSpec& dual_grid) {
  const std::size_t n = grid.node_count();
  std::vector<double> fv(n);
  for (std::size_t j = 0; j < n; ++j) fv[j] = f.eval(grid.node(j));

  const auto star = discrete_legendre_transform(grid, fv, dual_grid);
  // f* of a proper sample is finite everywhere; -inf would mean no finite
  // value survived, which grid_sampled construction already rejects.
  std::vector<double> star_cost(star.size());
  for (std::size_t j = 0; j < star.size(); ++j) {
    star_cost[j] = (star[j] == -kInf) ? kInf : star[j];
  }
  const auto bi = discrete_legendre_transform(dual_grid, star_cost, grid);

  BiconjugateReport report;
  report.min_gap = kInf;
  report.max_gap = -kInf;
  for (std::size_t j = 0; j < n; ++j) {
    if (!grid.is_interior(j)) continue;
    if (fv[j] == kInf) continue;
    const double gap = fv[j] - bi[j];
    ++report.interior_nodes;
    if (gap > report.max_gap) {
      report.max_gap = gap;
      report.worst_node = grid.node(j);
    }
    report.min_gap = std::min(report.min_gap, gap);
  }
  if (report.interior_nodes == 0) {
    report.max_gap = report.min_gap = 0.0;
  }

  // Slope estimate from finite differences between adjacent finite nodes.
  double lip = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (fv[j] == kInf) continue;
    const auto idx = grid.multi_index(j);
    for (int axis = 0; axis < grid.dim(); ++axis) {
      auto nb = idx;
      if (nb[static_cast<std::size_t>(axis)] + 1 >=
          grid.axes()[static_cast<std::size_t>(axis)].count) {
        continue;
      }
      ++nb[static_cast<std::size_t>(axis)];
      const double fn = fv[grid.flat_index(nb)];
      if (fn == kInf) continue;
      lip = std::max(lip, std::abs(fn - fv[j]) /
                              grid.axes()[static_cast<std::size_t>(axis)].step());
    }
  }
  report.lipschitz = lip;
  report.tolerance = lip * grid.max_step();
  return report;
}

std::vector<Vector> coincidence_set(const SSDSpace& space, const ConvexFunction& f,
                                    const std::vector<Vector>& candidates,
                                    double tol) {
  std::vector<Vector> out;
  for (const auto& b : candidates) {
    const double fb = f.eval(b);
    if (fb == kInf) continue;
    const double qb = q(space, b);
    if (fb < qb - tol) {
      std::ostringstream os;
      os << "f falls below q by " << (qb - fb) << " (tolerance " << tol << ")";
      throw Error(ErrorCode::FBelowQ, os.str());
    }
    if (std::abs(fb - qb) <= tol) out.push_back(b);
  }
  return out;
}

GridSpec map_box(const Matrix& M, const GridSpec& grid) {
  if (M.cols() != grid.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "map_box dimensions");
  }
  std::vector<GridAxis> axes(static_cast<std::size_t>(M.rows()));
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    double lo = 0.0, hi = 0.0;
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      const auto& ax = grid.axes()[static_cast<std::size_t>(j)];
      const double a = M(i, j) * ax.lo;
      const double b = M(i, j) * ax.hi;
      lo += std::min(a, b);
      hi += std::max(a, b);
    }
    if (lo == hi) {
      lo -= 1.0;
      hi += 1.0;
    }
    axes[static_cast<std::size_t>(i)] =
        GridAxis{lo, hi, grid.axes()[static_cast<std::size_t>(
                             std::min<Eigen::Index>(i, grid.dim() - 1))].count};
  }
  return GridSpec(std::move(axes));
}

ConvexFunction load_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IOError, "cannot open grid file '" + path + "'");
  std::string header;
  if (!std::getline(in, header) || header.rfind("# grid:", 0) != 0) {
    throw Error(ErrorCode::IOError, path + ": missing '# grid:' header");
  }
  std::vector<GridAxis> axes;
  {
    std::string spec_text = header.substr(7);
    std::istringstream axis_stream(spec_text);
    std::string axis_text;
    while (std::getline(axis_stream, axis_text, ';')) {
      GridAxis ax;
      char comma1 = 0, comma2 = 0;
      std::istringstream cell(axis_text);
      if (!(cell >> ax.lo >> comma1 >> ax.hi >> comma2 >> ax.count) ||
          comma1 != ',' || comma2 != ',') {
        throw Error(ErrorCode::IOError, path + ": bad grid header '" + axis_text + "'");
      }
      axes.push_back(ax);
    }
  }
  GridSpec grid(std::move(axes));

  std::vector<double> values;
  values.reserve(grid.node_count());
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                   line[pos] == ',' || line[pos] == '\r')) {
        ++pos;
      }
      if (pos >= line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && line[end] != ',' && line[end] != ' ' &&
             line[end] != '\t' && line[end] != '\r') {
        ++end;
      }
      const std::string cell = line.substr(pos, end - pos);
      if (cell == "inf" || cell == "+inf" || cell == "Inf") {
        values.push_back(kInf);
      } else {
        double v = 0.0;
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
          throw Error(ErrorCode::IOError, path + ":" + std::to_string(lineno) +
                                              ": bad value '" + cell + "'");
        }
        values.push_back(v);
      }
      pos = end;
    }
  }
  if (values.size() != grid.node_count()) {
    throw Error(ErrorCode::IOError,
                path + ": expected " + std::to_string(grid.node_count()) +
                    " values, found " + std::to_string(values.size()));
  }
  return ConvexFunction::grid_sampled(std::move(grid), std::move(values));
}

void save_grid_csv(const std::string& path, const ConvexFunction& f) {
  if (f.kind() != ConvexFunction::Kind::grid_sampled) {
    throw Error(ErrorCode::InvalidParams, "grid CSV export needs a grid-sampled function");
  }
  const auto& g = f.as_grid_sampled();
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IOError, "cannot write grid file '" + path + "'");
  out.precision(17);
  out << "# grid:";
  for (std::size_t a = 0; a < g.grid.axes().size(); ++a) {
    const auto& ax = g.grid.axes()[a];
    out << (a ? ";" : " ") << ax.lo << "," << ax.hi << "," << ax.count;
  }
  out << "\n";
  const int last = g.grid.axes().back().count;
  for (std::size_t j = 0; j < g.values.size(); ++j) {
    if (g.values[j] == kInf) {
      out << "inf";
    } else {
      out << g.values[j];
    }
    out << (((j + 1) % static_cast<std::size_t>(last)) == 0 ? "\n" : ",");
  }
}

}  // namespace ssdkit
