#include "ssdkit/qpositive.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ssdkit {

QPositiveResult is_q_positive(const SSDSpace& space,
                              const std::vector<Vector>& points, double eps) {
  if (points.empty()) {
    throw Error(ErrorCode::EmptySet, "q-positivity is defined for nonempty sets");
  }
  for (const auto& pt : points) require_dim(pt, space.dim, "set point");

  double min_q = kInf;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double v = q(space, points[i] - points[j]);
      if (v < min_q) {
        min_q = v;
        wi = i;
        wj = j;
      }
    }
  }
  QPositiveResult result;
  result.positive = points.size() < 2 || min_q >= -eps;
  if (!result.positive) {
    result.violation = Violation{{points[wi], points[wj]}, min_q, -eps};
  }
  return result;
}

QPositiveSet::QPositiveSet(const SSDSpace& space, std::vector<Vector> points,
                           std::string generator, std::string sampling,
                           double mesh)
    : space_(&space),
      points_(std::move(points)),
      generator_(std::move(generator)),
      sampling_(std::move(sampling)),
      mesh_(mesh) {
  auto res = is_q_positive(space, points_);
  if (!res.positive) {
    std::ostringstream os;
    os << "set '" << generator_ << "' is not q-positive: witness pair with q = "
       << res.violation->value;
    throw Error(ErrorCode::InvalidParams, os.str());
  }
}

double QPositiveSet::radius() const {
  double r = 0.0;
  for (const auto& pt : points_) r = std::max(r, pt.norm());
  return r;
}

std::vector<Violation> maximality_falsifier(const SSDSpace& space,
                                            const QPositiveSet& A,
                                            const GridSpec& grid,
                                            double dist_floor, double eps) {
  if (grid.dim() != space.dim) {
    throw Error(ErrorCode::DimensionMismatch, "falsifier grid dimension");
  }
  std::vector<Violation> candidates;
  const std::size_t n = grid.node_count();
  for (std::size_t k = 0; k < n; ++k) {
    const Vector c = grid.node(k);
    double dist = kInf;
    for (const auto& a : A.points()) dist = std::min(dist, (a - c).norm());
    if (dist <= dist_floor) continue;
    double inf_q = kInf;
    for (const auto& a : A.points()) inf_q = std::min(inf_q, q(space, a - c));
    if (inf_q >= -eps) {
      candidates.push_back(Violation{{c}, inf_q, -eps});
    }
  }
  return candidates;
}

namespace {

std::vector<double> sample_range(double lo, double hi, int count) {
  if (count < 1 || !(lo < hi)) {
    throw Error(ErrorCode::InvalidParams, "sample range needs lo < hi, count >= 1");
  }
  std::vector<double> ts(static_cast<std::size_t>(count));
  if (count == 1) {
    ts[0] = lo;
    return ts;
  }
  const double step = (hi - lo) / (count - 1);
  for (int k = 0; k < count; ++k) ts[static_cast<std::size_t>(k)] = lo + k * step;
  return ts;
}

std::string range_note(const char* param, double lo, double hi, int count) {
  std::ostringstream os;
  os << param << " in [" << lo << "," << hi << "], " << count << " samples";
  return os.str();
}

}  // namespace

SetSample sample_builtin_set(const SSDSpace& space, const std::string& name,
                             const SetParams& params) {
  const auto ts = [&] { return sample_range(params.lo, params.hi, params.count); };

  if (name == "diagonal") {
    std::vector<Vector> pts;
    for (double t : ts()) pts.push_back(Vector::Constant(space.dim, t));
    const double mesh =
        (params.hi - params.lo) / (params.count - 1) * std::sqrt(double(space.dim));
    return SetSample{std::move(pts), "diagonal",
                     range_note("t", params.lo, params.hi, params.count), mesh};
  }
  if (name == "helix") {
    if (space.dim != 3) {
      throw Error(ErrorCode::InvalidParams, "helix needs a 3-dimensional space");
    }
    std::vector<Vector> pts;
    for (double t : ts()) {
      Vector v(3);
      v << std::cos(t), std::sin(t), params.lambda * t;
      pts.push_back(v);
    }
    std::ostringstream gen;
    gen << "helix(lambda=" << params.lambda << ")";
    const double step = (params.hi - params.lo) / (params.count - 1);
    return SetSample{std::move(pts), gen.str(),
                     range_note("theta", params.lo, params.hi, params.count),
                     step * std::hypot(1.0, params.lambda)};
  }
  if (name == "line") {
    if (params.direction.size() != space.dim) {
      throw Error(ErrorCode::InvalidParams, "line direction must match space dim");
    }
    std::vector<Vector> pts;
    for (double t : ts()) pts.push_back(t * params.direction);
    const double step = (params.hi - params.lo) / (params.count - 1);
    return SetSample{std::move(pts), "line",
                     range_note("t", params.lo, params.hi, params.count),
                     step * params.direction.norm()};
  }
  if (name == "sgn-graph") {
    if (space.dim != 2) {
      throw Error(ErrorCode::InvalidParams, "sgn-graph needs a 2-dimensional space");
    }
    // Graph of the sign function, with the vertical segment at 0 that makes
    // it maximal monotone.
    std::vector<Vector> pts;
    for (double t : ts()) {
      if (t == 0.0) continue;
      Vector v(2);
      v << t, (t > 0 ? 1.0 : -1.0);
      pts.push_back(v);
    }
    const int vseg = std::max(3, params.count / 4);
    for (double y : sample_range(-1.0, 1.0, vseg)) {
      Vector v(2);
      v << 0.0, y;
      pts.push_back(v);
    }
    const double step = (params.hi - params.lo) / (params.count - 1);
    return SetSample{std::move(pts), "sgn-graph",
                     range_note("x", params.lo, params.hi, params.count),
                     std::max(step, 2.0 / (vseg - 1))};
  }
  if (name == "box") {
    // Cartesian grid sample of the box [lo,hi]^dim; q-positive only where
    // the space makes every set q-positive.
    std::vector<Vector> pts;
    const auto line = ts();
    std::vector<std::size_t> idx(static_cast<std::size_t>(space.dim), 0);
    const std::size_t total = [&] {
      std::size_t n = 1;
      for (int i = 0; i < space.dim; ++i) n *= line.size();
      return n;
    }();
    for (std::size_t k = 0; k < total; ++k) {
      Vector v(space.dim);
      std::size_t rest = k;
      for (int i = space.dim - 1; i >= 0; --i) {
        v[i] = line[rest % line.size()];
        rest /= line.size();
      }
      pts.push_back(std::move(v));
    }
    const double step = (params.hi - params.lo) / (params.count - 1);
    return SetSample{std::move(pts), "box",
                     range_note("per-axis", params.lo, params.hi, params.count),
                     step * std::sqrt(double(space.dim))};
  }
  if (name == "monotone-graph") {
    if (space.dim != 2) {
      throw Error(ErrorCode::InvalidParams,
                  "monotone-graph needs a 2-dimensional space");
    }
    const auto& bp = params.breakpoints;
    if (bp.size() < 2) {
      throw Error(ErrorCode::InvalidParams, "monotone-graph needs >= 2 breakpoints");
    }
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      if (bp[i].size() != 2 || bp[i + 1].size() != 2 || bp[i][0] > bp[i + 1][0] ||
          bp[i][1] > bp[i + 1][1]) {
        throw Error(ErrorCode::InvalidParams,
                    "monotone-graph breakpoints must be planar and nondecreasing");
      }
    }
    // Piecewise-linear interpolation along the polyline, params.count samples
    // per segment.
    std::vector<Vector> pts;
    double mesh = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      const int per_seg = std::max(2, params.count / int(bp.size() - 1));
      for (double u : sample_range(0.0, 1.0, per_seg)) {
        if (i > 0 && u == 0.0) continue;
        pts.push_back(bp[i] + u * (bp[i + 1] - bp[i]));
      }
      mesh = std::max(mesh, (bp[i + 1] - bp[i]).norm() / (per_seg - 1));
    }
    return SetSample{std::move(pts), "monotone-graph",
                     std::to_string(bp.size()) + " breakpoints", mesh};
  }
  throw Error(ErrorCode::UnknownBuiltin, "no builtin set named '" + name + "'");
}

QPositiveSet builtin_set(const SSDSpace& space, const std::string& name,
                         const SetParams& params) {
  SetSample sample = sample_builtin_set(space, name, params);
  return QPositiveSet(space, std::move(sample.points), sample.generator,
                      sample.sampling, sample.mesh);
}

QPositiveSet product_set(const SSDSpace& product, const QPositiveSet& a,
                         const QPositiveSet& b) {
  const int da = a.space().dim;
  const int db = b.space().dim;
  if (product.dim != da + db) {
    throw Error(ErrorCode::DimensionMismatch,
                "product set needs a product space of matching dimension");
  }
  std::vector<Vector> pts;
  pts.reserve(a.size() * b.size());
  for (const auto& pa : a.points()) {
    for (const auto& pb : b.points()) {
      Vector v(da + db);
      v.head(da) = pa;
      v.tail(db) = pb;
      pts.push_back(v);
    }
  }
  return QPositiveSet(product, std::move(pts),
                      "product(" + a.generator() + "," + b.generator() + ")",
                      a.sampling() + " x " + b.sampling(),
                      std::max(a.mesh(), b.mesh()));
}

std::vector<std::string> builtin_set_names() {
  return {"diagonal", "helix(lambda)", "line(v)", "sgn-graph",
          "monotone-graph(breakpoints)", "box", "custom-file"};
}

std::vector<Vector> load_points_csv(const std::string& path, int expected_dim) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IOError, "cannot open point file '" + path + "'");
  }
  std::vector<Vector> points;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      std::string cell = line.substr(pos, comma - pos);
      const auto first = cell.find_first_not_of(" \t\r");
      if (first == std::string::npos) {
        throw Error(ErrorCode::IOError, path + ":" + std::to_string(lineno) +
                                            ": empty cell");
      }
      const auto last = cell.find_last_not_of(" \t\r");
      cell = cell.substr(first, last - first + 1);
      double value = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() ||
          !std::isfinite(value)) {
        throw Error(ErrorCode::IOError, path + ":" + std::to_string(lineno) +
                                            ": bad number '" + cell + "'");
      }
      row.push_back(value);
      pos = comma + 1;
      if (comma == line.size()) break;
    }
    Vector v(static_cast<Eigen::Index>(row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) v[static_cast<Eigen::Index>(i)] = row[i];
    if (!points.empty() && v.size() != points.front().size()) {
      throw Error(ErrorCode::IOError, path + ":" + std::to_string(lineno) +
                                          ": inconsistent column count");
    }
    points.push_back(std::move(v));
  }
  if (points.empty()) {
    throw Error(ErrorCode::IOError, "point file '" + path + "' is empty");
  }
  if (expected_dim >= 0 && points.front().size() != expected_dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "point file '" + path + "' has dimension " +
                    std::to_string(points.front().size()) + ", expected " +
                    std::to_string(expected_dim));
  }
  return points;
}

void save_points_csv(const std::string& path, const std::vector<Vector>& points) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IOError, "cannot write point file '" + path + "'");
  }
  out.precision(17);
  for (const auto& pt : points) {
    for (Eigen::Index i = 0; i < pt.size(); ++i) {
      if (i) out << ",";
      out << pt[i];
    }
    out << "\n";
  }
}

}  // namespace ssdkit
