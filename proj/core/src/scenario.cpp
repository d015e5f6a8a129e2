#include "ssdkit/scenario.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "ssdkit/fitzpatrick.hpp"
#include "ssdkit/gossez.hpp"
#include "ssdkit/parallel.hpp"
#include "ssdkit/qpositive.hpp"
#include "ssdkit/rng.hpp"
#include "ssdkit/vz_mas.hpp"

namespace ssdkit {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Typed config access; every failure names the key and line.

class SectionReader {
 public:
  SectionReader(const Config& config, const ConfigSection& section)
      : config_(&config), section_(&section) {}

  const ConfigSection& section() const { return *section_; }

  bool has(const std::string& key) const { return section_->find(key) != nullptr; }

  const ConfigEntry& require(const std::string& key) const {
    const auto* e = section_->find(key);
    if (!e) {
      config_->fail(section_->line, "[" + header() + "] missing key '" + key + "'");
    }
    return *e;
  }

  std::string get_string(const std::string& key) const {
    const auto& e = require(key);
    if (!e.value.is_string()) fail(e, "expected a string");
    return e.value.as_string();
  }
  std::string get_string_or(const std::string& key, const std::string& dflt) const {
    return has(key) ? get_string(key) : dflt;
  }
  std::int64_t get_int(const std::string& key) const {
    const auto& e = require(key);
    if (!e.value.is_integer()) fail(e, "expected an integer");
    return e.value.as_integer();
  }
  std::int64_t get_int_or(const std::string& key, std::int64_t dflt) const {
    return has(key) ? get_int(key) : dflt;
  }
  double get_real(const std::string& key) const {
    const auto& e = require(key);
    if (!e.value.is_real() && !e.value.is_integer()) fail(e, "expected a number");
    return e.value.as_real();
  }
  double get_real_or(const std::string& key, double dflt) const {
    return has(key) ? get_real(key) : dflt;
  }
  bool get_bool_or(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    const auto& e = require(key);
    if (!e.value.is_bool()) fail(e, "expected true or false");
    return e.value.as_bool();
  }
  std::vector<double> get_reals(const std::string& key) const {
    const auto& e = require(key);
    std::vector<double> out;
    if (e.value.is_list()) {
      for (const auto& item : e.value.as_list()) {
        if (!item.is_real() && !item.is_integer()) fail(e, "expected numbers");
        out.push_back(item.as_real());
      }
    } else if (e.value.is_real() || e.value.is_integer()) {
      out.push_back(e.value.as_real());
    } else {
      fail(e, "expected a number or list of numbers");
    }
    return out;
  }
  std::vector<std::string> get_strings(const std::string& key) const {
    const auto& e = require(key);
    std::vector<std::string> out;
    if (!e.value.is_list()) fail(e, "expected a list");
    for (const auto& item : e.value.as_list()) {
      if (!item.is_string()) fail(e, "expected strings");
      out.push_back(item.as_string());
    }
    return out;
  }

  [[noreturn]] void fail(const ConfigEntry& e, const std::string& message) const {
    config_->fail(e.line, "[" + header() + "] key '" + e.key + "': " + message);
  }
  [[noreturn]] void fail_section(const std::string& message) const {
    config_->fail(section_->line, "[" + header() + "] " + message);
  }

 private:
  std::string header() const {
    return section_->name.empty() ? section_->type
                                  : section_->type + " " + section_->name;
  }
  const Config* config_;
  const ConfigSection* section_;
};

// ---------------------------------------------------------------------------

struct NamedSample {
  const SSDSpace* space = nullptr;
  SetSample sample;
};

struct ScenarioContext {
  const Config* config = nullptr;
  std::uint64_t seed = 42;
  int workers = 1;
  std::string name;

  std::map<std::string, SSDSpace> named_spaces;
  SSDSpace space;
  std::map<std::string, NamedSample> sets;
  std::map<std::string, ConvexFunction> functions;
  std::map<std::string, GridSpec> grids;

  const NamedSample& set(const SectionReader& r, const std::string& key) const {
    const std::string name = r.get_string(key);
    const auto it = sets.find(name);
    if (it == sets.end()) r.fail(r.require(key), "no [set " + name + "] defined");
    return it->second;
  }
  const ConvexFunction& function(const SectionReader& r, const std::string& key) const {
    const std::string name = r.get_string(key);
    const auto it = functions.find(name);
    if (it == functions.end()) {
      r.fail(r.require(key), "no [function " + name + "] defined");
    }
    return it->second;
  }
  const GridSpec& grid(const SectionReader& r, const std::string& key) const {
    const std::string name = r.get_string(key);
    const auto it = grids.find(name);
    if (it == grids.end()) r.fail(r.require(key), "no [grid " + name + "] defined");
    return it->second;
  }

  QPositiveSet validated(const NamedSample& named) const {
    return QPositiveSet(*named.space, named.sample.points, named.sample.generator,
                        named.sample.sampling, named.sample.mesh);
  }
};

SSDSpace build_space_from_section(const ScenarioContext& ctx, const SectionReader& r) {
  if (r.has("product")) {
    const auto operands = r.get_strings("product");
    if (operands.size() != 2) r.fail(r.require("product"), "expected two operands");
    std::vector<const SSDSpace*> parts;
    for (const auto& name : operands) {
      const auto it = ctx.named_spaces.find(name);
      if (it == ctx.named_spaces.end()) {
        r.fail(r.require("product"), "no [space " + name + "] defined");
      }
      parts.push_back(&it->second);
    }
    return product_space(*parts[0], *parts[1]);
  }
  if (r.has("matrix_file")) {
    const auto rows = load_points_csv(r.get_string("matrix_file"));
    const auto n = rows.size();
    Matrix S(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<std::size_t>(rows[i].size()) != n) {
        r.fail(r.require("matrix_file"), "matrix file must be square");
      }
      S.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    }
    return make_space(S, r.get_bool_or("require_banach", false));
  }
  const std::string builtin = r.get_string("builtin");
  std::vector<long long> params;
  if (r.has("n")) params.push_back(r.get_int("n"));
  if (r.has("m")) params.push_back(r.get_int("m"));
  return builtin_space(builtin, params);
}

GridSpec build_grid(const ScenarioContext& ctx, const SectionReader& r) {
  const int dim = static_cast<int>(r.get_int_or("dim", ctx.space.dim));
  auto los = r.get_reals("lo");
  auto his = r.get_reals("hi");
  std::vector<double> counts;
  {
    const auto& e = r.require("count");
    if (e.value.is_list()) {
      for (const auto& item : e.value.as_list()) counts.push_back(item.as_real());
    } else {
      counts.push_back(static_cast<double>(r.get_int("count")));
    }
  }
  auto broadcast = [&](std::vector<double>& v, const char* key) {
    if (v.size() == 1) v.assign(static_cast<std::size_t>(dim), v[0]);
    if (v.size() != static_cast<std::size_t>(dim)) {
      r.fail(r.require(key), "expected 1 or dim entries");
    }
  };
  broadcast(los, "lo");
  broadcast(his, "hi");
  broadcast(counts, "count");
  std::vector<GridAxis> axes;
  for (int i = 0; i < dim; ++i) {
    axes.push_back(GridAxis{los[static_cast<std::size_t>(i)],
                            his[static_cast<std::size_t>(i)],
                            static_cast<int>(counts[static_cast<std::size_t>(i)])});
  }
  return GridSpec(std::move(axes));
}

NamedSample build_set(const ScenarioContext& ctx, const SectionReader& r) {
  NamedSample named;
  const std::string space_name = r.get_string_or("space", "");
  if (space_name.empty()) {
    named.space = &ctx.space;
  } else {
    const auto it = ctx.named_spaces.find(space_name);
    if (it == ctx.named_spaces.end()) {
      r.fail(r.require("space"), "no [space " + space_name + "] defined");
    }
    named.space = &it->second;
  }

  const std::string generator = r.get_string("generator");
  if (generator == "product") {
    const auto& first = ctx.set(r, "first");
    const auto& second = ctx.set(r, "second");
    // Validated operands; the product of q-positive sets stays q-positive.
    const QPositiveSet a = ctx.validated(first);
    const QPositiveSet b = ctx.validated(second);
    const QPositiveSet prod = product_set(*named.space, a, b);
    named.sample =
        SetSample{prod.points(), prod.generator(), prod.sampling(), prod.mesh()};
    return named;
  }
  if (generator == "custom-file") {
    named.sample.points =
        load_points_csv(r.get_string("file"), named.space->dim);
    named.sample.generator = "custom-file";
    named.sample.sampling = r.get_string("file");
    named.sample.mesh = r.get_real_or("mesh", 0.0);
    return named;
  }

  SetParams params;
  params.lo = r.get_real_or("lo", -3.0);
  params.hi = r.get_real_or("hi", 3.0);
  params.count = static_cast<int>(r.get_int_or("count", 121));
  params.lambda = r.get_real_or("lambda", 1.0);
  if (r.has("direction")) {
    const auto d = r.get_reals("direction");
    params.direction = Eigen::Map<const Vector>(d.data(), static_cast<Eigen::Index>(d.size()));
  }
  if (r.has("breakpoints")) {
    const auto flat = r.get_reals("breakpoints");
    if (flat.size() % 2 != 0) {
      r.fail(r.require("breakpoints"), "expected an even list of x,y pairs");
    }
    for (std::size_t i = 0; i < flat.size(); i += 2) {
      Vector v(2);
      v << flat[i], flat[i + 1];
      params.breakpoints.push_back(v);
    }
  }
  named.sample = sample_builtin_set(*named.space, generator, params);
  return named;
}

ConvexFunction build_function(const ScenarioContext& ctx, const SectionReader& r) {
  const std::string kind = r.get_string("kind");
  const int dim = static_cast<int>(r.get_int_or("dim", ctx.space.dim));

  if (kind == "half-sqnorm") {
    const double scale = r.get_real_or("scale", 1.0);
    return ConvexFunction::quadratic(scale * Matrix::Identity(dim, dim),
                                     Vector::Zero(dim), 0.0);
  }
  if (kind == "quadratic") {
    Matrix Q;
    if (r.get_string_or("matrix", "") == "identity" || !r.has("matrix")) {
      Q = Matrix::Identity(dim, dim);
    } else {
      const auto flat = r.get_reals("matrix");
      if (flat.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
        r.fail(r.require("matrix"), "expected dim*dim entries");
      }
      Q.resize(dim, dim);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          Q(i, j) = flat[static_cast<std::size_t>(i * dim + j)];
        }
      }
    }
    Q *= r.get_real_or("scale", 1.0);
    Vector b = Vector::Zero(dim);
    if (r.has("linear")) {
      const auto lv = r.get_reals("linear");
      if (lv.size() != static_cast<std::size_t>(dim)) {
        r.fail(r.require("linear"), "expected dim entries");
      }
      b = Eigen::Map<const Vector>(lv.data(), dim);
    }
    return ConvexFunction::quadratic(std::move(Q), std::move(b),
                                     r.get_real_or("constant", 0.0));
  }
  if (kind == "max-affine") {
    const auto flat = r.get_reals("slopes");
    const auto offsets = r.get_reals("offsets");
    if (offsets.empty() || flat.size() != offsets.size() * static_cast<std::size_t>(dim)) {
      r.fail(r.require("slopes"), "expected pieces*dim slope entries");
    }
    std::vector<Vector> slopes;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      slopes.push_back(Eigen::Map<const Vector>(flat.data() + i * dim, dim));
    }
    return ConvexFunction::max_affine(std::move(slopes), offsets);
  }
  if (kind == "point-envelope") {
    const auto flat = r.get_reals("points");
    const auto values = r.get_reals("values");
    if (values.empty() || flat.size() != values.size() * static_cast<std::size_t>(dim)) {
      r.fail(r.require("points"), "expected points*dim entries");
    }
    std::vector<Vector> points;
    for (std::size_t i = 0; i < values.size(); ++i) {
      points.push_back(Eigen::Map<const Vector>(flat.data() + i * dim, dim));
    }
    return ConvexFunction::point_envelope(std::move(points), values);
  }
  if (kind == "q-plus-indicator") {
    const auto pv = r.get_reals("point");
    if (pv.size() != static_cast<std::size_t>(ctx.space.dim)) {
      r.fail(r.require("point"), "expected dim entries");
    }
    const Vector point = Eigen::Map<const Vector>(pv.data(), ctx.space.dim);
    return ConvexFunction::point_envelope({point}, {q(ctx.space, point)});
  }
  if (kind == "fitzpatrick" || kind == "envelope") {
    const auto& named = ctx.set(r, "set");
    const QPositiveSet A = ctx.validated(named);
    auto triple = fitzpatrick_triple(*named.space, A);
    return kind == "fitzpatrick" ? std::move(triple.phi) : std::move(triple.psi);
  }
  if (kind == "grid-file") {
    return load_grid_csv(r.get_string("file"));
  }
  r.fail(r.require("kind"), "unknown function kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Suites

std::vector<Vector> resolve_probes(const ScenarioContext& ctx, const SectionReader& r,
                                   Rng& rng) {
  if (r.has("probes")) {
    const GridSpec& grid = ctx.grid(r, "probes");
    std::vector<Vector> out;
    out.reserve(grid.node_count());
    for (std::size_t k = 0; k < grid.node_count(); ++k) out.push_back(grid.node(k));
    return out;
  }
  const int count = static_cast<int>(r.get_int_or("random_probes", 100));
  auto box = r.has("probe_box") ? r.get_reals("probe_box")
                                : std::vector<double>{-2.0, 2.0};
  if (box.size() != 2) r.fail(r.require("probe_box"), "expected [lo, hi]");
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(rng.vector(ctx.space.dim, box[0], box[1]));
  }
  return out;
}

CheckReport run_qpos_suite(const ScenarioContext& ctx, const SectionReader& r) {
  CheckReport out;
  const auto& named = ctx.set(r, "set");
  const double tol = r.get_real_or("tol", kEpsQ);
  const auto result = is_q_positive(*named.space, named.sample.points, tol);

  CheckLine line;
  line.name = "pairwise-q-positive";
  line.ref = "qpos.pairwise";
  line.tolerance = tol;
  line.notes = named.sample.generator + "; " + named.sample.sampling;
  if (result.positive) {
    line.status = CheckStatus::pass;
    line.max_violation = 0.0;
  } else {
    line.status = CheckStatus::fail;
    line.max_violation = -result.violation->value;
    line.witness = result.violation->witness;
  }
  out.add(line);

  if (r.has("falsify_grid")) {
    const GridSpec& grid = ctx.grid(r, "falsify_grid");
    const double floor = r.get_real_or("dist_floor", 0.2);
    CheckLine fl;
    fl.name = "maximality-falsifier";
    fl.ref = "qpos.maximality";
    fl.tolerance = tol;
    if (!result.positive) {
      fl.status = CheckStatus::skipped;
      fl.notes = "set is not q-positive";
    } else {
      const QPositiveSet A = ctx.validated(named);
      const auto candidates = maximality_falsifier(*named.space, A, grid, floor, tol);
      if (candidates.empty()) {
        fl.status = CheckStatus::not_falsified;
        fl.notes = "no extension candidate on " + grid.describe() +
                   " at distance floor " + std::to_string(floor) +
                   "; not a proof of maximality";
      } else {
        fl.status = CheckStatus::fail;
        fl.max_violation = static_cast<double>(candidates.size());
        fl.witness = {candidates.front().witness.front()};
        fl.notes = std::to_string(candidates.size()) +
                   " extension candidate(s); maximality falsified";
      }
    }
    out.add(fl);
  }
  return out;
}

CheckReport run_fitzpatrick_suite(const ScenarioContext& ctx, const SectionReader& r,
                                  Rng& rng) {
  CheckReport out;
  const auto& named = ctx.set(r, "set");
  const SSDSpace& space = *named.space;
  const double tol = r.get_real_or("tol", kEpsIneq);
  const QPositiveSet A = ctx.validated(named);

  const int npoints = static_cast<int>(r.get_int_or("random_points", 1000));
  auto box = r.has("box") ? r.get_reals("box") : std::vector<double>{-2.0, 2.0};
  if (box.size() != 2) r.fail(r.require("box"), "expected [lo, hi]");

  double two_route = -kInf;
  for (int i = 0; i < npoints; ++i) {
    const Vector b = rng.vector(space.dim, box[0], box[1]);
    const auto routes = phi_two_route(space, A, b);
    two_route = std::max(two_route, std::abs(routes.by_sup - routes.by_inf_gap));
  }
  out.add(CheckLine::from_violation(
      "two-route-identity", "fitz.two-route", two_route, tol, 0.0, {},
      std::to_string(npoints) + " random points in [" + std::to_string(box[0]) +
          "," + std::to_string(box[1]) + "]^dim"));

  const auto triple = fitzpatrick_triple(space, A);
  double on_set = -kInf;
  double envelope = -kInf;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const Vector& a = A.points()[i];
    const double qa = q(space, a);
    on_set = std::max(on_set, std::abs(triple.phi.eval(a) - qa));
    envelope = std::max(envelope, triple.psi.eval(a) - qa);
  }
  out.add(CheckLine::from_violation("phi-equals-q-on-set", "fitz.on-set", on_set,
                                    tol));
  out.add(CheckLine::from_violation("psi-dominated-by-q-on-set",
                                    "fitz.envelope-dominated", envelope, tol));

  if (r.has("grid")) {
    const GridSpec& grid = ctx.grid(r, "grid");
    const GridSpec dual_search = r.has("dual_search")
                                     ? ctx.grid(r, "dual_search")
                                     : map_box(space.form_matrix, grid);
    const double conj_tol = r.get_real_or("conj_tol", 1e-8);
    out.merge(conjugate_dominance_check(space, A, grid, dual_search, conj_tol));
  }
  return out;
}

CheckReport run_sandwich_suite(const ScenarioContext& ctx, const SectionReader& r) {
  const auto& named = ctx.set(r, "set");
  return sandwich_check(*named.space, ctx.validated(named),
                        ctx.function(r, "function"), ctx.grid(r, "grid"),
                        r.get_real_or("tol", 1e-6));
}

CheckReport run_vz_suite(const ScenarioContext& ctx, const SectionReader& r) {
  VzParams params{ctx.grid(r, "probes"), ctx.grid(r, "search"),
                  r.get_real_or("tol", 1e-3), r.get_real_or("extract_tol", 1e-6)};
  return vz_check(ctx.space, ctx.function(r, "function"), params,
                  r.get_bool_or("conjugate_route", true));
}

CheckReport run_mas_suite(const ScenarioContext& ctx, const SectionReader& r) {
  const SSDDual dual = make_dual(ctx.space);
  MasParams params{ctx.grid(r, "primal_grid"), ctx.grid(r, "dual_grid"),
                   r.get_real_or("tol", 1e-9)};
  return mas_check(ctx.space, dual, ctx.function(r, "function"), params);
}

CheckReport run_duality_suite(const ScenarioContext& ctx, const SectionReader& r,
                              Rng& rng) {
  const SSDDual dual = make_dual(ctx.space);
  DualityCheckParams params;
  params.probes = resolve_probes(ctx, r, rng);
  params.tol = r.get_real_or("tol", 1e-8);
  const ConvexFunction& f = ctx.function(r, "function");
  bool exact = false;
  if (f.kind() == ConvexFunction::Kind::quadratic) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(f.as_quadratic().Q);
    exact = es.eigenvalues().minCoeff() > 1e-12;
  }
  if (!exact || r.has("search")) {
    params.search = ctx.grid(r, "search");
    params.dual_search = ctx.grid(r, "dual_search");
  } else {
    // Unused by the closed-form path.
    params.search = GridSpec::uniform(-1.0, 1.0, 2, ctx.space.dim);
    params.dual_search = params.search;
  }
  return infconv_duality_check(ctx.space, dual, f, params);
}

CheckReport run_distance_suite(const ScenarioContext& ctx, const SectionReader& r,
                               Rng& rng) {
  DistanceBoundsParams params;
  const ConvexFunction& f = ctx.function(r, "function");
  if (r.has("pq_set")) {
    const auto& named = ctx.set(r, "pq_set");
    params.pq_sample = named.sample.points;
    params.mesh = named.sample.mesh;
  } else {
    const GridSpec& search = ctx.grid(r, "search");
    std::vector<Vector> candidates;
    candidates.reserve(search.node_count());
    for (std::size_t k = 0; k < search.node_count(); ++k) {
      candidates.push_back(search.node(k));
    }
    params.pq_sample = coincidence_set(ctx.space, f, candidates,
                                       r.get_real_or("extract_tol", 1e-6));
    params.mesh = search.max_step() * std::sqrt(double(ctx.space.dim));
  }
  params.probes = resolve_probes(ctx, r, rng);
  params.tol = r.get_real_or("tol", 1e-9);
  params.ratio_floor = r.get_real_or("ratio_floor", 0.25);
  params.ratio_tol = r.get_real_or("ratio_tol", 1e-3);
  return distance_bounds_check(ctx.space, f, params);
}

CheckReport run_pairs_suite(const ScenarioContext& ctx, const SectionReader& r,
                            Rng& rng) {
  PairBoundParams params;
  params.pairs = static_cast<int>(r.get_int_or("pairs", 1000));
  auto box = r.has("box") ? r.get_reals("box") : std::vector<double>{-2.0, 2.0};
  if (box.size() != 2) r.fail(r.require("box"), "expected [lo, hi]");
  params.lo = box[0];
  params.hi = box[1];
  params.seed = rng.next_u64();
  params.tol = r.get_real_or("tol", kEpsIneq);
  return pair_bound_check(ctx.space, ctx.function(r, "function"), params);
}

CheckReport run_gossez_suite(const ScenarioContext& ctx, const SectionReader& r,
                             Rng& rng) {
  const auto& named = ctx.set(r, "set");
  const SSDDual dual = make_dual(*named.space);
  ExtensionCheckParams params{ctx.grid(r, "dual_grid"),
                              r.get_real_or("tol", kEpsIneq),
                              static_cast<int>(r.get_int_or("random_duals", 100)),
                              rng.next_u64()};
  return extension_consistency_check(*named.space, dual, ctx.validated(named),
                                     params);
}

CheckReport run_ni_suite(const ScenarioContext& ctx, const SectionReader& r) {
  const auto& named = ctx.set(r, "set");
  const SSDDual dual = make_dual(*named.space);
  return ni_check(*named.space, dual, ctx.validated(named),
                  ctx.grid(r, "dual_grid"), r.get_real_or("tol", kEpsIneq));
}

CheckReport run_biconjugate_suite(const ScenarioContext& ctx,
                                  const SectionReader& r) {
  const auto report = biconjugate_check(ctx.function(r, "function"),
                                        ctx.grid(r, "grid"),
                                        ctx.grid(r, "dual_grid"));
  CheckReport out;
  std::ostringstream notes;
  notes << "slope estimate " << report.lipschitz << ", interior nodes "
        << report.interior_nodes;
  out.add(CheckLine::from_violation(
      "biconjugate-gap", "biconj.gap", report.max_gap, report.tolerance, 0.0,
      report.worst_node.size() ? std::vector<Vector>{report.worst_node}
                               : std::vector<Vector>{},
      notes.str()));
  out.add(CheckLine::from_violation("biconjugate-never-above", "biconj.fenchel-young",
                                    -report.min_gap, kEpsIneq));
  return out;
}

const std::vector<std::string>& suite_kinds() {
  static const std::vector<std::string> kinds = {
      "qpos", "fitzpatrick", "sandwich", "vz",          "mas",
      "infconv-duality", "distance", "pairs", "gossez", "ni", "biconjugate"};
  return kinds;
}

}  // namespace

CheckReport run_scenario(const Config& config, const ScenarioOverrides& overrides) {
  const auto start = std::chrono::steady_clock::now();

  ScenarioContext ctx;
  ctx.config = &config;

  const ConfigSection* meta = config.unique_section("scenario");
  if (!meta) {
    throw Error(ErrorCode::ConfigError,
                config.origin() + ": missing [scenario] section");
  }
  SectionReader meta_reader(config, *meta);
  ctx.name = meta_reader.get_string("name");
  ctx.seed = static_cast<std::uint64_t>(meta_reader.get_int_or("seed", 42));
  if (overrides.seed) ctx.seed = *overrides.seed;
  if (overrides.workers) ctx.workers = *overrides.workers;

  // Named spaces first, then the main space, grids, sets, functions.
  for (const auto* s : config.sections_of("space")) {
    if (s->name.empty()) continue;
    ctx.named_spaces.emplace(s->name,
                             build_space_from_section(ctx, SectionReader(config, *s)));
  }
  const ConfigSection* main_space = config.unique_section("space");
  if (!main_space) {
    throw Error(ErrorCode::ConfigError,
                config.origin() + ": missing [space] section");
  }
  ctx.space = build_space_from_section(ctx, SectionReader(config, *main_space));

  for (const auto* s : config.sections_of("grid")) {
    if (s->name.empty()) {
      config.fail(s->line, "[grid] sections need a name");
    }
    ctx.grids.emplace(s->name, build_grid(ctx, SectionReader(config, *s)));
  }
  for (const auto* s : config.sections_of("set")) {
    if (s->name.empty()) config.fail(s->line, "[set] sections need a name");
    ctx.sets.emplace(s->name, build_set(ctx, SectionReader(config, *s)));
  }
  for (const auto* s : config.sections_of("function")) {
    if (s->name.empty()) config.fail(s->line, "[function] sections need a name");
    ctx.functions.emplace(s->name, build_function(ctx, SectionReader(config, *s)));
  }

  for (const auto& section : config.sections()) {
    static const char* known[] = {"scenario", "space", "grid", "set", "function",
                                  "suite"};
    bool ok = false;
    for (const char* k : known) ok = ok || section.type == k;
    if (!ok) config.fail(section.line, "unknown section type '" + section.type + "'");
  }

  // Validate suite kinds and tolerance positivity before running anything.
  const auto suites = config.sections_of("suite");
  for (const auto* s : suites) {
    SectionReader r(config, *s);
    const std::string kind = r.get_string("kind");
    bool ok = false;
    for (const auto& k : suite_kinds()) ok = ok || k == kind;
    if (!ok) r.fail(r.require("kind"), "unknown suite '" + kind + "'");
    for (const auto& entry : s->entries) {
      const bool is_tol =
          entry.key == "tol" ||
          (entry.key.size() > 4 &&
           entry.key.rfind("_tol") == entry.key.size() - 4);
      if (is_tol && (entry.value.is_real() || entry.value.is_integer()) &&
          entry.value.as_real() <= 0.0) {
        r.fail(entry, "tolerances must be positive");
      }
    }
  }

  set_worker_count(ctx.workers);

  CheckReport report;
  report.scenario = ctx.name;
  report.seed = ctx.seed;
  report.workers = ctx.workers;

  for (const auto* s : suites) {
    SectionReader r(config, *s);
    const std::string kind = r.get_string("kind");
    const std::string label = s->name.empty() ? kind : s->name;
    Rng rng(ctx.seed ^ fnv1a(label));

    CheckReport suite_report;
    try {
      if (kind == "qpos") suite_report = run_qpos_suite(ctx, r);
      else if (kind == "fitzpatrick") suite_report = run_fitzpatrick_suite(ctx, r, rng);
      else if (kind == "sandwich") suite_report = run_sandwich_suite(ctx, r);
      else if (kind == "vz") suite_report = run_vz_suite(ctx, r);
      else if (kind == "mas") suite_report = run_mas_suite(ctx, r);
      else if (kind == "infconv-duality") suite_report = run_duality_suite(ctx, r, rng);
      else if (kind == "distance") suite_report = run_distance_suite(ctx, r, rng);
      else if (kind == "pairs") suite_report = run_pairs_suite(ctx, r, rng);
      else if (kind == "gossez") suite_report = run_gossez_suite(ctx, r, rng);
      else if (kind == "ni") suite_report = run_ni_suite(ctx, r);
      else if (kind == "biconjugate") suite_report = run_biconjugate_suite(ctx, r);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigError) throw;
      CheckLine line;
      line.name = "suite-error";
      line.ref = "suite.error";
      line.status = CheckStatus::fail;
      line.notes = e.what();
      suite_report = CheckReport{};
      suite_report.add(line);
    }
    for (auto& line : suite_report.checks) {
      line.name = label + "/" + line.name;
      report.add(std::move(line));
    }
  }

  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return report;
}

CheckReport run_scenario_text(const std::string& text, const std::string& origin,
                              const ScenarioOverrides& overrides) {
  return run_scenario(Config::parse(text, origin), overrides);
}

namespace {

const char* kDiagonalSharpness = R"cfg([scenario]
name = diagonal-sharpness
seed = 42
description = "Sharp sqrt(2) distance constant for the plane pairing space with the squared-norm function over the sampled diagonal"

[space]
builtin = pairing
m = 1

[set A]
generator = diagonal
lo = -3.0
hi = 3.0
count = 601

[function f]
kind = half-sqnorm

[grid probes]
lo = -2.0
hi = 2.0
count = 21

[grid search]
lo = -3.0
hi = 3.0
count = 61

[suite sandwich]
kind = sandwich
set = A
function = f
grid = probes
tol = 1e-6

[suite vz]
kind = vz
function = f
probes = probes
search = search
tol = 0.02
extract_tol = 1e-6

[suite distance]
kind = distance
function = f
pq_set = A
random_probes = 100
probe_box = [-2.0, 2.0]
tol = 1e-9
ratio_floor = 0.25
ratio_tol = 1e-3
)cfg";

const char* kHelix = R"cfg([scenario]
name = helix
seed = 42
description = "Helix samples in the swap space: unit pitch is q-positive, flattened pitch is not (reported as a failing check with a witness pair)"

[space]
builtin = r3-swap

[set unit]
generator = helix
lambda = 1.0
lo = -10.0
hi = 10.0
count = 401

[set flat]
generator = helix
lambda = 0.5
lo = -10.0
hi = 10.0
count = 401

[suite qpos-unit]
kind = qpos
set = unit

[suite qpos-flat]
kind = qpos
set = flat
)cfg";

const char* kLine = R"cfg([scenario]
name = line-1-neg1-2
seed = 42
description = "The q-positive line through (1,-1,2) in the swap space: pairwise positivity and the conjugate identities of its Fitzpatrick function"

[space]
builtin = r3-swap

[set L]
generator = line
direction = [1.0, -1.0, 2.0]
lo = -3.0
hi = 3.0
count = 121

[grid g]
lo = -2.0
hi = 2.0
count = 7

[suite qpos]
kind = qpos
set = L

[suite fitz]
kind = fitzpatrick
set = L
random_points = 1000
box = [-2.0, 2.0]
grid = g
)cfg";

const char* kPairingDiagonal = R"cfg([scenario]
name = pairing-diagonal
seed = 42
description = "Full suite over the sampled diagonal of the plane pairing space"

[space]
builtin = pairing
m = 1

[set A]
generator = diagonal
lo = -3.0
hi = 3.0
count = 601

[function f]
kind = half-sqnorm

[grid probes]
lo = -2.0
hi = 2.0
count = 21

[grid search]
lo = -3.0
hi = 3.0
count = 61

[grid dual]
lo = -2.0
hi = 2.0
count = 21

[suite sandwich]
kind = sandwich
set = A
function = f
grid = probes
tol = 1e-6

[suite vz]
kind = vz
function = f
probes = probes
search = search
tol = 0.02

[suite mas]
kind = mas
function = f
primal_grid = probes
dual_grid = dual
tol = 1e-9

[suite duality]
kind = infconv-duality
function = f
random_probes = 100
probe_box = [-2.0, 2.0]
tol = 1e-8

[suite distance]
kind = distance
function = f
pq_set = A
random_probes = 100
probe_box = [-2.0, 2.0]
tol = 1e-9

[suite gossez]
kind = gossez
set = A
dual_grid = dual
random_duals = 100
tol = 1e-9

[suite ni]
kind = ni
set = A
dual_grid = dual
tol = 1e-9
)cfg";

const char* kHilbertSelfDual = R"cfg([scenario]
name = hilbert-self-dual
seed = 42
description = "Identity-form plane: every subset is q-positive, the space is its own dual, and the squared-norm function coincides with q"

[space]
builtin = hilbert-identity
n = 2

[set B]
generator = box
lo = -3.0
hi = 3.0
count = 25

[function f]
kind = half-sqnorm

[grid probes]
lo = -2.0
hi = 2.0
count = 21

[grid dual]
lo = -2.0
hi = 2.0
count = 21

[suite qpos]
kind = qpos
set = B

[suite mas]
kind = mas
function = f
primal_grid = probes
dual_grid = dual
tol = 1e-9

[suite pairs]
kind = pairs
function = f
pairs = 1000
box = [-2.0, 2.0]

[suite ni]
kind = ni
set = B
dual_grid = dual
tol = 1e-9

[suite gossez]
kind = gossez
set = B
dual_grid = dual
random_duals = 100
tol = 1e-9
)cfg";

const char* kProductSpace = R"cfg([scenario]
name = product-space
seed = 42
description = "Block product of the swap space with the plane pairing space, carrying the product of a q-positive line and the diagonal"

[space s1]
builtin = r3-swap

[space s2]
builtin = pairing
m = 1

[space]
product = [s1, s2]

[set L]
generator = line
space = s1
direction = [1.0, -1.0, 2.0]
lo = -2.0
hi = 2.0
count = 11

[set D]
generator = diagonal
space = s2
lo = -2.0
hi = 2.0
count = 11

[set P]
generator = product
first = L
second = D

[suite qpos]
kind = qpos
set = P

[suite fitz]
kind = fitzpatrick
set = P
random_points = 1000
box = [-2.0, 2.0]
)cfg";

const char* kBiconjugationGrid = R"cfg([scenario]
name = biconjugation-grid
seed = 42
description = "Grid-scale double-conjugation checks: quadratic in one dimension, max-affine in two, and a two-point envelope"

[space]
builtin = hilbert-identity
n = 1

[function quad1d]
kind = half-sqnorm
dim = 1

[function maxaff2d]
kind = max-affine
dim = 2
slopes = [1.0, 0.0, 0.0, 1.0, -0.5, 0.25]
offsets = [0.0, 0.0, 0.3]

[function envelope1d]
kind = point-envelope
dim = 1
points = [-1.0, 1.0]
values = [1.0, 1.0]

[grid g1]
dim = 1
lo = -2.0
hi = 2.0
count = 401

[grid d1]
dim = 1
lo = -2.0
hi = 2.0
count = 401

[grid g2]
dim = 2
lo = -2.0
hi = 2.0
count = 101

[grid d2]
dim = 2
lo = -2.0
hi = 2.0
count = 101

[suite quad]
kind = biconjugate
function = quad1d
grid = g1
dual_grid = d1

[suite maxaffine]
kind = biconjugate
function = maxaff2d
grid = g2
dual_grid = d2

[suite envelope]
kind = biconjugate
function = envelope1d
grid = g1
dual_grid = d1
)cfg";

std::vector<BundledScenario> make_catalog() {
  return {
      {"diagonal-sharpness",
       "sharp sqrt(2) constant in the distance bounds over the sampled diagonal",
       kDiagonalSharpness},
      {"helix",
       "unit helix passes q-positivity, the flattened helix fails with a witness",
       kHelix},
      {"line-1-neg1-2",
       "q-positive line through (1,-1,2) with Fitzpatrick conjugate identities",
       kLine},
      {"pairing-diagonal",
       "full suite (sandwich, vz, mas, infconv-duality, distance, gossez, ni)",
       kPairingDiagonal},
      {"hilbert-self-dual",
       "identity form: box sample, self-dual structure, pair bounds", kHilbertSelfDual},
      {"product-space", "block-diagonal product space with a product set",
       kProductSpace},
      {"biconjugation-grid", "double conjugation at grid scale for three shapes",
       kBiconjugationGrid},
  };
}

struct AnchorDoc {
  const char* ref;
  const char* meaning;
};

const std::map<std::string, std::vector<AnchorDoc>>& suite_anchor_docs() {
  static const std::map<std::string, std::vector<AnchorDoc>> docs = {
      {"qpos",
       {{"qpos.pairwise", "q(b - c) >= 0 for every pair of set points"},
        {"qpos.maximality",
         "grid falsifier for maximality; empty result is 'not falsified'"}}},
      {"fitzpatrick",
       {{"fitz.two-route",
         "sup-form and inf-gap-form of phi agree at random points"},
        {"fitz.on-set", "phi = q on the set"},
        {"fitz.envelope-dominated", "psi <= q on the set"},
        {"fitz.conj.on-set", "intrinsic conjugate of phi is <= q on the set"},
        {"fitz.conj.dominates", "conjugate dominates max(phi, q) on the grid"},
        {"fitz.conj.involution", "double conjugation returns phi"},
        {"fitz.conj.brute-consistency",
         "grid sup never exceeds the exact conjugate"},
        {"fitz.pairing-bound", "form(b,a) <= q(a) + phi(b) for a in the set"}}},
      {"sandwich",
       {{"sandwich.upper", "psi >= f at grid nodes inside conv(A)"},
        {"sandwich.lower", "f >= phi at grid nodes"},
        {"sandwich.phi-ge-q", "phi >= q, expected only for maximal sets"}}},
      {"vz",
       {{"vz.residual", "residual inf-convolution vanishes at probes"},
        {"vz.density-route",
         "equivalent route: f >= q and the coincidence set is p-dense"},
        {"vz.route-agreement", "both routes give the same verdict"},
        {"vz.conjugate",
         "the intrinsic conjugate has the same verdict and coincidence set"}}},
      {"mas",
       {{"mas.primal", "f >= q on the primal grid"},
        {"mas.dual", "conj(f) >= q_tilde on the dual grid"}}},
      {"infconv-duality",
       {{"duality.infconv",
         "primal residual inf-convolution equals the negated dual one through iota"}}},
      {"distance",
       {{"dist.const5", "distance <= 5 sqrt(f - q)"},
        {"dist.sqrt2-inf-q", "distance <= sqrt(2) sqrt(-inf q(sample - c))"},
        {"dist.sqrt2-fq", "distance <= sqrt(2) sqrt(f - q)"},
        {"dist.sharpness", "achieved ratio against the sqrt(2) constant"}}},
      {"pairs",
       {{"pairs.sqrt-bound",
         "-q(b - c) <= (sqrt((f-q)(b)) + sqrt((f-q)(c)))^2"},
        {"pairs.linear-bound", "-q(b - c) <= 2(f-q)(b) + 2(f-q)(c)"}}},
      {"gossez",
       {{"gossez.iota-subset", "iota(A) is contained in the extension"},
        {"gossez.membership-consistency",
         "both membership expressions agree in sign"},
        {"gossez.extension-set",
         "extension coincides with the theta/q_tilde coincidence set"},
        {"gossez.conj-chain", "theta^@ >= phi^* >= theta at random duals"}}},
      {"ni",
       {{"ni.gap", "min over the dual grid of theta - q_tilde"},
        {"ni.on-set", "the gap vanishes on iota(A)"}}},
      {"biconjugate",
       {{"biconj.gap", "max interior gap f - f** against C*h"},
        {"biconj.fenchel-young", "f** never exceeds f beyond rounding"}}},
  };
  return docs;
}

}  // namespace

const std::vector<BundledScenario>& bundled_scenarios() {
  static const std::vector<BundledScenario> catalog = make_catalog();
  return catalog;
}

const BundledScenario* find_bundled_scenario(const std::string& name) {
  for (const auto& s : bundled_scenarios()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string list_builtins_text() {
  std::ostringstream os;
  os << "builtin spaces:\n";
  for (const auto& n : builtin_space_names()) os << "  " << n << "\n";
  os << "set generators:\n";
  for (const auto& n : builtin_set_names()) os << "  " << n << "\n";
  os << "suite kinds:\n";
  for (const auto& [kind, anchors] : suite_anchor_docs()) {
    os << "  " << kind << "\n";
  }
  os << "bundled scenarios:\n";
  for (const auto& s : bundled_scenarios()) {
    os << "  " << s.name << " - " << s.description << "\n";
  }
  return os.str();
}

std::string describe_builtin(const std::string& name) {
  std::ostringstream os;

  if (const auto* scenario = find_bundled_scenario(name)) {
    os << scenario->name << ": " << scenario->description << "\n\n";
    const Config config = Config::parse(scenario->config_text, scenario->name);
    os << "check anchors emitted by its suites:\n";
    for (const auto* s : config.sections_of("suite")) {
      const auto* kind = s->find("kind");
      if (!kind) continue;
      os << "  [" << s->type << " " << s->name << "] kind "
         << kind->value.as_string() << "\n";
      const auto it = suite_anchor_docs().find(kind->value.as_string());
      if (it != suite_anchor_docs().end()) {
        for (const auto& a : it->second) {
          os << "    " << a.ref << ": " << a.meaning << "\n";
        }
      }
    }
    os << "\nconfig:\n" << scenario->config_text;
    return os.str();
  }

  const auto it = suite_anchor_docs().find(name);
  if (it != suite_anchor_docs().end()) {
    os << "suite kind " << name << "; check anchors:\n";
    for (const auto& a : it->second) {
      os << "  " << a.ref << ": " << a.meaning << "\n";
    }
    return os.str();
  }

  static const std::map<std::string, std::string> space_docs = {
      {"hilbert-identity",
       "identity form on R^n: q(b) = |b|^2/2, every subset is q-positive"},
      {"hilbert-negative",
       "negated identity form: q(b) = -|b|^2/2, only singletons are q-positive"},
      {"r3-swap",
       "R^3 with form(b,c) = b1 c2 + b2 c1 + b3 c3; hosts the helix examples"},
      {"pairing",
       "R^m x R^m with form((x,u),(y,v)) = x.v + y.u; q-positive sets are the "
       "monotone sets"},
      {"product", "block-diagonal combination of two spaces, l2 product norm"},
  };
  if (const auto sit = space_docs.find(name); sit != space_docs.end()) {
    os << "builtin space " << name << ": " << sit->second << "\n";
    return os.str();
  }
  static const std::map<std::string, std::string> set_docs = {
      {"diagonal", "t -> (t, ..., t) sampled over [lo, hi]"},
      {"helix", "theta -> (cos theta, sin theta, lambda*theta); q-positive iff "
                "lambda >= 1 in the swap space"},
      {"line", "t -> t*v; q-positive iff q(v) >= 0"},
      {"sgn-graph", "graph of the sign function with its vertical segment"},
      {"monotone-graph", "piecewise-linear monotone polyline samples"},
      {"box", "cartesian grid sample of a box"},
      {"custom-file", "points loaded from a CSV file, one point per row"},
  };
  if (const auto dit = set_docs.find(name); dit != set_docs.end()) {
    os << "set generator " << name << ": " << dit->second << "\n";
    return os.str();
  }
  throw Error(ErrorCode::UnknownBuiltin, "nothing named '" + name + "'");
}

}  // namespace ssdkit
