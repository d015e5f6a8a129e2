#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssdkit/grid.hpp"
#include "ssdkit/space.hpp"

namespace ssdkit {

/// Witness of a failed inequality check: `value` fell below `bound`.
struct Violation {
  std::vector<Vector> witness;
  double value = 0.0;
  double bound = 0.0;
};

struct QPositiveResult {
  bool positive = false;
  std::optional<Violation> violation;  // minimizing pair when !positive
};

/// True iff q(b - c) >= -eps for every pair; exhaustive pair scan, the
/// minimizing pair is returned as witness on failure.
QPositiveResult is_q_positive(const SSDSpace& space,
                              const std::vector<Vector>& points,
                              double eps = kEpsQ);

/// A finite list of points validated pairwise q-positive at construction.
/// Infinite sets enter only as parameterized samples; `generator` and
/// `sampling` describe the provenance, `mesh` is the sample spacing hint
/// (0 when unknown) used by mesh-aware allowances.
class QPositiveSet {
 public:
  QPositiveSet(const SSDSpace& space, std::vector<Vector> points,
               std::string generator = "custom", std::string sampling = "",
               double mesh = 0.0);

  const SSDSpace& space() const { return *space_; }
  const std::vector<Vector>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const std::string& generator() const { return generator_; }
  const std::string& sampling() const { return sampling_; }
  double mesh() const { return mesh_; }

  /// Largest distance from any point to the origin; scale hint for reports.
  double radius() const;

 private:
  const SSDSpace* space_;
  std::vector<Vector> points_;
  std::string generator_;
  std::string sampling_;
  double mesh_;
};

/// Scans `grid` for points c with min-distance(c, A) > dist_floor whose
/// addition would keep A q-positive (inf q(A - c) >= -eps). An empty result
/// means maximality was not falsified on this grid; it is never a proof.
std::vector<Violation> maximality_falsifier(const SSDSpace& space,
                                            const QPositiveSet& A,
                                            const GridSpec& grid,
                                            double dist_floor,
                                            double eps = kEpsQ);

struct SetParams {
  double lo = -3.0;
  double hi = 3.0;
  int count = 121;
  double lambda = 1.0;        // helix pitch factor
  Vector direction;           // line
  std::vector<Vector> breakpoints;  // monotone-graph, (x, y) pairs in the plane
};

/// Raw generated sample, not yet validated q-positive (generators can and do
/// produce counterexamples, e.g. a flattened helix).
struct SetSample {
  std::vector<Vector> points;
  std::string generator;
  std::string sampling;
  double mesh = 0.0;
};

/// Generators: diagonal, helix(lambda), line(v), sgn-graph,
/// monotone-graph(breakpoints), box. Product sets are built with product_set.
SetSample sample_builtin_set(const SSDSpace& space, const std::string& name,
                             const SetParams& params = {});

/// sample_builtin_set validated into a QPositiveSet.
QPositiveSet builtin_set(const SSDSpace& space, const std::string& name,
                         const SetParams& params = {});
QPositiveSet product_set(const SSDSpace& product, const QPositiveSet& a,
                         const QPositiveSet& b);

std::vector<std::string> builtin_set_names();

/// CSV point files: one point per row, dim columns, '.' decimal separator,
/// no header.
std::vector<Vector> load_points_csv(const std::string& path, int expected_dim = -1);
void save_points_csv(const std::string& path, const std::vector<Vector>& points);

}  // namespace ssdkit
