#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "ssdkit/grid.hpp"
#include "ssdkit/space.hpp"

namespace ssdkit {

/// Extended-real convex function in one of four closed representations.
/// Conjugation is exact for quadratics and the two polyhedral forms; grids
/// are the fallback and carry explicit mesh-dependent bounds.
class ConvexFunction {
 public:
  struct Quadratic {
    Matrix Q;  // symmetric, smallest eigenvalue >= -1e-10
    Vector b;
    double c = 0.0;
  };
  struct MaxAffine {
    std::vector<Vector> slopes;
    std::vector<double> offsets;  // value = max_i(slopes[i].x - offsets[i])
  };
  struct GridSampled {
    GridSpec grid;
    std::vector<double> values;  // row-major, +inf allowed, >=1 finite
  };
  struct PointEnvelope {
    std::vector<Vector> points;
    std::vector<double> values;  // lower convex envelope, +inf outside hull
  };

  enum class Kind { quadratic, max_affine, grid_sampled, point_envelope };

  static ConvexFunction quadratic(Matrix Q, Vector b, double c);
  static ConvexFunction max_affine(std::vector<Vector> slopes,
                                   std::vector<double> offsets);
  static ConvexFunction grid_sampled(GridSpec grid, std::vector<double> values);
  static ConvexFunction point_envelope(std::vector<Vector> points,
                                       std::vector<double> values);

  /// |x|^2/2 on R^dim.
  static ConvexFunction half_sqnorm(int dim);

  Kind kind() const { return static_cast<Kind>(repr_.index()); }
  int dim() const;
  const char* kind_name() const;

  const Quadratic& as_quadratic() const { return std::get<Quadratic>(repr_); }
  const MaxAffine& as_max_affine() const { return std::get<MaxAffine>(repr_); }
  const GridSampled& as_grid_sampled() const { return std::get<GridSampled>(repr_); }
  const PointEnvelope& as_point_envelope() const {
    return std::get<PointEnvelope>(repr_);
  }

  /// Defining value of the representation. GridSampled evaluation off a grid
  /// node is an error, not an interpolation. PointEnvelope solves the
  /// envelope linear program exactly (pivot tolerance 1e-11).
  double eval(const Vector& x) const;

 private:
  using Repr = std::variant<Quadratic, MaxAffine, GridSampled, PointEnvelope>;
  explicit ConvexFunction(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
};

/// Fenchel conjugate with respect to the dot pairing. Closed forms:
/// Quadratic (positive definite) -> Quadratic, MaxAffine <-> PointEnvelope.
/// GridSampled input requires the dual-grid overload.
ConvexFunction conjugate_star(const ConvexFunction& f);
ConvexFunction conjugate_star(const ConvexFunction& f, const GridSpec& dual_grid);

/// Conjugate with respect to the space's own pairing: the star conjugate
/// composed with the form matrix. MaxAffine input needs an invertible form.
ConvexFunction intrinsic_conjugate(const ConvexFunction& f, const SSDSpace& space);

/// GridSampled route: out(c) = max over f's grid nodes b of form(b,c) - f(b),
/// evaluated at every node c of dual_grid (direct discrete sup).
ConvexFunction intrinsic_conjugate(const ConvexFunction& f, const SSDSpace& space,
                                   const GridSpec& dual_grid);

using GridFunction = std::function<double(const Vector&)>;

struct InfConvValue {
  double value = kInf;
  Vector minimizer;  // empty when value is +inf
};

/// (h inf-conv k)(x) minimized over the search grid. Accepts arbitrary
/// grid-evaluable integrands; the integrands this toolkit cares about
/// (f - q) are generally nonconvex. Throws EmptySearchGrid when the search
/// grid misses dom h entirely.
InfConvValue inf_conv(const GridFunction& h, const GridFunction& k,
                      const Vector& x, const GridSpec& search);

/// ConvexFunction overload; dispatches to the exact closed form when both
/// arguments are positive-definite quadratics (the grid is then ignored).
InfConvValue inf_conv(const ConvexFunction& h, const ConvexFunction& k,
                      const Vector& x, const GridSpec& search);

/// Exact inf-convolution of two positive-definite quadratics via conjugate
/// algebra: (h inf-conv k) = (h* + k*)*.
ConvexFunction inf_conv_quadratic(const ConvexFunction& h, const ConvexFunction& k);

/// min over y of (1/2)y'Ay + a.y + alpha + (1/2)(x-y)'B(x-y) + b.(x-y) + beta.
/// A may be indefinite; requires A + B positive definite.
InfConvValue quadratic_infconv(const Matrix& A, const Vector& a, double alpha,
                               const Matrix& B, const Vector& b, double beta,
                               const Vector& x);

struct BiconjugateReport {
  double max_gap = 0.0;   // max over interior nodes of f - f**
  double min_gap = 0.0;   // most negative gap observed (>= -1e-9 always)
  double lipschitz = 0.0; // slope estimate C on the grid box
  double tolerance = 0.0; // C * max grid step
  std::size_t interior_nodes = 0;
  Vector worst_node;
};

/// Grid-scale check that conjugating twice recovers the function: computes
/// f* on dual_grid and f** back on grid, both by the factored discrete
/// Legendre transform, and reports the worst interior gap against C*h.
BiconjugateReport biconjugate_check(const ConvexFunction& f, const GridSpec& grid,
                                    const GridSpec& dual_grid);

/// Points where f and q coincide within tol. Checks f >= q - tol on all
/// candidates first and throws FBelowQ (with witness) on violation.
std::vector<Vector> coincidence_set(const SSDSpace& space, const ConvexFunction& f,
                                    const std::vector<Vector>& candidates,
                                    double tol);

/// Axis-aligned bounding box of the image of `grid`'s box under M, with the
/// same node counts. Default dual search region for conjugate oracles.
GridSpec map_box(const Matrix& M, const GridSpec& grid);

/// GridSampled CSV: header `# grid: min,max,count[;min,max,count...]`, then
/// values in row-major order, `inf` for +infinity.
ConvexFunction load_grid_csv(const std::string& path);
void save_grid_csv(const std::string& path, const ConvexFunction& f);

}  // namespace ssdkit
