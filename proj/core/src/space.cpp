#include "ssdkit/space.hpp"

#include <cmath>
#include <sstream>

#include "ssdkit/rng.hpp"

namespace ssdkit {

double spectral_norm_power_iteration(const Matrix& S) {
  const Eigen::Index n = S.rows();
  // Iterate on S^2: symmetric PSD, dominant eigenvalue |S|^2, so the
  // estimate cannot oscillate between +/- eigenvalue pairs.
  Vector v(n);
  {
    Rng r(0x53534b49544e4f52ull);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = r.uniform(0.5, 1.5);
  }
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 100000; ++it) {
    Vector w = S * (S * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    const double next = std::sqrt(nw);
    if (it > 0 && std::abs(next - lambda) <= 1e-10 * std::max(1.0, next)) {
      return next;
    }
    lambda = next;
    v = w;
  }
  return lambda;
}

SSDSpace make_space(const Matrix& S, bool require_banach) {
  if (S.rows() != S.cols() || S.rows() == 0) {
    throw Error(ErrorCode::InvalidParams, "form matrix must be square and nonempty");
  }
  for (Eigen::Index i = 0; i < S.rows(); ++i) {
    for (Eigen::Index j = 0; j < S.cols(); ++j) {
      if (!std::isfinite(S(i, j))) {
        throw Error(ErrorCode::InvalidParams, "form matrix entries must be finite");
      }
    }
  }
  double asym = 0.0;
  for (Eigen::Index i = 0; i < S.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < S.cols(); ++j) {
      asym = std::max(asym, std::abs(S(i, j) - S(j, i)));
    }
  }
  if (asym > 0.0) {
    std::ostringstream os;
    os << "form matrix is not symmetric (max |S_ij - S_ji| = " << asym << ")";
    throw Error(ErrorCode::AsymmetricForm, os.str());
  }

  SSDSpace space;
  space.dim = static_cast<int>(S.rows());
  space.form_matrix = S;
  space.spectral_norm = spectral_norm_power_iteration(S);
  space.banach = space.spectral_norm <= 1.0 + 1e-9;
  if (require_banach && !space.banach) {
    std::ostringstream os;
    os << "spectral norm " << space.spectral_norm << " exceeds 1";
    throw Error(ErrorCode::NotBanach, os.str());
  }
  return space;
}

double form(const SSDSpace& space, const Vector& b, const Vector& c) {
  require_dim(b, space.dim, "form argument b");
  require_dim(c, space.dim, "form argument c");
  const Matrix& S = space.form_matrix;
  // Diagonal terms use b_i*c_i (commutes bitwise); off-diagonal pairs use
  // b_i*c_j + b_j*c_i, whose operands swap places under b<->c. IEEE addition
  // and multiplication commute, so the result is bit-identical either way.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < S.rows(); ++i) {
    acc += S(i, i) * (b[i] * c[i]);
    for (Eigen::Index j = i + 1; j < S.cols(); ++j) {
      if (S(i, j) != 0.0) acc += S(i, j) * (b[i] * c[j] + b[j] * c[i]);
    }
  }
  return acc;
}

double q(const SSDSpace& space, const Vector& b) {
  return 0.5 * form(space, b, b);
}

double g(const SSDSpace& space, const Vector& b) {
  if (!space.banach) {
    throw Error(ErrorCode::NotBanachSpace,
                "g is defined only when the form satisfies |form(b,c)| <= |b||c|");
  }
  require_dim(b, space.dim, "g argument");
  return 0.5 * b.squaredNorm();
}

double p(const SSDSpace& space, const Vector& b) {
  if (!space.banach) {
    throw Error(ErrorCode::NotBanachSpace,
                "p is defined only when the form satisfies |form(b,c)| <= |b||c|");
  }
  require_dim(b, space.dim, "p argument");
  return 0.5 * b.squaredNorm() + q(space, b);
}

SSDSpace product_space(const SSDSpace& a, const SSDSpace& b) {
  Matrix S = Matrix::Zero(a.dim + b.dim, a.dim + b.dim);
  S.topLeftCorner(a.dim, a.dim) = a.form_matrix;
  S.bottomRightCorner(b.dim, b.dim) = b.form_matrix;
  SSDSpace prod = make_space(S);
  prod.name = "product(" + a.name + "," + b.name + ")";
  return prod;
}

namespace {

SSDSpace named(SSDSpace space, std::string name) {
  space.name = std::move(name);
  return space;
}

long long param_at(const std::vector<long long>& params, std::size_t i,
                   const std::string& name) {
  if (i >= params.size()) {
    throw Error(ErrorCode::InvalidParams,
                "builtin space '" + name + "' needs " + std::to_string(i + 1) +
                    " integer parameter(s)");
  }
  if (params[i] < 1 || params[i] > 64) {
    throw Error(ErrorCode::InvalidParams,
                "builtin space '" + name + "' parameter out of range [1,64]");
  }
  return params[i];
}

}  // namespace

SSDSpace builtin_space(const std::string& name,
                       const std::vector<long long>& int_params) {
  if (name == "hilbert-identity") {
    const auto n = param_at(int_params, 0, name);
    return named(make_space(Matrix::Identity(n, n), true),
                 "hilbert-identity(" + std::to_string(n) + ")");
  }
  if (name == "hilbert-negative") {
    const auto n = param_at(int_params, 0, name);
    return named(make_space(-Matrix::Identity(n, n), true),
                 "hilbert-negative(" + std::to_string(n) + ")");
  }
  if (name == "r3-swap") {
    Matrix S = Matrix::Zero(3, 3);
    S(0, 1) = S(1, 0) = 1.0;
    S(2, 2) = 1.0;
    return named(make_space(S, true), "r3-swap");
  }
  if (name == "pairing") {
    const auto m = param_at(int_params, 0, name);
    Matrix S = Matrix::Zero(2 * m, 2 * m);
    S.topRightCorner(m, m) = Matrix::Identity(m, m);
    S.bottomLeftCorner(m, m) = Matrix::Identity(m, m);
    return named(make_space(S, true), "pairing(" + std::to_string(m) + ")");
  }
  throw Error(ErrorCode::UnknownBuiltin, "no builtin space named '" + name + "'");
}

std::vector<std::string> builtin_space_names() {
  return {"hilbert-identity(n)", "hilbert-negative(n)", "r3-swap", "pairing(m)",
          "product(a,b)"};
}

}  // namespace ssdkit
