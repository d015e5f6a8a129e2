#pragma once

#include <string>

#include "ssdkit/types.hpp"

namespace ssdkit {

/// A finite-dimensional real vector space carrying a symmetric bilinear form
/// form(b,c) = b'Sc and the Euclidean norm. The space is flagged `banach`
/// when |form(b,c)| <= |b||c| holds, i.e. when the spectral norm of S is at
/// most 1.
struct SSDSpace {
  int dim = 0;
  Matrix form_matrix;       // S, symmetric
  bool banach = false;      // spectral_norm <= 1 + 1e-9
  double spectral_norm = 0; // power iteration estimate of |S|
  std::string name = "custom";
};

/// Validates S (square, finite, exactly symmetric) and computes the banach
/// flag from the spectral norm (power iteration, relative tolerance 1e-10).
/// Asymmetric input is rejected, never symmetrized.
SSDSpace make_space(const Matrix& S, bool require_banach = false);

/// b'Sc, evaluated in a pairing-symmetric order so that
/// form(space, b, c) == form(space, c, b) holds bitwise.
double form(const SSDSpace& space, const Vector& b, const Vector& c);

/// q(b) = form(b,b)/2.
double q(const SSDSpace& space, const Vector& b);

/// g(b) = |b|^2/2. Requires the banach flag.
double g(const SSDSpace& space, const Vector& b);

/// p(b) = g(b) + q(b), nonnegative on banach spaces. Requires the banach flag.
double p(const SSDSpace& space, const Vector& b);

/// Spectral norm of a symmetric matrix by power iteration on S^2,
/// relative tolerance 1e-10, deterministic start vector.
double spectral_norm_power_iteration(const Matrix& S);

/// Builtin catalog: hilbert-identity(n), hilbert-negative(n), r3-swap,
/// pairing(m), product(a, b).
SSDSpace builtin_space(const std::string& name,
                       const std::vector<long long>& int_params = {});
SSDSpace product_space(const SSDSpace& a, const SSDSpace& b);

std::vector<std::string> builtin_space_names();

}  // namespace ssdkit
