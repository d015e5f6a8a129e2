#pragma once

#include <Eigen/Core>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssdkit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Pairwise q-positivity slack.
inline constexpr double kEpsQ = 1e-12;
// Default slack for inequality suites on well-scaled inputs.
inline constexpr double kEpsIneq = 1e-9;

enum class ErrorCode {
  AsymmetricForm,
  NotBanach,
  NotBanachSpace,
  NotBanachDual,
  DimensionMismatch,
  EmptySet,
  EmptySearchGrid,
  EmptyPqSet,
  UnknownBuiltin,
  InvalidParams,
  OffGridPoint,
  DegenerateQuadratic,
  ImproperFunction,
  SingularForm,
  NoDualStructure,
  FBelowQ,
  LPNumericalFailure,
  ConfigError,
  IOError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline bool is_finite(double x) { return std::isfinite(x); }

void require_dim(const Vector& v, Eigen::Index dim, const char* what);

}  // namespace ssdkit
