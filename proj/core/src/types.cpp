#include "ssdkit/types.hpp"

#include "ssdkit/parallel.hpp"

namespace ssdkit {

std::atomic<int>& worker_count_storage() {
  static std::atomic<int> count{1};
  return count;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::AsymmetricForm: return "AsymmetricForm";
    case ErrorCode::NotBanach: return "NotBanach";
    case ErrorCode::NotBanachSpace: return "NotBanachSpace";
    case ErrorCode::NotBanachDual: return "NotBanachDual";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::EmptySearchGrid: return "EmptySearchGrid";
    case ErrorCode::EmptyPqSet: return "EmptyPqSet";
    case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::OffGridPoint: return "OffGridPoint";
    case ErrorCode::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorCode::ImproperFunction: return "ImproperFunction";
    case ErrorCode::SingularForm: return "SingularForm";
    case ErrorCode::NoDualStructure: return "NoDualStructure";
    case ErrorCode::FBelowQ: return "FBelowQ";
    case ErrorCode::LPNumericalFailure: return "LPNumericalFailure";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IOError: return "IOError";
  }
  return "UnknownError";
}

void require_dim(const Vector& v, Eigen::Index dim, const char* what) {
  if (v.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": expected length " + std::to_string(dim) +
                    ", got " + std::to_string(v.size()));
  }
}

}  // namespace ssdkit
