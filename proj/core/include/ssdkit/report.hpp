#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssdkit/types.hpp"

namespace ssdkit {

enum class CheckStatus { pass, fail, not_falsified, skipped };

const char* check_status_name(CheckStatus s);

/// One row of a verification report. `ref` is the stable catalog anchor of
/// the check (see `ssdkit describe`); status is derived from the violation:
/// fail iff max_violation > tolerance + allowance.
struct CheckLine {
  std::string name;
  std::string ref;
  CheckStatus status = CheckStatus::pass;
  double max_violation = 0.0;
  double tolerance = 0.0;
  double allowance = 0.0;
  std::vector<Vector> witness;
  std::string notes;

  static CheckLine from_violation(std::string name, std::string ref,
                                  double max_violation, double tolerance,
                                  double allowance = 0.0,
                                  std::vector<Vector> witness = {},
                                  std::string notes = "");
};

struct CheckReport {
  std::string scenario;
  std::uint64_t seed = 42;
  int workers = 1;
  std::vector<CheckLine> checks;
  double wall_time_ms = 0.0;

  void add(CheckLine line) { checks.push_back(std::move(line)); }
  void merge(const CheckReport& other);

  std::size_t count(CheckStatus s) const;
  bool any_fail() const { return count(CheckStatus::fail) > 0; }

  /// Deterministic JSON (snake_case keys, insertion-ordered). wall_time_ms is
  /// the only field that varies between identical runs.
  std::string to_json() const;
};

}  // namespace ssdkit
