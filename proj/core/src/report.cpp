#include "ssdkit/report.hpp"

#include <nlohmann/json.hpp>

namespace ssdkit {

using ordered_json = nlohmann::ordered_json;

const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_falsified: return "not-falsified";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

CheckLine CheckLine::from_violation(std::string name, std::string ref,
                                    double max_violation, double tolerance,
                                    double allowance,
                                    std::vector<Vector> witness,
                                    std::string notes) {
  CheckLine line;
  line.name = std::move(name);
  line.ref = std::move(ref);
  line.max_violation = max_violation;
  line.tolerance = tolerance;
  line.allowance = allowance;
  line.status = max_violation > tolerance + allowance ? CheckStatus::fail
                                                      : CheckStatus::pass;
  line.witness = std::move(witness);
  line.notes = std::move(notes);
  return line;
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& line : other.checks) checks.push_back(line);
}

std::size_t CheckReport::count(CheckStatus s) const {
  std::size_t n = 0;
  for (const auto& line : checks) n += (line.status == s) ? 1 : 0;
  return n;
}

namespace {

ordered_json json_number(double v) {
  // JSON has no literal for infinities; report them as strings.
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

}  // namespace

std::string CheckReport::to_json() const {
  ordered_json j;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["workers"] = workers;
  ordered_json rows = ordered_json::array();
  for (const auto& line : checks) {
    ordered_json row;
    row["name"] = line.name;
    row["ref"] = line.ref;
    row["status"] = check_status_name(line.status);
    row["max_violation"] = json_number(line.max_violation);
    row["tolerance"] = json_number(line.tolerance);
    row["allowance"] = json_number(line.allowance);
    if (!line.witness.empty()) {
      ordered_json w = ordered_json::array();
      for (const auto& v : line.witness) {
        ordered_json point = ordered_json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) point.push_back(json_number(v[i]));
        w.push_back(point);
      }
      row["witness"] = w;
    }
    if (!line.notes.empty()) row["notes"] = line.notes;
    rows.push_back(row);
  }
  j["checks"] = rows;
  j["summary"] = {{"pass", count(CheckStatus::pass)},
                  {"fail", count(CheckStatus::fail)},
                  {"not_falsified", count(CheckStatus::not_falsified)},
                  {"skipped", count(CheckStatus::skipped)}};
  j["wall_time_ms"] = wall_time_ms;
  return j.dump(2) + "\n";
}

}  // namespace ssdkit
