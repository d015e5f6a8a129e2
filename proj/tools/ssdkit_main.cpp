#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ssdkit/qpositive.hpp"
#include "ssdkit/scenario.hpp"
#include "ssdkit/space.hpp"

namespace {

int worker_flag_or_env(int from_flag) {
  if (from_flag > 0) return from_flag;
  if (const char* env = std::getenv("SSDKIT_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void print_summary(const ssdkit::CheckReport& report) {
  for (const auto& line : report.checks) {
    std::cout << "[" << ssdkit::check_status_name(line.status) << "] " << line.name;
    if (line.status == ssdkit::CheckStatus::fail) {
      std::cout << " (violation " << line.max_violation << " > " << line.tolerance;
      if (line.allowance > 0) std::cout << " + " << line.allowance;
      std::cout << ")";
    }
    std::cout << "\n";
  }
  std::cout << report.count(ssdkit::CheckStatus::pass) << " pass, "
            << report.count(ssdkit::CheckStatus::fail) << " fail, "
            << report.count(ssdkit::CheckStatus::not_falsified)
            << " not-falsified, " << report.count(ssdkit::CheckStatus::skipped)
            << " skipped\n";
}

int run_command(const std::string& scenario, const std::string& out_path,
                long long seed, bool seed_set, int workers) {
  ssdkit::ScenarioOverrides overrides;
  if (seed_set) overrides.seed = static_cast<std::uint64_t>(seed);
  overrides.workers = worker_flag_or_env(workers);

  ssdkit::CheckReport report;
  if (std::filesystem::exists(scenario)) {
    report = ssdkit::run_scenario(ssdkit::Config::parse_file(scenario), overrides);
  } else if (const auto* bundled = ssdkit::find_bundled_scenario(scenario)) {
    report = ssdkit::run_scenario_text(bundled->config_text, bundled->name, overrides);
  } else {
    throw ssdkit::Error(ssdkit::ErrorCode::ConfigError,
                        "no scenario file or bundled scenario named '" + scenario +
                            "'");
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      throw ssdkit::Error(ssdkit::ErrorCode::IOError,
                          "cannot write report to '" + out_path + "'");
    }
    out << report.to_json();
  } else {
    std::cout << report.to_json();
  }
  print_summary(report);
  return report.any_fail() ? 1 : 0;
}

int check_q_positive(const std::string& space_name, const std::string& points_path,
                     double tol) {
  std::vector<long long> params;
  std::string name = space_name;
  // Accept pairing(2) style parameterized names.
  const auto open = space_name.find('(');
  if (open != std::string::npos && space_name.back() == ')') {
    name = space_name.substr(0, open);
    params.push_back(
        std::atoll(space_name.substr(open + 1, space_name.size() - open - 2).c_str()));
  }
  const ssdkit::SSDSpace space = ssdkit::builtin_space(name, params);
  const auto points = ssdkit::load_points_csv(points_path, space.dim);
  const auto result = ssdkit::is_q_positive(space, points, tol);
  if (result.positive) {
    std::cout << "q-positive: " << points.size() << " point(s) in " << space.name
              << ", tolerance " << tol << "\n";
    return 0;
  }
  const auto& v = *result.violation;
  std::cout << "not q-positive: q(b - c) = " << v.value << " < " << v.bound
            << "\n  b = " << v.witness[0].transpose()
            << "\n  c = " << v.witness[1].transpose() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ssdkit - verification toolkit for symmetrically self-dual spaces"};
  app.require_subcommand(1);

  std::string scenario, out_path, describe_name, space_name, points_path;
  long long seed = 42;
  int workers = 0;
  double tol = 1e-12;

  auto* run = app.add_subcommand("run", "run a scenario file or bundled scenario");
  run->add_option("scenario", scenario, "path to a .cfg file or bundled name")
      ->required();
  run->add_option("--out", out_path, "write the JSON report here instead of stdout");
  auto* seed_opt = run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--workers", workers,
                  "worker pool size (SSDKIT_WORKERS as fallback)");

  auto* list = app.add_subcommand("list", "list builtins and bundled scenarios");

  auto* describe = app.add_subcommand("describe", "describe a builtin or scenario");
  describe->add_option("name", describe_name, "builtin, suite kind or scenario")
      ->required();

  auto* check = app.add_subcommand("check", "one-off checks");
  auto* qpos = check->add_subcommand("q-positive", "pairwise q-positivity of a CSV "
                                                   "point set");
  qpos->add_option("--space", space_name, "builtin space, e.g. r3-swap, pairing(1)")
      ->required();
  qpos->add_option("--points", points_path, "CSV file, one point per row")
      ->required();
  qpos->add_option("--tol", tol, "q-positivity slack");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(scenario, out_path, seed, seed_opt->count() > 0,
                         workers);
    }
    if (list->parsed()) {
      std::cout << ssdkit::list_builtins_text();
      return 0;
    }
    if (describe->parsed()) {
      std::cout << ssdkit::describe_builtin(describe_name);
      return 0;
    }
    if (check->parsed()) {
      if (qpos->parsed()) return check_q_positive(space_name, points_path, tol);
      std::cerr << "check: missing subcommand\n";
      return 2;
    }
  } catch (const ssdkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
