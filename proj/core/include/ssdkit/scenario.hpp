#pragma once

#include <optional>

#include "ssdkit/config.hpp"
#include "ssdkit/report.hpp"

namespace ssdkit {

struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
};

/// Validates the config (bad references are ConfigError) and executes the
/// suites in file order. Runtime module errors become failed check lines,
/// never a crash.
CheckReport run_scenario(const Config& config,
                         const ScenarioOverrides& overrides = {});

CheckReport run_scenario_text(const std::string& text, const std::string& origin,
                              const ScenarioOverrides& overrides = {});

struct BundledScenario {
  std::string name;
  std::string description;
  std::string config_text;
};

const std::vector<BundledScenario>& bundled_scenarios();
const BundledScenario* find_bundled_scenario(const std::string& name);

/// Text listing of builtin spaces, set generators, suite kinds and bundled
/// scenarios.
std::string list_builtins_text();

/// Description of a builtin space, set generator, suite kind or bundled
/// scenario, including the check anchors each suite emits. Throws
/// UnknownBuiltin.
std::string describe_builtin(const std::string& name);

}  // namespace ssdkit
