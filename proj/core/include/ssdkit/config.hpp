#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ssdkit/types.hpp"

namespace ssdkit {

/// Typed scalar or inline list in a scenario file.
class ConfigValue {
 public:
  using List = std::vector<ConfigValue>;
  using Storage = std::variant<std::int64_t, double, bool, std::string, List>;

  ConfigValue() : storage_(std::int64_t{0}) {}
  explicit ConfigValue(Storage s) : storage_(std::move(s)) {}

  bool is_integer() const { return std::holds_alternative<std::int64_t>(storage_); }
  bool is_real() const { return std::holds_alternative<double>(storage_); }
  bool is_bool() const { return std::holds_alternative<bool>(storage_); }
  bool is_string() const { return std::holds_alternative<std::string>(storage_); }
  bool is_list() const { return std::holds_alternative<List>(storage_); }

  std::int64_t as_integer() const { return std::get<std::int64_t>(storage_); }
  double as_real() const {
    return is_integer() ? static_cast<double>(as_integer()) : std::get<double>(storage_);
  }
  bool as_bool() const { return std::get<bool>(storage_); }
  const std::string& as_string() const { return std::get<std::string>(storage_); }
  const List& as_list() const { return std::get<List>(storage_); }

  bool operator==(const ConfigValue& other) const { return storage_ == other.storage_; }

  std::string serialize() const;

 private:
  Storage storage_;
};

struct ConfigEntry {
  std::string key;
  ConfigValue value;
  int line = 0;
};

struct ConfigSection {
  std::string type;  // e.g. "scenario", "space", "set", "grid", "suite"
  std::string name;  // optional instance name
  int line = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(const std::string& key) const;
  bool operator==(const ConfigSection& other) const;
};

/// Section/key-value scenario dialect; see docs/scenario-format.md. Errors
/// name the offending key and line.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin);
  static Config parse_file(const std::string& path);

  const std::vector<ConfigSection>& sections() const { return sections_; }
  std::vector<const ConfigSection*> sections_of(const std::string& type) const;
  const ConfigSection* unique_section(const std::string& type) const;
  const std::string& origin() const { return origin_; }

  std::string serialize() const;
  bool operator==(const Config& other) const { return sections_ == other.sections_; }

  [[noreturn]] void fail(int line, const std::string& message) const;

 private:
  std::string origin_;
  std::vector<ConfigSection> sections_;
};

}  // namespace ssdkit
