#include "ssdkit/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ssdkit {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.' || c == '+' || c == '/' || c == ':' || c == '(' || c == ')';
}

[[noreturn]] void fail_at(const std::string& origin, int line,
                          const std::string& message) {
  throw Error(ErrorCode::ConfigError,
              origin + ":" + std::to_string(line) + ": " + message);
}

ConfigValue parse_scalar(const std::string& origin, int line, const std::string& raw) {
  if (raw.empty()) fail_at(origin, line, "empty value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') {
      fail_at(origin, line, "unterminated string " + raw);
    }
    return ConfigValue(raw.substr(1, raw.size() - 2));
  }
  if (raw == "true") return ConfigValue(true);
  if (raw == "false") return ConfigValue(false);

  // Integer: full consume, no decimal point or exponent.
  if (raw.find('.') == std::string::npos && raw.find('e') == std::string::npos &&
      raw.find('E') == std::string::npos) {
    std::int64_t iv = 0;
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), iv);
    if (res.ec == std::errc() && res.ptr == raw.data() + raw.size()) {
      return ConfigValue(iv);
    }
  }
  {
    double dv = 0.0;
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), dv);
    if (res.ec == std::errc() && res.ptr == raw.data() + raw.size()) {
      if (!std::isfinite(dv)) fail_at(origin, line, "non-finite number " + raw);
      return ConfigValue(dv);
    }
  }
  // A token that starts like a number must be one; bare strings start with a
  // letter, underscore or path character.
  const char first = raw.front();
  if (std::isdigit(static_cast<unsigned char>(first)) || first == '+' ||
      first == '-' || first == '.') {
    fail_at(origin, line, "cannot parse number '" + raw + "'");
  }
  for (char c : raw) {
    if (!is_bare_char(c)) {
      fail_at(origin, line, "cannot parse value '" + raw + "'");
    }
  }
  return ConfigValue(raw);
}

ConfigValue parse_value(const std::string& origin, int line, const std::string& raw) {
  if (!raw.empty() && raw.front() == '[') {
    if (raw.back() != ']') fail_at(origin, line, "unterminated list " + raw);
    ConfigValue::List items;
    const std::string inner = raw.substr(1, raw.size() - 2);
    std::string cell;
    std::istringstream stream(inner);
    while (std::getline(stream, cell, ',')) {
      const std::string t = trim(cell);
      if (t.empty()) fail_at(origin, line, "empty list element");
      items.push_back(parse_scalar(origin, line, t));
    }
    return ConfigValue(std::move(items));
  }
  return parse_scalar(origin, line, raw);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

}  // namespace

std::string ConfigValue::serialize() const {
  std::ostringstream os;
  if (is_integer()) {
    os << as_integer();
  } else if (is_real()) {
    os.precision(17);
    const double v = std::get<double>(storage_);
    os << v;
    const std::string s = os.str();
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) {
      return s + ".0";
    }
    return s;
  } else if (is_bool()) {
    os << (as_bool() ? "true" : "false");
  } else if (is_string()) {
    const std::string& s = as_string();
    bool bare = !s.empty() && s != "true" && s != "false";
    for (char c : s) bare = bare && is_bare_char(c);
    if (bare) {
      // A bare token that would re-parse as a number must stay quoted.
      double probe = 0.0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), probe);
      if (res.ec == std::errc() && res.ptr == s.data() + s.size()) bare = false;
    }
    if (bare) {
      os << s;
    } else {
      os << '"' << s << '"';
    }
  } else {
    os << "[";
    const auto& items = as_list();
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) os << ", ";
      os << items[i].serialize();
    }
    os << "]";
  }
  return os.str();
}

const ConfigEntry* ConfigSection::find(const std::string& key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

bool ConfigSection::operator==(const ConfigSection& other) const {
  if (type != other.type || name != other.name ||
      entries.size() != other.entries.size()) {
    return false;
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].key != other.entries[i].key ||
        !(entries[i].value == other.entries[i].value)) {
      return false;
    }
  }
  return true;
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config config;
  config.origin_ = origin;
  std::istringstream stream(text);
  std::string raw;
  int lineno = 0;
  ConfigSection* current = nullptr;

  while (std::getline(stream, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_at(origin, lineno, "unterminated section header");
      const std::string inner = trim(line.substr(1, line.size() - 2));
      if (inner.empty()) fail_at(origin, lineno, "empty section header");
      ConfigSection section;
      section.line = lineno;
      const auto space_pos = inner.find(' ');
      if (space_pos == std::string::npos) {
        section.type = inner;
      } else {
        section.type = trim(inner.substr(0, space_pos));
        section.name = trim(inner.substr(space_pos + 1));
      }
      config.sections_.push_back(std::move(section));
      current = &config.sections_.back();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail_at(origin, lineno, "expected 'key = value', got '" + line + "'");
    }
    if (!current) {
      fail_at(origin, lineno, "key outside of any [section]");
    }
    ConfigEntry entry;
    entry.key = trim(line.substr(0, eq));
    entry.line = lineno;
    if (entry.key.empty()) fail_at(origin, lineno, "empty key");
    if (current->find(entry.key)) {
      fail_at(origin, lineno, "duplicate key '" + entry.key + "'");
    }
    entry.value = parse_value(origin, lineno, trim(line.substr(eq + 1)));
    current->entries.push_back(std::move(entry));
  }
  return config;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

std::vector<const ConfigSection*> Config::sections_of(const std::string& type) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections_) {
    if (s.type == type) out.push_back(&s);
  }
  return out;
}

const ConfigSection* Config::unique_section(const std::string& type) const {
  const ConfigSection* found = nullptr;
  for (const auto& s : sections_) {
    if (s.type == type && s.name.empty()) {
      if (found) fail(s.line, "duplicate [" + type + "] section");
      found = &s;
    }
  }
  return found;
}

std::string Config::serialize() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    const auto& s = sections_[i];
    if (i) os << "\n";
    os << "[" << s.type;
    if (!s.name.empty()) os << " " << s.name;
    os << "]\n";
    for (const auto& e : s.entries) {
      os << e.key << " = " << e.value.serialize() << "\n";
    }
  }
  return os.str();
}

void Config::fail(int line, const std::string& message) const {
  fail_at(origin_, line, message);
}

}  // namespace ssdkit
