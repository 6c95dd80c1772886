#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace ringcc::io {

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Flat `key = value` configuration. Blank lines and text after `#` are
/// ignored; keys outside the allowed set are rejected.
class RunConfig {
 public:
  RunConfig() = default;

  static RunConfig parse(std::istream& in, const std::set<std::string>& allowed, const std::string& origin = "config") {
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto body = trim(line);
      if (body.empty()) continue;
      const auto eq = body.find('=');
      const auto where = origin + ":" + std::to_string(line_no);
      if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
      auto key = trim(body.substr(0, eq));
      auto value = trim(body.substr(eq + 1));
      if (key.empty()) throw ConfigError(where + ": empty key");
      if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
      if (cfg.values_.contains(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
      cfg.values_.emplace(std::move(key), std::move(value));
    }
    return cfg;
  }

  static RunConfig load(const std::string& path, const std::set<std::string>& allowed) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse(in, allowed, path);
  }

  [[nodiscard]] bool has(const std::string& key) const { return values_.contains(key); }
  [[nodiscard]] const std::map<std::string, std::string>& values() const { return values_; }

  [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback = {}) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  /// Finite value in [lo, hi].
  [[nodiscard]] double get_double(const std::string& key, double fallback, double lo, double hi) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const double v = to_double(key, it->second);
    if (!(v >= lo && v <= hi)) throw ConfigError("'" + key + "' = " + it->second + " is out of range");
    return v;
  }

  [[nodiscard]] std::int64_t get_int(const std::string& key, std::int64_t fallback, std::int64_t lo,
                                     std::int64_t hi) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const double v = to_double(key, it->second);
    if (v != std::floor(v) || !(v >= static_cast<double>(lo) && v <= static_cast<double>(hi)))
      throw ConfigError("'" + key + "' = " + it->second + " is not an integer in range");
    return static_cast<std::int64_t>(v);
  }

  [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw ConfigError("'" + key + "' expects true or false");
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  static double to_double(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
      throw ConfigError("'" + key + "' = '" + text + "' is not a finite number");
    return v;
  }

  std::map<std::string, std::string> values_;
};

}  // namespace ringcc::io
