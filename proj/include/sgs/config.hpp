#pragma once

// Flat, line-oriented `key = value` configuration with [section] headers.
// Keys are stored as "section.key". Unknown keys are rejected after a
// command has consumed what it understands, so typos fail loudly and runs
// stay fully determined by config + seed.

#include <map>
#include <set>
#include <string>
#include <vector>

namespace sgs {

class KVConfig {
 public:
  static KVConfig parse_string(const std::string& text);
  static KVConfig parse_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback);
  std::string require_string(const std::string& key);
  double get_double(const std::string& key, double fallback);
  double require_double(const std::string& key);
  long get_long(const std::string& key, long fallback);

  /// Keys under "section." (consumes nothing).
  std::vector<std::string> keys_in(const std::string& section) const;

  /// Throws listing every key never consumed by a getter.
  void reject_unknown() const;

  void set(const std::string& key, const std::string& value);

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
};

}  // namespace sgs
