#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmshare/mc.hpp"
#include "mmshare/model.hpp"

namespace mmshare::config {

// Configs are flat "key = value" lines; '#' starts a comment, blank lines
// are skipped. Keys are dotted paths. Values are scalars or space-separated
// lists.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& msg, int line = 0, const std::string& key = "")
      : std::runtime_error(format(msg, line, key)), line_(line), key_(key) {}
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  static std::string format(const std::string& msg, int line,
                            const std::string& key);
  int line_;
  std::string key_;
};

struct Entry {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

class KeyValues {
 public:
  static KeyValues parse_file(const std::string& path);
  static KeyValues parse_text(const std::string& text,
                              const std::string& origin = "<text>");

  bool has(const std::string& key) const;
  // Typed getters throw ConfigError with line context on malformed values.
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  std::string get_string_or(const std::string& key, const std::string& d) const;
  double get_double_or(const std::string& key, double d) const;
  int get_int_or(const std::string& key, int d) const;
  bool get_bool_or(const std::string& key, bool d) const;

  // Keys present but never read; surfaced as config errors so typos in
  // optional settings do not silently change nothing.
  std::vector<std::string> unused_keys() const;
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

  const std::string& origin() const { return origin_; }

 private:
  const Entry& entry(const std::string& key) const;
  std::map<std::string, Entry> entries_;
  std::string origin_;
};

// Scenario schema. Operator blocks are operator.<i>.* with i starting at 1;
// access.<i> and sharing_group.<j> hold 1-based operator index lists.
// A prefix ("scenario.") scopes every key, letting scenarios embed in
// larger files such as run manifests.
Scenario parse_scenario(const KeyValues& kv, const std::string& prefix = "");

std::string serialize_scenario(const Scenario& sc,
                               const std::string& prefix = "");

// mc.* block: drops, seed, region radius, deployment, fading, shadowing.
mc::McConfig parse_mc(const KeyValues& kv, const std::string& prefix = "");

std::string serialize_mc(const mc::McConfig& cfg,
                         const std::string& prefix = "");

}  // namespace mmshare::config
