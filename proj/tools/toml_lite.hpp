#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace carnot_cli {

// Minimal TOML subset for pipeline configs: [sections], key = value with
// strings, integers, floats, booleans and flat arrays.
struct TomlValue {
  std::variant<std::string, long, double, bool, std::vector<TomlValue>> v;

  bool is_string() const { return std::holds_alternative<std::string>(v); }
  const std::string& str() const { return std::get<std::string>(v); }
  long integer() const;
  double number() const;
  bool boolean() const { return std::get<bool>(v); }
  const std::vector<TomlValue>& array() const {
    return std::get<std::vector<TomlValue>>(v);
  }
};

using TomlTable = std::map<std::string, TomlValue>;
using TomlDoc = std::map<std::string, TomlTable>;  // "" holds top-level keys

TomlDoc parse_toml(const std::string& text);
TomlDoc load_toml_file(const std::string& path);

}  // namespace carnot_cli
