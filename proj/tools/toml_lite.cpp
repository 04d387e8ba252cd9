#include "toml_lite.hpp"

#include <carnot/rational.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace carnot_cli {

using carnot::Error;

long TomlValue::integer() const {
  if (std::holds_alternative<long>(v)) return std::get<long>(v);
  if (std::holds_alternative<double>(v)) return static_cast<long>(std::get<double>(v));
  throw Error("toml: expected integer value");
}

double TomlValue::number() const {
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  if (std::holds_alternative<long>(v)) return static_cast<double>(std::get<long>(v));
  throw Error("toml: expected numeric value");
}

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

TomlValue parse_value(const std::string& raw);

TomlValue parse_array(const std::string& raw) {
  std::vector<TomlValue> items;
  std::string inner = strip(raw.substr(1, raw.size() - 2));
  int depth = 0;
  bool in_str = false;
  std::string cur;
  for (char c : inner) {
    if (in_str) {
      cur.push_back(c);
      if (c == '"') in_str = false;
      continue;
    }
    if (c == '"') {
      in_str = true;
      cur.push_back(c);
    } else if (c == '[') {
      ++depth;
      cur.push_back(c);
    } else if (c == ']') {
      --depth;
      cur.push_back(c);
    } else if (c == ',' && depth == 0) {
      if (!strip(cur).empty()) items.push_back(parse_value(strip(cur)));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!strip(cur).empty()) items.push_back(parse_value(strip(cur)));
  return TomlValue{items};
}

TomlValue parse_value(const std::string& raw) {
  if (raw.empty()) throw Error("toml: empty value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') throw Error("toml: unterminated string");
    return TomlValue{raw.substr(1, raw.size() - 2)};
  }
  if (raw.front() == '[') {
    if (raw.back() != ']') throw Error("toml: unterminated array");
    return parse_array(raw);
  }
  if (raw == "true") return TomlValue{true};
  if (raw == "false") return TomlValue{false};
  // number: integer unless it has '.', 'e' or '/'
  if (raw.find('.') == std::string::npos && raw.find('e') == std::string::npos &&
      raw.find('E') == std::string::npos) {
    try {
      size_t pos = 0;
      long n = std::stol(raw, &pos);
      if (pos == raw.size()) return TomlValue{n};
    } catch (...) {
    }
  }
  try {
    size_t pos = 0;
    double d = std::stod(raw, &pos);
    if (pos == raw.size()) return TomlValue{d};
  } catch (...) {
  }
  // bare token (e.g. rational "1/2" without quotes): keep as string
  return TomlValue{raw};
}

}  // namespace

TomlDoc parse_toml(const std::string& text) {
  TomlDoc doc;
  std::string section;
  std::istringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    bool in_str = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_str = !in_str;
      if (line[i] == '#' && !in_str) {
        hash = i;
        break;
      }
      hash = std::string::npos;
    }
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error("toml: bad section header at line " + std::to_string(lineno));
      section = strip(line.substr(1, line.size() - 2));
      doc[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("toml: expected key = value at line " + std::to_string(lineno));
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (key.empty()) throw Error("toml: empty key at line " + std::to_string(lineno));
    doc[section][key] = parse_value(val);
  }
  return doc;
}

TomlDoc load_toml_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open pipeline config: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_toml(ss.str());
}

}  // namespace carnot_cli
