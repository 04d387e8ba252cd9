#include "carnot/env_op_io.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "carnot/algebra_io.hpp"
#include "json.hpp"

namespace carnot {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

Rational rat_from(const json& j) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return rat_parse(fmt::format("{}", j.get<double>()));
  throw Error("expected rational value");
}

CQ cq_from(const json& j) {
  if (j.is_array() && j.size() == 2) return {rat_from(j[0]), rat_from(j[1])};
  return {rat_from(j), Rational(0)};
}

CQMat coeff_from(const json& j, int v0, int v1) {
  // shorthand: bare entry for 1x1
  if (v0 == 1 && v1 == 1 && (!j.is_array() || (j.size() == 2 && !j[0].is_array()))) {
    CQMat m(1, 1);
    m.at(0, 0) = cq_from(j);
    return m;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != v1)
    throw Error(fmt::format("field 'coeff': expected {} rows", v1));
  CQMat m(v1, v0);
  for (int r = 0; r < v1; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != v0)
      throw Error(fmt::format("field 'coeff': row {} must have {} entries", r, v0));
    for (int c = 0; c < v0; ++c) m.at(r, c) = cq_from(j[r][c]);
  }
  return m;
}

}  // namespace

EnvelopingOperator parse_operator_json(const std::string& text,
                                       const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(fmt::format("operator file is not valid JSON: {}", e.what()));
  }
  if (!j.contains("algebra")) throw Error("operator file needs an 'algebra' field");

  AlgebraInput ain;
  if (j["algebra"].is_string()) {
    std::filesystem::path p = j["algebra"].get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    ain = load_algebra_file(p.string());
  } else {
    ain = parse_algebra_json(j["algebra"].dump());
  }
  auto alg = std::make_shared<GradedLieAlgebra>(GradedLieAlgebra::build(std::move(ain)));

  int v0 = j.value("V0", 1);
  int v1 = j.value("V1", 1);
  if (v0 < 1 || v1 < 1) throw Error("V0/V1 must be positive");

  std::vector<std::pair<Word, CQMat>> words;
  if (j.contains("terms")) {
    for (const auto& t : j.at("terms")) {
      Monomial m(alg->dim(), 0);
      for (const auto& [name, e] : t.at("monomial").items()) {
        int idx = alg->index_of(name);
        int exp = e.get<int>();
        if (exp < 0) throw Error("negative exponent in monomial");
        m[idx] = exp;
      }
      Word w;
      for (size_t i = 0; i < m.size(); ++i)
        for (int r = 0; r < m[i]; ++r) w.push_back(static_cast<int>(i));
      words.emplace_back(std::move(w), coeff_from(t.at("coeff"), v0, v1));
    }
  }
  return pbw_normalize(alg, v0, v1, words);
}

EnvelopingOperator load_operator_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open operator file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_operator_json(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string operator_to_json(const EnvelopingOperator& op) {
  ojson j;
  j["algebra"] = ojson::parse(algebra_to_json(*op.alg));
  j["V0"] = op.v0;
  j["V1"] = op.v1;
  ojson terms = ojson::array();
  for (const auto& [m, c] : op.terms) {
    ojson t;
    ojson mono = ojson::object();
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) mono[op.alg->name(static_cast<int>(i))] = m[i];
    t["monomial"] = mono;
    ojson rows = ojson::array();
    for (int r = 0; r < c.rows; ++r) {
      ojson row = ojson::array();
      for (int cc = 0; cc < c.cols; ++cc)
        row.push_back(ojson::array({rat_str(c.at(r, cc).re), rat_str(c.at(r, cc).im)}));
      rows.push_back(row);
    }
    t["coeff"] = rows;
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j.dump(2) + "\n";
}

}  // namespace carnot
