#include "carnot/algebra_io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace carnot {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

Rational rat_from_json(const json& j, const std::string& field) {
  try {
    if (j.is_string()) return rat_parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) return rat_parse(fmt::format("{}", j.get<double>()));
  } catch (const Error& e) {
    throw Error(fmt::format("field '{}': {}", field, e.what()));
  }
  throw Error(fmt::format("field '{}': expected rational", field));
}

int resolve_basis(const json& j, const std::vector<std::string>& names,
                  const std::string& field) {
  if (j.is_number_integer()) {
    int idx = j.get<int>();
    if (idx < 0 || idx >= static_cast<int>(names.size()))
      throw Error(fmt::format("field '{}': basis index {} out of range", field, idx));
    return idx;
  }
  if (j.is_string()) {
    auto s = j.get<std::string>();
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return static_cast<int>(i);
    throw Error(fmt::format("field '{}': unknown basis name '{}'", field, s));
  }
  throw Error(fmt::format("field '{}': expected basis name or index", field));
}

}  // namespace

AlgebraInput parse_algebra_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(fmt::format("algebra file is not valid JSON: {}", e.what()));
  }
  if (!j.is_object() || !j.contains("dims"))
    throw Error("algebra file must be an object with a 'dims' field");

  AlgebraInput in;
  for (const auto& d : j.at("dims")) in.dims.push_back(d.get<int>());
  int D = 0;
  for (int d : in.dims) D += d;
  if (j.contains("basis")) {
    for (const auto& b : j.at("basis")) in.basis.push_back(b.get<std::string>());
  } else {
    for (int i = 0; i < D; ++i) in.basis.push_back(fmt::format("e{}", i + 1));
  }
  if (static_cast<int>(in.basis.size()) != D)
    throw Error(fmt::format("field 'basis': {} names but dims sum to {}", in.basis.size(), D));

  if (j.contains("brackets")) {
    for (const auto& e : j.at("brackets")) {
      AlgebraInput::Entry entry;
      entry.i = resolve_basis(e.at("i"), in.basis, "brackets.i");
      entry.j = resolve_basis(e.at("j"), in.basis, "brackets.j");
      for (const auto& term : e.at("value")) {
        int k = resolve_basis(term.at("k"), in.basis, "brackets.value.k");
        entry.value[k] = rat_from_json(term.at("coeff"), "brackets.value.coeff");
      }
      in.brackets.push_back(std::move(entry));
    }
  }
  if (j.contains("inner_product")) {
    const auto& m = j.at("inner_product");
    RMat g(D, D);
    if (static_cast<int>(m.size()) != D)
      throw Error("field 'inner_product': wrong number of rows");
    for (int i = 0; i < D; ++i) {
      if (static_cast<int>(m[i].size()) != D)
        throw Error("field 'inner_product': wrong number of columns");
      for (int jj = 0; jj < D; ++jj) g.at(i, jj) = rat_from_json(m[i][jj], "inner_product");
    }
    in.inner = std::move(g);
  }
  return in;
}

AlgebraInput load_algebra_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open algebra file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_algebra_json(ss.str());
}

std::string algebra_to_json(const GradedLieAlgebra& A) {
  ojson j;
  j["dims"] = A.dims();
  j["basis"] = A.basis();
  ojson brackets = ojson::array();
  for (const auto& [key, v] : A.table()) {
    ojson e;
    e["i"] = A.name(key.first);
    e["j"] = A.name(key.second);
    ojson terms = ojson::array();
    for (const auto& [k, c] : v) {
      ojson t;
      t["k"] = A.name(k);
      t["coeff"] = rat_str(c);
      terms.push_back(t);
    }
    e["value"] = terms;
    brackets.push_back(e);
  }
  j["brackets"] = brackets;
  if (!A.inner_is_identity()) {
    ojson rows = ojson::array();
    for (int i = 0; i < A.dim(); ++i) {
      ojson row = ojson::array();
      for (int k = 0; k < A.dim(); ++k) row.push_back(rat_str(A.inner().at(i, k)));
      rows.push_back(row);
    }
    j["inner_product"] = rows;
  }
  return j.dump(2) + "\n";
}

}  // namespace carnot
