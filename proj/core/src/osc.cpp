#include "carnot/osc.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace carnot {

Polynomial Polynomial::constant(int dim, const Rational& c) {
  Polynomial p{dim, {}};
  if (c != 0) p.terms[MultiIndex(dim, 0)] = c;
  return p;
}

Polynomial Polynomial::monomial(int dim, const MultiIndex& m, const Rational& c) {
  if (static_cast<int>(m.size()) != dim) throw Error("monomial: bad multi-index length");
  Polynomial p{dim, {}};
  if (c != 0) p.terms[m] = c;
  return p;
}

Rational Polynomial::eval(const RVec& x) const {
  if (static_cast<int>(x.size()) != dim) throw Error("poly eval: bad point length");
  Rational r(0);
  for (const auto& [m, c] : terms) {
    Rational t = c;
    for (int i = 0; i < dim; ++i)
      if (m[i]) t *= rat_pow(x[i], m[i]);
    r += t;
  }
  return r;
}

Polynomial Polynomial::partial(int i) const {
  Polynomial p{dim, {}};
  for (const auto& [m, c] : terms) {
    if (m[i] == 0) continue;
    MultiIndex d = m;
    --d[i];
    p.terms[d] += c * m[i];
  }
  for (auto it = p.terms.begin(); it != p.terms.end();)
    it = (it->second == 0) ? p.terms.erase(it) : std::next(it);
  return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.dim != b.dim) throw Error("polynomial add: dimension mismatch");
  Polynomial r = a;
  for (const auto& [m, c] : b.terms) {
    auto it = r.terms.find(m);
    if (it == r.terms.end())
      r.terms[m] = c;
    else {
      it->second += c;
      if (it->second == 0) r.terms.erase(it);
    }
  }
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + poly_scale(Rational(-1), b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.dim != b.dim) throw Error("polynomial mul: dimension mismatch");
  Polynomial r{a.dim, {}};
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      MultiIndex m(a.dim);
      for (int i = 0; i < a.dim; ++i) m[i] = ma[i] + mb[i];
      auto it = r.terms.find(m);
      if (it == r.terms.end())
        r.terms[m] = ca * cb;
      else {
        it->second += ca * cb;
        if (it->second == 0) r.terms.erase(it);
      }
    }
  return r;
}

Polynomial poly_scale(const Rational& s, const Polynomial& a) {
  Polynomial r{a.dim, {}};
  if (s == 0) return r;
  for (const auto& [m, c] : a.terms) r.terms[m] = s * c;
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.dim == b.dim && a.terms == b.terms;
}

PolyVectorField PolyVectorField::zero(int dim) {
  PolyVectorField v;
  v.dim = dim;
  v.comp.assign(dim, Polynomial::zero(dim));
  return v;
}

PolyVectorField PolyVectorField::coordinate(int dim, int i) {
  PolyVectorField v = zero(dim);
  v.comp[i] = Polynomial::constant(dim, Rational(1));
  return v;
}

RVec PolyVectorField::eval(const RVec& x) const {
  RVec r(dim);
  for (int i = 0; i < dim; ++i) r[i] = comp[i].eval(x);
  return r;
}

Polynomial PolyVectorField::apply(const Polynomial& f) const {
  if (f.dim != dim) throw Error("vf apply: dimension mismatch");
  Polynomial r = Polynomial::zero(dim);
  for (int i = 0; i < dim; ++i)
    if (!comp[i].is_zero()) r = r + comp[i] * f.partial(i);
  return r;
}

Polynomial PolyVectorField::divergence() const {
  Polynomial r = Polynomial::zero(dim);
  for (int i = 0; i < dim; ++i) r = r + comp[i].partial(i);
  return r;
}

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
  if (a.dim != b.dim) throw Error("vf add: dimension mismatch");
  PolyVectorField r = a;
  for (int i = 0; i < a.dim; ++i) r.comp[i] = r.comp[i] + b.comp[i];
  return r;
}

PolyVectorField vf_scale(const Rational& s, const PolyVectorField& a) {
  PolyVectorField r = a;
  for (auto& c : r.comp) c = poly_scale(s, c);
  return r;
}

PolyVectorField vf_scale(const Polynomial& s, const PolyVectorField& a) {
  PolyVectorField r = a;
  for (auto& c : r.comp) c = s * c;
  return r;
}

bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
  return a.dim == b.dim && a.comp == b.comp;
}

PolyVectorField vf_bracket(const PolyVectorField& x, const PolyVectorField& y) {
  if (x.dim != y.dim) throw Error("vf_bracket: dimension mismatch");
  PolyVectorField r = PolyVectorField::zero(x.dim);
  for (int c = 0; c < x.dim; ++c) r.comp[c] = x.apply(y.comp[c]) - y.apply(x.comp[c]);
  return r;
}

int FiltrationSpec::max_weight() const {
  int r = 0;
  for (const auto& f : frames) r = std::max(r, f.weight);
  return r;
}

int FiltrationSpec::declared_rank(int i) const {
  int r = 0;
  for (const auto& f : frames)
    if (f.weight <= i) ++r;
  return r;
}

namespace {

std::string point_str(const RVec& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += rat_str(p[i]);
  }
  return s + ")";
}

RMat columns_matrix(const std::vector<RVec>& cols, int dim) {
  RMat m(dim, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < dim; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
  return m;
}

}  // namespace

FiltrationReport check_filtration(const FiltrationSpec& spec,
                                  const std::vector<RVec>& points) {
  FiltrationReport rep;
  const int d = spec.dim;
  const int r = spec.max_weight();
  const int nf = static_cast<int>(spec.frames.size());
  if (spec.declared_rank(r) != d)
    throw Error(fmt::format("filtration: rank(H^{}) = {} but chart dimension is {}",
                            r, spec.declared_rank(r), d));

  // pairwise bracket fields, computed once
  std::vector<std::vector<PolyVectorField>> br(nf);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j)
      br[i].push_back(j < i ? vf_scale(Rational(-1), br[j][i])
                            : vf_bracket(spec.frames[i].field, spec.frames[j].field));

  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != d) throw Error("check_filtration: bad point length");
    std::vector<RVec> vals;
    for (const auto& f : spec.frames) vals.push_back(f.field.eval(p));
    if (rmat_rank(columns_matrix(vals, d)) != nf) {
      rep.violations.push_back(
          {"rank", p, -1, -1,
           fmt::format("frames are dependent at {}", point_str(p))});
      continue;  // memberships are meaningless without the ranks
    }
    for (int i = 0; i < nf; ++i)
      for (int j = i + 1; j < nf; ++j) {
        int w = spec.frames[i].weight + spec.frames[j].weight;
        RVec val = br[i][j].eval(p);
        bool zero = std::all_of(val.begin(), val.end(),
                                [](const Rational& q) { return q == 0; });
        if (zero) continue;
        if (w >= r) continue;  // H^k = TM for k >= r and ranks hold
        std::vector<RVec> span;
        for (int f = 0; f < nf; ++f)
          if (spec.frames[f].weight <= w) span.push_back(vals[f]);
        if (!rmat_solve(columns_matrix(span, d), val))
          rep.violations.push_back(
              {"bracket", p, i, j,
               fmt::format("[frame{},frame{}] leaves H^{} at {}", i, j, w, point_str(p))});
      }
  }
  return rep;
}

OsculatingAlgebra osculating_algebra(const FiltrationSpec& spec, const RVec& x) {
  auto pre = check_filtration(spec, {x});
  if (!pre.ok())
    throw Error("osculating_algebra: filtration fails at the point: " +
                pre.violations.front().detail);

  const int d = spec.dim;
  const int r = spec.max_weight();
  const int nf = static_cast<int>(spec.frames.size());

  // frames ordered by weight (stable), pivoted elimination for the graded basis
  std::vector<int> order(nf);
  for (int i = 0; i < nf; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return spec.frames[a].weight < spec.frames[b].weight;
  });

  OsculatingAlgebra osc;
  osc.point = x;
  for (int oi : order) {
    RVec v = spec.frames[oi].field.eval(x);
    RVec sec(nf, Rational(0));
    sec[oi] = 1;
    // reduce against chosen basis (frames are independent at x, so v stays
    // nonzero; reduction fixes the quotient representative deterministically)
    for (size_t b = 0; b < osc.basis_vectors.size(); ++b) {
      // pivot = first nonzero coordinate of basis vector b
      int piv = -1;
      for (int k = 0; k < d; ++k)
        if (osc.basis_vectors[b][k] != 0) {
          piv = k;
          break;
        }
      if (piv < 0 || v[piv] == 0) continue;
      Rational f = v[piv] / osc.basis_vectors[b][piv];
      for (int k = 0; k < d; ++k) v[k] -= f * osc.basis_vectors[b][k];
      for (int k = 0; k < nf; ++k) sec[k] -= f * osc.section_coeffs[b][k];
    }
    osc.basis_vectors.push_back(std::move(v));
    osc.section_coeffs.push_back(std::move(sec));
    osc.basis_weight.push_back(spec.frames[oi].weight);
  }

  RMat flag = columns_matrix(osc.basis_vectors, d);
  auto flag_inv = rmat_inverse(flag);
  if (!flag_inv) throw Error("osculating_algebra: flag basis is singular");

  std::vector<int> dims(r, 0);
  for (int w : osc.basis_weight) ++dims[w - 1];

  // brackets of the chosen constant-coefficient sections, reduced at x
  std::vector<std::vector<PolyVectorField>> fr_br(nf);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j)
      fr_br[i].push_back(j < i ? vf_scale(Rational(-1), fr_br[j][i])
                               : vf_bracket(spec.frames[i].field, spec.frames[j].field));

  AlgebraInput in;
  in.dims = dims;
  for (int b = 0; b < d; ++b) in.basis.push_back(fmt::format("g{}", b + 1));
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      int w = osc.basis_weight[a] + osc.basis_weight[b];
      if (w > r) continue;
      RVec val(d, Rational(0));
      for (int i = 0; i < nf; ++i) {
        if (osc.section_coeffs[a][i] == 0) continue;
        for (int j = 0; j < nf; ++j) {
          Rational f = osc.section_coeffs[a][i] * osc.section_coeffs[b][j];
          if (f == 0) continue;
          RVec bv = fr_br[i][j].eval(x);
          for (int k = 0; k < d; ++k) val[k] += f * bv[k];
        }
      }
      RVec coords = *flag_inv * val;
      AlgebraInput::Entry e;
      e.i = a;
      e.j = b;
      for (int k = 0; k < d; ++k) {
        if (coords[k] == 0) continue;
        if (osc.basis_weight[k] > w)
          throw Error("osculating_algebra: bracket leaves the filtration");
        if (osc.basis_weight[k] == w) e.value[k] = coords[k];
      }
      if (!e.value.empty()) in.brackets.push_back(std::move(e));
    }

  auto alg = GradedLieAlgebra::build(std::move(in));
  auto rep = alg.validate();
  if (!rep.ok()) throw Error("osculating_algebra: output fails validation");
  osc.algebra = std::make_shared<GradedLieAlgebra>(std::move(alg));
  return osc;
}

SymbolInfo filtration_order(const FiltrationSpec& spec, const OsculatingAlgebra& osc,
                            const std::vector<int>& frame_word) {
  const int d = spec.dim;
  RMat flag = columns_matrix(osc.basis_vectors, d);
  auto flag_inv = rmat_inverse(flag);
  if (!flag_inv) throw Error("filtration_order: flag basis is singular");

  SymbolInfo info;
  info.symbol = coefficient_op(osc.algebra, CQMat::identity(1));
  for (int f : frame_word) {
    if (f < 0 || f >= static_cast<int>(spec.frames.size()))
      throw Error("filtration_order: frame index out of range");
    int w = spec.frames[f].weight;
    info.order += w;
    RVec coords = *flag_inv * spec.frames[f].field.eval(osc.point);
    EnvelopingOperator factor = zero_op(osc.algebra);
    for (int k = 0; k < d; ++k) {
      if (osc.basis_weight[k] != w || coords[k] == 0) continue;
      factor = op_add(factor, op_scale(CQ(coords[k]), generator_op(osc.algebra, k)));
    }
    info.symbol = multiply(info.symbol, factor);
  }
  return info;
}

namespace {

using nlohmann::json;

Rational rat_from(const json& j) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return rat_parse(fmt::format("{}", j.get<double>()));
  throw Error("expected rational value");
}

}  // namespace

FiltrationSpec parse_filtration_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(fmt::format("vector-field file is not valid JSON: {}", e.what()));
  }
  FiltrationSpec spec;
  spec.dim = j.at("dim").get<int>();
  if (spec.dim <= 0) throw Error("field 'dim' must be positive");
  for (const auto& fj : j.at("frames")) {
    FiltrationSpec::Frame fr;
    fr.weight = fj.at("weight").get<int>();
    if (fr.weight < 1) throw Error("frame weight must be >= 1");
    fr.field = PolyVectorField::zero(spec.dim);
    const auto& comps = fj.at("components");
    if (static_cast<int>(comps.size()) != spec.dim)
      throw Error(fmt::format("frame needs {} component polynomials", spec.dim));
    for (int c = 0; c < spec.dim; ++c) {
      for (const auto& term : comps[c]) {
        MultiIndex m = term.at("monomial").get<std::vector<int>>();
        if (static_cast<int>(m.size()) != spec.dim)
          throw Error("monomial multi-index has wrong length");
        fr.field.comp[c] =
            fr.field.comp[c] + Polynomial::monomial(spec.dim, m, rat_from(term.at("coeff")));
      }
    }
    spec.frames.push_back(std::move(fr));
  }
  return spec;
}

FiltrationSpec load_filtration_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open vector-field file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_filtration_json(ss.str());
}

}  // namespace carnot
