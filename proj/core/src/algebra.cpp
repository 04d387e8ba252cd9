#include "carnot/algebra.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>

namespace carnot {

namespace {

int total_dim(const std::vector<int>& dims) {
  int d = 0;
  for (int x : dims) d += x;
  return d;
}

std::vector<int> degree_table(const std::vector<int>& dims) {
  std::vector<int> deg;
  for (size_t k = 0; k < dims.size(); ++k)
    for (int i = 0; i < dims[k]; ++i) deg.push_back(static_cast<int>(k) + 1);
  return deg;
}

SparseVec negate(const SparseVec& v) {
  SparseVec r;
  for (const auto& [k, c] : v) r[k] = -c;
  return r;
}

void structural_check(const AlgebraInput& in) {
  if (in.dims.empty()) throw Error("algebra needs at least one degree");
  for (int d : in.dims)
    if (d < 0) throw Error("negative degree dimension");
  int D = total_dim(in.dims);
  if (D == 0) throw Error("zero-dimensional algebra");
  if (!in.basis.empty() && static_cast<int>(in.basis.size()) != D)
    throw Error(fmt::format("basis has {} names but dims sum to {}", in.basis.size(), D));
  for (const auto& e : in.brackets) {
    if (e.i < 0 || e.i >= D || e.j < 0 || e.j >= D)
      throw Error(fmt::format("bracket index out of range: ({}, {})", e.i, e.j));
    for (const auto& [k, c] : e.value) {
      (void)c;
      if (k < 0 || k >= D) throw Error(fmt::format("bracket target out of range: {}", k));
    }
  }
  if (in.inner) {
    if (in.inner->rows != D || in.inner->cols != D)
      throw Error("inner product matrix has wrong shape");
  }
}

}  // namespace

ValidationReport validate(const AlgebraInput& in) {
  structural_check(in);
  ValidationReport rep;
  const auto deg = degree_table(in.dims);
  const int n = static_cast<int>(in.dims.size());

  // collect raw entries; detect duplicates and antisymmetry violations
  std::map<std::pair<int, int>, SparseVec> raw;
  for (const auto& e : in.brackets) {
    auto key = std::make_pair(e.i, e.j);
    if (raw.count(key)) {
      rep.violations.push_back({"malformed", {e.i, e.j}, "duplicate bracket entry"});
      continue;
    }
    raw[key] = e.value;
  }
  for (const auto& [key, v] : raw) {
    auto [i, j] = key;
    if (i == j) {
      bool zero = true;
      for (const auto& [k, c] : v)
        if (c != 0) zero = false, (void)k;
      if (!zero)
        rep.violations.push_back({"antisymmetry", {i, i}, "c(i,i) != 0"});
      continue;
    }
    auto rev = raw.find({j, i});
    if (rev != raw.end() && i < j) {
      if (rev->second != negate(v))
        rep.violations.push_back(
            {"antisymmetry", {i, j},
             fmt::format("c({0},{1}) != -c({1},{0})", i, j)});
    }
  }

  // canonical table (i < j), first occurrence wins
  std::map<std::pair<int, int>, SparseVec> canon;
  for (const auto& [key, v] : raw) {
    auto [i, j] = key;
    if (i == j) continue;
    auto ck = i < j ? key : std::make_pair(j, i);
    if (!canon.count(ck)) canon[ck] = (i < j) ? v : negate(v);
  }

  // grading
  for (const auto& [key, v] : canon) {
    auto [i, j] = key;
    int want = deg[i] + deg[j];
    for (const auto& [k, c] : v) {
      if (c == 0) continue;
      if (want > n)
        rep.violations.push_back(
            {"grading", {i, j, k},
             fmt::format("[{},{}] must vanish (degree {} > step {})", i, j, want, n)});
      else if (deg[k] != want)
        rep.violations.push_back(
            {"grading", {i, j, k},
             fmt::format("[{},{}] hits degree {} != {}", i, j, deg[k], want)});
    }
  }

  // Jacobi over canonical constants
  const int D = total_dim(in.dims);
  auto brk = [&](int i, int j) -> SparseVec {
    if (i == j) return {};
    auto it = canon.find({std::min(i, j), std::max(i, j)});
    if (it == canon.end()) return {};
    return i < j ? it->second : negate(it->second);
  };
  auto brk_vec = [&](const SparseVec& v, int k) {
    SparseVec r;
    for (const auto& [i, c] : v) {
      for (const auto& [m, c2] : brk(i, k)) {
        r[m] += c * c2;
      }
    }
    return r;
  };
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j)
      for (int k = j + 1; k < D; ++k) {
        SparseVec sum;
        for (const auto& [m, c] : brk_vec(brk(i, j), k)) sum[m] += c;
        for (const auto& [m, c] : brk_vec(brk(j, k), i)) sum[m] += c;
        for (const auto& [m, c] : brk_vec(brk(k, i), j)) sum[m] += c;
        bool zero = true;
        for (const auto& [m, c] : sum)
          if (c != 0) zero = false, (void)m;
        if (!zero)
          rep.violations.push_back({"jacobi", {i, j, k}, "cyclic sum nonzero"});
      }

  // metric
  if (in.inner) {
    const RMat& g = *in.inner;
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) {
        if (g.at(i, j) != g.at(j, i)) {
          rep.violations.push_back({"metric", {i, j}, "not symmetric"});
        }
        if (deg[i] != deg[j] && g.at(i, j) != 0)
          rep.violations.push_back({"metric", {i, j}, "couples different degrees"});
      }
    if (!rmat_positive_definite(g))
      rep.violations.push_back({"metric", {}, "not positive definite"});
  }

  return rep;
}

GradedLieAlgebra GradedLieAlgebra::build(AlgebraInput in) {
  structural_check(in);
  GradedLieAlgebra A;
  A.dims_ = in.dims;
  A.dim_ = total_dim(in.dims);
  A.degree_ = degree_table(in.dims);
  A.offsets_.clear();
  int off = 0;
  for (int d : in.dims) {
    A.offsets_.push_back(off);
    off += d;
  }
  if (in.basis.empty()) {
    for (int i = 0; i < A.dim_; ++i) A.names_.push_back(fmt::format("e{}", i + 1));
  } else {
    A.names_ = in.basis;
  }
  for (const auto& e : in.brackets) {
    if (e.i == e.j) continue;
    auto key = std::make_pair(std::min(e.i, e.j), std::max(e.i, e.j));
    SparseVec v = (e.i < e.j) ? e.value : negate(e.value);
    auto it = A.c_.find(key);
    if (it == A.c_.end()) {
      bool nonzero = false;
      for (const auto& [k, c] : v)
        if (c != 0) nonzero = true, (void)k;
      if (nonzero) A.c_[key] = std::move(v);
    } else if (it->second != v) {
      throw Error(fmt::format("inconsistent duplicate bracket ({}, {})", e.i, e.j));
    }
  }
  A.inner_ = in.inner ? *in.inner : RMat::identity(A.dim_);
  return A;
}

int GradedLieAlgebra::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw Error("unknown basis name: " + name);
}

bool GradedLieAlgebra::inner_is_identity() const {
  return inner_ == RMat::identity(dim_);
}

bool GradedLieAlgebra::is_abelian() const { return c_.empty(); }

SparseVec GradedLieAlgebra::basis_bracket(int i, int j) const {
  if (i == j) return {};
  auto it = c_.find({std::min(i, j), std::max(i, j)});
  if (it == c_.end()) return {};
  return i < j ? it->second : negate(it->second);
}

ValidationReport GradedLieAlgebra::validate() const {
  AlgebraInput in;
  in.dims = dims_;
  in.basis = names_;
  for (const auto& [key, v] : c_) in.brackets.push_back({key.first, key.second, v});
  in.inner = inner_;
  return carnot::validate(in);
}

RVec zero_vec(const GradedLieAlgebra& A) { return RVec(A.dim(), Rational(0)); }

RVec basis_vec(const GradedLieAlgebra& A, int idx) {
  RVec v = zero_vec(A);
  v.at(idx) = 1;
  return v;
}

RVec bracket(const GradedLieAlgebra& A, const RVec& x, const RVec& y) {
  if (static_cast<int>(x.size()) != A.dim() || static_cast<int>(y.size()) != A.dim())
    throw Error("bracket: vector length does not match algebra dimension");
  RVec r = zero_vec(A);
  for (const auto& [key, v] : A.table()) {
    auto [i, j] = key;
    Rational f = x[i] * y[j] - x[j] * y[i];
    if (f == 0) continue;
    for (const auto& [k, c] : v) r[k] += f * c;
  }
  return r;
}

namespace {

// Right-nested bracket of a word over letters {0 -> x, 1 -> y}, memoized on
// suffixes.
struct WordBracket {
  const GradedLieAlgebra& A;
  const RVec& x;
  const RVec& y;
  std::map<std::string, RVec> memo;

  const RVec& eval(const std::string& w) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    RVec r;
    if (w.size() == 1) {
      r = (w[0] == 'x') ? x : y;
    } else {
      const RVec& tail = eval(w.substr(1));
      r = bracket(A, w[0] == 'x' ? x : y, tail);
    }
    return memo.emplace(w, std::move(r)).first->second;
  }
};

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

RVec bch_product(const GradedLieAlgebra& A, const RVec& x, const RVec& y) {
  if (static_cast<int>(x.size()) != A.dim() || static_cast<int>(y.size()) != A.dim())
    throw Error("bch_product: vector length does not match algebra dimension");
  const int n = A.step();
  WordBracket wb{A, x, y, {}};
  RVec acc = zero_vec(A);

  // Dynkin series: sum over sequences ((p_1,q_1),...,(p_k,q_k)), p_i+q_i >= 1,
  // total word length <= n. Word blocks x^{p_i} y^{q_i}; right-nested bracket.
  std::function<void(int, int, const std::string&, const mpz_class&)> rec =
      [&](int k, int len, const std::string& word, const mpz_class& fact) {
        if (len > 0) {
          Rational coeff(((k - 1) % 2 == 0) ? 1 : -1, 1);
          coeff /= Rational(mpz_class(k) * mpz_class(len) * fact);
          coeff.canonicalize();
          const RVec& br = wb.eval(word);
          for (int t = 0; t < A.dim(); ++t)
            if (br[t] != 0) acc[t] += coeff * br[t];
        }
        if (len >= n) return;
        for (int p = 0; p + len <= n; ++p)
          for (int q = 0; p + q + len <= n; ++q) {
            if (p + q == 0) continue;
            std::string w = word + std::string(p, 'x') + std::string(q, 'y');
            rec(k + 1, len + p + q, w, fact * factorial(p) * factorial(q));
          }
      };
  rec(0, 0, "", mpz_class(1));
  for (auto& c : acc) c.canonicalize();
  return acc;
}

RVec dilate(const GradedLieAlgebra& A, const Rational& lambda, const RVec& x) {
  if (static_cast<int>(x.size()) != A.dim())
    throw Error("dilate: vector length does not match algebra dimension");
  RVec r = x;
  for (int i = 0; i < A.dim(); ++i) r[i] *= rat_pow(lambda, A.degree(i));
  return r;
}

RMat ad_matrix(const GradedLieAlgebra& A, const RVec& x) {
  RMat m(A.dim(), A.dim());
  for (int j = 0; j < A.dim(); ++j) {
    RVec col = bracket(A, x, basis_vec(A, j));
    for (int i = 0; i < A.dim(); ++i) m.at(i, j) = col[i];
  }
  return m;
}

RMat Ad(const GradedLieAlgebra& A, const RVec& g) {
  RMat ad = ad_matrix(A, g);
  RMat term = RMat::identity(A.dim());
  RMat sum = term;
  for (int k = 1; k <= A.step(); ++k) {
    term = rmat_scale(Rational(1, k), ad * term);
    if (term.is_zero()) break;
    sum = sum + term;
  }
  return sum;
}

RMat coAd(const GradedLieAlgebra& A, const RVec& g) {
  RVec ginv(g.size());
  for (size_t i = 0; i < g.size(); ++i) ginv[i] = -g[i];
  return Ad(A, ginv).transpose();
}

GradedLieAlgebra dnc_rescale(const GradedLieAlgebra& A, const Rational& t) {
  if (t < 0) throw Error("dnc_rescale: t must be >= 0");
  AlgebraInput in;
  in.dims = A.dims();
  in.basis = A.basis();
  for (const auto& [key, v] : A.table()) {
    AlgebraInput::Entry e;
    e.i = key.first;
    e.j = key.second;
    for (const auto& [k, c] : v) {
      Rational scaled = c * rat_pow(t, A.degree(k));
      if (scaled != 0) e.value[k] = scaled;
    }
    if (!e.value.empty()) in.brackets.push_back(std::move(e));
  }
  in.inner = A.inner();
  return GradedLieAlgebra::build(std::move(in));
}

}  // namespace carnot
