#include "carnot/env_op.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace carnot {

int EnvelopingOperator::weighted_degree(const Monomial& m) const {
  int d = 0;
  for (size_t i = 0; i < m.size(); ++i) d += m[i] * alg->degree(static_cast<int>(i));
  return d;
}

std::optional<int> EnvelopingOperator::homogeneous_degree() const {
  std::optional<int> k;
  for (const auto& [m, c] : terms) {
    (void)c;
    int d = weighted_degree(m);
    if (!k)
      k = d;
    else if (*k != d)
      return std::nullopt;
  }
  return k;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->dims() == b->dims() && a->table() == b->table();
}

EnvelopingOperator zero_op(AlgebraPtr alg, int v0, int v1) {
  EnvelopingOperator op;
  op.alg = std::move(alg);
  op.v0 = v0;
  op.v1 = v1;
  return op;
}

EnvelopingOperator generator_op(AlgebraPtr alg, int idx) {
  EnvelopingOperator op = zero_op(std::move(alg));
  Monomial m(op.alg->dim(), 0);
  m[idx] = 1;
  op.terms[m] = CQMat::identity(1);
  return op;
}

EnvelopingOperator coefficient_op(AlgebraPtr alg, const CQMat& c) {
  EnvelopingOperator op = zero_op(std::move(alg), c.cols, c.rows);
  if (!c.is_zero()) op.terms[Monomial(op.alg->dim(), 0)] = c;
  return op;
}

namespace {

void prune(EnvelopingOperator& op) {
  for (auto it = op.terms.begin(); it != op.terms.end();)
    it = it->second.is_zero() ? op.terms.erase(it) : std::next(it);
}

Monomial word_to_monomial(int dim, const Word& w) {
  Monomial m(dim, 0);
  for (int g : w) ++m[g];
  return m;
}

Word monomial_to_word(const Monomial& m) {
  Word w;
  for (size_t i = 0; i < m.size(); ++i)
    for (int r = 0; r < m[i]; ++r) w.push_back(static_cast<int>(i));
  return w;
}

// Rewrites words into normal form, accumulating scalar weights per monomial.
void accumulate_word(const GradedLieAlgebra& A, const Word& word, const CQ& weight,
                     std::map<Monomial, CQ>& out) {
  std::vector<std::pair<Word, CQ>> work{{word, weight}};
  while (!work.empty()) {
    auto [w, s] = std::move(work.back());
    work.pop_back();
    int p = -1;
    for (size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] > w[i + 1]) {
        p = static_cast<int>(i);
        break;
      }
    if (p < 0) {
      auto m = word_to_monomial(A.dim(), w);
      auto it = out.find(m);
      if (it == out.end())
        out.emplace(std::move(m), s);
      else
        it->second += s;
      continue;
    }
    Word swapped = w;
    std::swap(swapped[p], swapped[p + 1]);
    work.emplace_back(std::move(swapped), s);
    SparseVec br = A.basis_bracket(w[p], w[p + 1]);
    for (const auto& [k, c] : br) {
      if (c == 0) continue;
      Word contracted;
      contracted.reserve(w.size() - 1);
      contracted.insert(contracted.end(), w.begin(), w.begin() + p);
      contracted.push_back(k);
      contracted.insert(contracted.end(), w.begin() + p + 2, w.end());
      work.emplace_back(std::move(contracted), s * CQ(c));
    }
  }
}

void add_term(EnvelopingOperator& op, const Monomial& m, const CQMat& c) {
  auto it = op.terms.find(m);
  if (it == op.terms.end())
    op.terms.emplace(m, c);
  else
    it->second = it->second + c;
}

}  // namespace

EnvelopingOperator pbw_normalize(AlgebraPtr alg, const Word& word, const CQMat& coeff) {
  return pbw_normalize(std::move(alg), coeff.cols, coeff.rows, {{word, coeff}});
}

EnvelopingOperator pbw_normalize(AlgebraPtr alg, int v0, int v1,
                                 const std::vector<std::pair<Word, CQMat>>& words) {
  EnvelopingOperator op = zero_op(std::move(alg), v0, v1);
  for (const auto& [w, coeff] : words) {
    if (coeff.cols != v0 || coeff.rows != v1)
      throw Error("pbw_normalize: coefficient shape mismatch");
    for (int g : w)
      if (g < 0 || g >= op.alg->dim()) throw Error("pbw_normalize: generator out of range");
    std::map<Monomial, CQ> scalars;
    accumulate_word(*op.alg, w, CQ(Rational(1)), scalars);
    for (const auto& [m, s] : scalars) {
      if (s.is_zero()) continue;
      add_term(op, m, cqmat_scale(s, coeff));
    }
  }
  prune(op);
  return op;
}

EnvelopingOperator op_add(const EnvelopingOperator& a, const EnvelopingOperator& b) {
  if (!same_algebra(a.alg, b.alg)) throw Error("op_add: different algebras");
  if (a.v0 != b.v0 || a.v1 != b.v1) throw Error("op_add: coefficient space mismatch");
  EnvelopingOperator r = a;
  for (const auto& [m, c] : b.terms) add_term(r, m, c);
  prune(r);
  return r;
}

EnvelopingOperator op_sub(const EnvelopingOperator& a, const EnvelopingOperator& b) {
  return op_add(a, op_scale(CQ(Rational(-1)), b));
}

EnvelopingOperator op_scale(const CQ& s, const EnvelopingOperator& a) {
  EnvelopingOperator r = a;
  for (auto& [m, c] : r.terms) c = cqmat_scale(s, c);
  prune(r);
  return r;
}

EnvelopingOperator multiply(const EnvelopingOperator& a, const EnvelopingOperator& b) {
  if (!same_algebra(a.alg, b.alg)) throw Error("multiply: different algebras");
  if (a.v0 != b.v1)
    throw Error(fmt::format("multiply: target of B ({}) != source of A ({})", b.v1, a.v0));
  EnvelopingOperator r = zero_op(a.alg, b.v0, a.v1);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      Word w = monomial_to_word(ma);
      Word wb = monomial_to_word(mb);
      w.insert(w.end(), wb.begin(), wb.end());
      CQMat coeff = ca * cb;
      std::map<Monomial, CQ> scalars;
      accumulate_word(*r.alg, w, CQ(Rational(1)), scalars);
      for (const auto& [m, s] : scalars) {
        if (s.is_zero()) continue;
        add_term(r, m, cqmat_scale(s, coeff));
      }
    }
  prune(r);
  return r;
}

EnvelopingOperator adjoint(const EnvelopingOperator& a) {
  EnvelopingOperator r = zero_op(a.alg, a.v1, a.v0);
  for (const auto& [m, c] : a.terms) {
    Word w = monomial_to_word(m);
    std::reverse(w.begin(), w.end());
    CQ sign(Rational(w.size() % 2 == 0 ? 1 : -1));
    CQMat coeff = c.conj_transpose();
    std::map<Monomial, CQ> scalars;
    accumulate_word(*r.alg, w, sign, scalars);
    for (const auto& [mm, s] : scalars) {
      if (s.is_zero()) continue;
      add_term(r, mm, cqmat_scale(s, coeff));
    }
  }
  prune(r);
  return r;
}

EnvelopingOperator dilation_action(const Rational& lambda, const EnvelopingOperator& a) {
  EnvelopingOperator r = a;
  for (auto& [m, c] : r.terms) c = cqmat_scale(CQ(rat_pow(lambda, a.weighted_degree(m))), c);
  prune(r);
  return r;
}

EnvelopingOperator psi_flip(const EnvelopingOperator& a, int t_index) {
  if (!a.alg->is_abelian())
    throw Error("psi_flip: operator must live on an abelian algebra");
  int t = t_index < 0 ? a.alg->dim() - 1 : t_index;
  if (t < 0 || t >= a.alg->dim()) throw Error("psi_flip: bad t generator index");
  EnvelopingOperator r = a;
  for (auto& [m, c] : r.terms)
    if (m[t] % 2 == 1) c = cqmat_scale(CQ(Rational(-1)), c);
  return r;
}

namespace {

Monomial embed_monomial(const Monomial& m, const std::vector<int>& to_ambient, int amb_dim) {
  Monomial r(amb_dim, 0);
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i]) r[to_ambient[i]] = m[i];
  return r;
}

// Places "inner" at block (row_block, col_block) of the 2x2 block coefficient
// layout given the two row-block heights r0 and the two col-block widths.
void place_block(CQMat& full, const CQMat& inner, int row_off, int col_off) {
  for (int i = 0; i < inner.rows; ++i)
    for (int j = 0; j < inner.cols; ++j) {
      if (inner.at(i, j).is_zero()) continue;
      full.at(row_off + i, col_off + j) += inner.at(i, j);
    }
}

}  // namespace

EnvelopingOperator sharp_product(const EnvelopingOperator& d1,
                                 const EnvelopingOperator& d2, const Rational& c,
                                 const SemidirectAlgebra& ambient, bool symmetric) {
  if (!same_algebra(d1.alg, ambient.n_part))
    throw Error("sharp_product: D1 must live on the semidirect ideal n");
  if (!same_algebra(d2.alg, ambient.h_part))
    throw Error("sharp_product: D2 must live on the semidirect factor h");
  auto k1 = d1.homogeneous_degree();
  auto k2 = d2.homogeneous_degree();
  if (k1 && k2 && *k1 != *k2)
    throw Error(fmt::format("sharp_product: degree mismatch ({} vs {})", *k1, *k2));

  const int E0 = d1.v0, E1 = d1.v1, F0 = d2.v0, F1 = d2.v1;
  EnvelopingOperator d1t = adjoint(d1);
  EnvelopingOperator d2c = op_scale(CQ(c), d2);
  EnvelopingOperator d2ct = adjoint(d2c);
  const int amb_dim = ambient.ambient->dim();

  EnvelopingOperator r;
  r.alg = ambient.ambient;

  if (!symmetric) {
    // rows: E1F0 | E0F1 ; cols: E0F0 | E1F1
    r.v1 = E1 * F0 + E0 * F1;
    r.v0 = E0 * F0 + E1 * F1;
    auto full = [&]() { return CQMat(r.v1, r.v0); };
    for (const auto& [m, C] : d1.terms) {  // i_N(D1) ⊗ Id_{F0} at (1,1)
      CQMat blk = full();
      place_block(blk, cqmat_kron(C, CQMat::identity(F0)), 0, 0);
      add_term(r, embed_monomial(m, ambient.n_to_ambient, amb_dim), blk);
    }
    for (const auto& [m, C] : d1t.terms) {  // i_N(D1^t) ⊗ Id_{F1} at (2,2)
      CQMat blk = full();
      place_block(blk, cqmat_kron(C, CQMat::identity(F1)), E1 * F0, E0 * F0);
      add_term(r, embed_monomial(m, ambient.n_to_ambient, amb_dim), blk);
    }
    for (const auto& [m, C] : d2c.terms) {  // Id_{E0} ⊗ i_H(cD2) at (2,1)
      CQMat blk = full();
      place_block(blk, cqmat_kron(CQMat::identity(E0), C), E1 * F0, 0);
      add_term(r, embed_monomial(m, ambient.h_to_ambient, amb_dim), blk);
    }
    for (const auto& [m, C] : d2ct.terms) {  // -Id_{E1} ⊗ i_H(cD2)^t at (1,2)
      CQMat blk = full();
      place_block(blk, cqmat_kron(CQMat::identity(E1), cqmat_scale(CQ(Rational(-1)), C)),
                  0, E0 * F0);
      add_term(r, embed_monomial(m, ambient.h_to_ambient, amb_dim), blk);
    }
  } else {
    if (E0 != E1) throw Error("sharp_product: symmetric variant needs E0 = E1");
    if (!(op_sub(d1, d1t).is_zero()))
      throw Error("sharp_product: symmetric variant needs symmetric D1");
    const int E = E0;
    r.v0 = r.v1 = E * F0 + E * F1;
    auto full = [&]() { return CQMat(r.v1, r.v0); };
    for (const auto& [m, C] : d1.terms) {
      CQMat blk = full();
      place_block(blk, cqmat_kron(C, CQMat::identity(F0)), 0, 0);  // (1,1)
      place_block(blk, cqmat_kron(cqmat_scale(CQ(Rational(-1)), C), CQMat::identity(F1)),
                  E * F0, E * F0);  // (2,2)
      add_term(r, embed_monomial(m, ambient.n_to_ambient, amb_dim), blk);
    }
    for (const auto& [m, C] : d2c.terms) {  // Id_E ⊗ i_H(cD2) at (2,1)
      CQMat blk = full();
      place_block(blk, cqmat_kron(CQMat::identity(E), C), E * F0, 0);
      add_term(r, embed_monomial(m, ambient.h_to_ambient, amb_dim), blk);
    }
    for (const auto& [m, C] : d2ct.terms) {  // +Id_E ⊗ i_H(cD2)^t at (1,2)
      CQMat blk = full();
      place_block(blk, cqmat_kron(CQMat::identity(E), C), 0, E * F0);
      add_term(r, embed_monomial(m, ambient.h_to_ambient, amb_dim), blk);
    }
  }
  prune(r);
  return r;
}

EnvelopingOperator build_example1(AlgebraPtr alg, int s) {
  if (!alg->inner_is_identity())
    throw Error("build_example1: declared basis must be orthonormal");
  for (int i = 1; i <= alg->step(); ++i)
    if (s % i != 0)
      throw Error(fmt::format("build_example1: degree {} does not divide s = {}", i, s));
  EnvelopingOperator r = zero_op(alg);
  for (int b = 0; b < alg->dim(); ++b) {
    int w = alg->degree(b);
    Monomial m(alg->dim(), 0);
    m[b] = 2 * s / w;
    CQMat coeff(1, 1);
    coeff.at(0, 0) = CQ(Rational((s / w) % 2 == 0 ? 1 : -1));
    r.terms[m] = coeff;
  }
  return r;
}

EnvelopingOperator build_gamma_model(AlgebraPtr alg, const CQMat& gamma) {
  if (alg->step() != 2 || alg->dims()[1] != 1)
    throw Error("build_gamma_model: needs a 2-step algebra with dim g_2 = 1");
  if (!alg->inner_is_identity())
    throw Error("build_gamma_model: declared basis must be orthonormal");
  if (gamma.rows != gamma.cols) throw Error("build_gamma_model: gamma must be square");
  const int m = gamma.rows;
  EnvelopingOperator r = zero_op(alg, m, m);
  for (int b = 0; b < alg->dims()[0]; ++b) {
    Monomial mono(alg->dim(), 0);
    mono[b] = 2;
    r.terms[mono] = cqmat_scale(CQ(Rational(-1)), CQMat::identity(m));
  }
  Monomial t(alg->dim(), 0);
  t[alg->dim() - 1] = 1;
  CQMat ig = cqmat_scale(cq_i(), gamma);
  if (!ig.is_zero()) r.terms[t] = ig;
  return r;
}

std::optional<std::string> clifford_violation(const CliffordAction& c) {
  const size_t n = c.mats.size();
  if (n == 0) return "empty Clifford action";
  int d = c.mats[0].rows;
  for (const auto& m : c.mats)
    if (m.rows != d || m.cols != d) return "Clifford matrices must be square, same size";
  for (size_t a = 0; a < n; ++a) {
    if (!(c.mats[a].conj_transpose() == c.mats[a]))
      return fmt::format("c(X_{}) is not self-adjoint", a + 1);
    for (size_t b = a; b < n; ++b) {
      CQMat anti = c.mats[a] * c.mats[b] + c.mats[b] * c.mats[a];
      CQMat want = a == b ? cqmat_scale(CQ(Rational(2)), CQMat::identity(d)) : CQMat(d, d);
      if (!(anti == want))
        return fmt::format("Clifford relation fails on pair ({}, {})", a + 1, b + 1);
    }
  }
  return std::nullopt;
}

EnvelopingOperator build_dirac(AlgebraPtr alg, const CliffordAction& c, int degree) {
  if (degree < 1 || degree > alg->step()) throw Error("build_dirac: bad degree");
  if (!alg->inner_is_identity())
    throw Error("build_dirac: declared basis must be orthonormal");
  int d = alg->dims()[degree - 1];
  if (static_cast<int>(c.mats.size()) != d)
    throw Error(fmt::format("build_dirac: need {} Clifford matrices for degree {}", d, degree));
  if (auto viol = clifford_violation(c))
    throw Error("build_dirac: " + *viol);
  int v = c.mats[0].rows;
  EnvelopingOperator r = zero_op(alg, v, v);
  for (int a = 0; a < d; ++a) {
    Monomial m(alg->dim(), 0);
    m[alg->degree_offset(degree) + a] = 1;
    r.terms[m] = cqmat_scale(cq_i(), c.mats[a]);
  }
  prune(r);
  return r;
}

}  // namespace carnot
