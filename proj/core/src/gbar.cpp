#include "carnot/gbar.hpp"

#include <fmt/format.h>

namespace carnot {

namespace {

// Bar-degree layout: degree k (1..n) holds g_k then (g_{n-k+1})*, degree n+1
// holds Z. Returns dims of the bar algebra.
std::vector<int> bar_dims(const std::vector<int>& d) {
  int n = static_cast<int>(d.size());
  std::vector<int> bd(n + 1, 0);
  for (int k = 1; k <= n; ++k) bd[k - 1] = d[k - 1] + d[n - k];
  bd[n] = 1;
  return bd;
}

}  // namespace

GbarAlgebra build_gbar(const GradedLieAlgebra& g) {
  const int n = g.step();
  const int D = g.dim();
  auto bd = bar_dims(g.dims());

  // index maps
  std::vector<int> bar_off(n + 1, 0);
  for (int k = 1; k <= n; ++k) bar_off[k] = bar_off[k - 1] + bd[k - 1];
  std::vector<int> g_to_bar(D), gstar_to_bar(D);
  for (int i = 0; i < D; ++i) {
    int w = g.degree(i);
    int pos_in_block = i - g.degree_offset(w);
    g_to_bar[i] = bar_off[w - 1] + pos_in_block;
    int wstar = n - w + 1;
    gstar_to_bar[i] = bar_off[wstar - 1] + g.dims()[wstar - 1] + pos_in_block;
  }
  int z_index = bar_off[n];

  AlgebraInput in;
  in.dims = bd;
  in.basis.resize(z_index + 1);
  for (int i = 0; i < D; ++i) {
    in.basis[g_to_bar[i]] = g.name(i);
    in.basis[gstar_to_bar[i]] = g.name(i) + "*";
  }
  in.basis[z_index] = "Z";

  // rule: [x,y]_bar = [x,y]_g on the g-copy
  for (const auto& [key, v] : g.table()) {
    AlgebraInput::Entry e;
    e.i = g_to_bar[key.first];
    e.j = g_to_bar[key.second];
    for (const auto& [k, c] : v) e.value[g_to_bar[k]] = c;
    in.brackets.push_back(std::move(e));
  }
  // rules for [f_a, e_b] with f_a the dual of e_a
  for (int a = 0; a < D; ++a) {
    int i = g.degree(a);
    for (int b = 0; b < D; ++b) {
      int j = g.degree(b);
      AlgebraInput::Entry e;
      e.i = gstar_to_bar[a];
      e.j = g_to_bar[b];
      if (i == j) {
        // [f_a, e_b] = j <f_a, e_b> Z
        if (a == b) e.value[z_index] = Rational(j);
      } else if (i > j) {
        // <[f_a, e_b], e_c> = <f_a, [e_b, e_c]_g>, c of degree i - j
        for (int c = 0; c < D; ++c) {
          if (g.degree(c) != i - j) continue;
          SparseVec br = g.basis_bracket(b, c);
          auto it = br.find(a);
          if (it != br.end() && it->second != 0) e.value[gstar_to_bar[c]] = it->second;
        }
      }
      if (!e.value.empty()) in.brackets.push_back(std::move(e));
    }
  }

  GbarAlgebra gb;
  gb.bar = std::make_shared<GradedLieAlgebra>(GradedLieAlgebra::build(std::move(in)));
  gb.base = std::make_shared<GradedLieAlgebra>(g);
  gb.g_to_bar = g_to_bar;
  gb.gstar_to_bar = gstar_to_bar;
  gb.z_index = z_index;

  // standalone abelian factor g* ⊕ RZ with its bar grading
  AlgebraInput nin;
  nin.dims.resize(n + 1, 0);
  for (int k = 1; k <= n; ++k) nin.dims[k - 1] = g.dims()[n - k];
  nin.dims[n] = 1;
  std::vector<int> nbar_to_bar;
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < D; ++i) {
      if (n - g.degree(i) + 1 != k) continue;
      nin.basis.push_back(g.name(i) + "*");
      nbar_to_bar.push_back(gstar_to_bar[i]);
    }
  }
  nin.basis.push_back("Z");
  nbar_to_bar.push_back(z_index);
  gb.nbar = std::make_shared<GradedLieAlgebra>(GradedLieAlgebra::build(std::move(nin)));
  gb.nbar_to_bar = std::move(nbar_to_bar);
  return gb;
}

SemidirectAlgebra gbar_as_semidirect(const GbarAlgebra& gb) {
  SemidirectAlgebra s;
  s.ambient = gb.bar;
  s.n_part = gb.nbar;
  s.h_part = gb.base;
  s.n_to_ambient = gb.nbar_to_bar;
  s.h_to_ambient = gb.g_to_bar;
  return s;
}

SemidirectAlgebra build_semidirect(const GradedLieAlgebra& n,
                                   const GradedLieAlgebra& h,
                                   const DerivationAction& action) {
  if (static_cast<int>(action.size()) != h.dim())
    throw Error("build_semidirect: one action matrix per h basis vector required");
  for (const auto& m : action)
    if (m.rows != n.dim() || m.cols != n.dim())
      throw Error("build_semidirect: action matrix shape mismatch");

  // grading: action(Y_b) must raise n-degree by deg(Y_b)
  for (int b = 0; b < h.dim(); ++b)
    for (int r = 0; r < n.dim(); ++r)
      for (int c = 0; c < n.dim(); ++c)
        if (action[b].at(r, c) != 0 && n.degree(r) != n.degree(c) + h.degree(b))
          throw Error(fmt::format(
              "build_semidirect: action of {} violates grading at ({}, {})",
              h.name(b), r, c));

  // derivation property on n-brackets
  for (int b = 0; b < h.dim(); ++b) {
    for (int x = 0; x < n.dim(); ++x)
      for (int y = x + 1; y < n.dim(); ++y) {
        RVec bx = basis_vec(n, x), by = basis_vec(n, y);
        RVec lhs = action[b] * bracket(n, bx, by);
        RVec rhs = bracket(n, action[b] * bx, by);
        RVec rhs2 = bracket(n, bx, action[b] * by);
        for (int t = 0; t < n.dim(); ++t) rhs[t] += rhs2[t];
        if (lhs != rhs)
          throw Error(fmt::format(
              "build_semidirect: action of {} is not a derivation at pair ({}, {})",
              h.name(b), n.name(x), n.name(y)));
      }
  }

  // compatibility with h-brackets: action([Y_a, Y_b]) = [action a, action b]
  for (int a = 0; a < h.dim(); ++a)
    for (int b = a + 1; b < h.dim(); ++b) {
      RMat lhs(n.dim(), n.dim());
      for (const auto& [k, c] : h.basis_bracket(a, b)) lhs = lhs + rmat_scale(c, action[k]);
      RMat rhs = action[a] * action[b] - action[b] * action[a];
      if (!(lhs == rhs))
        throw Error(fmt::format(
            "build_semidirect: action incompatible with [{}, {}]", h.name(a), h.name(b)));
    }

  const int steps = std::max(n.step(), h.step());
  std::vector<int> dims(steps, 0);
  for (int k = 1; k <= steps; ++k) {
    if (k <= h.step()) dims[k - 1] += h.dims()[k - 1];
    if (k <= n.step()) dims[k - 1] += n.dims()[k - 1];
  }
  std::vector<int> off(steps + 1, 0);
  for (int k = 1; k <= steps; ++k) off[k] = off[k - 1] + dims[k - 1];

  std::vector<int> h_to_amb(h.dim()), n_to_amb(n.dim());
  for (int i = 0; i < h.dim(); ++i) {
    int w = h.degree(i);
    h_to_amb[i] = off[w - 1] + (i - h.degree_offset(w));
  }
  for (int i = 0; i < n.dim(); ++i) {
    int w = n.degree(i);
    int hblock = (w <= h.step()) ? h.dims()[w - 1] : 0;
    n_to_amb[i] = off[w - 1] + hblock + (i - n.degree_offset(w));
  }

  AlgebraInput in;
  in.dims = dims;
  in.basis.resize(off[steps]);
  for (int i = 0; i < h.dim(); ++i) in.basis[h_to_amb[i]] = h.name(i);
  for (int i = 0; i < n.dim(); ++i) in.basis[n_to_amb[i]] = n.name(i);

  for (const auto& [key, v] : h.table()) {
    AlgebraInput::Entry e;
    e.i = h_to_amb[key.first];
    e.j = h_to_amb[key.second];
    for (const auto& [k, c] : v) e.value[h_to_amb[k]] = c;
    in.brackets.push_back(std::move(e));
  }
  for (const auto& [key, v] : n.table()) {
    AlgebraInput::Entry e;
    e.i = n_to_amb[key.first];
    e.j = n_to_amb[key.second];
    for (const auto& [k, c] : v) e.value[n_to_amb[k]] = c;
    in.brackets.push_back(std::move(e));
  }
  for (int b = 0; b < h.dim(); ++b)
    for (int c = 0; c < n.dim(); ++c) {
      AlgebraInput::Entry e;
      e.i = h_to_amb[b];
      e.j = n_to_amb[c];
      for (int r = 0; r < n.dim(); ++r)
        if (action[b].at(r, c) != 0) e.value[n_to_amb[r]] = action[b].at(r, c);
      if (!e.value.empty()) in.brackets.push_back(std::move(e));
    }

  SemidirectAlgebra s;
  s.ambient = std::make_shared<GradedLieAlgebra>(GradedLieAlgebra::build(std::move(in)));
  s.n_part = std::make_shared<GradedLieAlgebra>(n);
  s.h_part = std::make_shared<GradedLieAlgebra>(h);
  s.n_to_ambient = std::move(n_to_amb);
  s.h_to_ambient = std::move(h_to_amb);
  return s;
}

DerivationAction coadjoint_gbar_action(const GradedLieAlgebra& g) {
  const int n = g.step();
  const int D = g.dim();
  // nbar basis layout: degree k block = duals of g_{n-k+1}, then Z last.
  std::vector<int> dual_pos(D);  // g index -> nbar index of its dual
  int pos = 0;
  for (int k = 1; k <= n; ++k)
    for (int i = 0; i < D; ++i)
      if (n - g.degree(i) + 1 == k) dual_pos[i] = pos++;
  const int z = pos;  // last
  const int dimN = D + 1;

  DerivationAction act(D, RMat(dimN, dimN));
  for (int b = 0; b < D; ++b) {
    int j = g.degree(b);
    for (int a = 0; a < D; ++a) {
      int i = g.degree(a);
      // [Y_b, f_a] = -[f_a, Y_b]
      if (i == j) {
        if (a == b) act[b].at(z, dual_pos[a]) = Rational(-j);
      } else if (i > j) {
        for (int c = 0; c < D; ++c) {
          if (g.degree(c) != i - j) continue;
          SparseVec br = g.basis_bracket(b, c);
          auto it = br.find(a);
          if (it != br.end() && it->second != 0)
            act[b].at(dual_pos[c], dual_pos[a]) = -it->second;
        }
      }
    }
    // [Y_b, Z] = 0: column z stays zero
  }
  return act;
}

NondegeneracyReport check_nondegeneracy(const GradedLieAlgebra& A) {
  NondegeneracyReport rep;
  const int n = A.step();
  rep.top_degree_ok = (A.dims()[n - 1] == 1);
  if (!rep.top_degree_ok) return rep;
  const int top = A.degree_offset(n);

  for (int i = 1; i <= n - 1; ++i) {
    int di = A.dims()[i - 1];
    int dni = A.dims()[n - i - 1];
    RMat M(di, dni);
    for (int a = 0; a < di; ++a)
      for (int b = 0; b < dni; ++b) {
        SparseVec br = A.basis_bracket(A.degree_offset(i) + a, A.degree_offset(n - i) + b);
        auto it = br.find(top);
        if (it != br.end()) M.at(a, b) = it->second;
      }
    bool good = (di == dni) && rmat_rank(M) == di;
    if (!good) {
      rep.degenerate_degree = i;
      // witness: right-kernel vector in g_{n-i}, or left-kernel in g_i
      if (auto kv = rmat_kernel_vector(M)) {
        rep.witness = *kv;
        rep.witness_degree = n - i;
      } else if (auto kv2 = rmat_kernel_vector(M.transpose())) {
        rep.witness = *kv2;
        rep.witness_degree = i;
      }
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

FlattenResult flatten_orbit(const GradedLieAlgebra& A, const RVec& ell,
                            const Rational& t) {
  if (t == 0) throw Error("flatten_orbit: t must be nonzero");
  auto nd = check_nondegeneracy(A);
  if (!nd.top_degree_ok)
    throw Error("flatten_orbit: top degree is not one-dimensional");
  if (!nd.ok)
    throw Error(fmt::format("flatten_orbit: pairing degenerate at degree {}",
                            nd.degenerate_degree));

  const int n = A.step();
  const int D = A.dim();
  const int top = A.degree_offset(n);
  if (static_cast<int>(ell.size()) != D - 1)
    throw Error(fmt::format("flatten_orbit: ell must have length {} (degrees 1..n-1)", D - 1));

  RVec m(D, Rational(0));
  for (int i = 0; i < D - 1; ++i) m[i] = ell[i];
  m[top] = t;
  const RVec m0 = m;

  FlattenResult res;
  res.element = zero_vec(A);

  for (int k = 1; k <= n - 1; ++k) {
    int dtar = A.dims()[n - k - 1];
    int otar = A.degree_offset(n - k);
    int dk = A.dims()[k - 1];
    int ok_ = A.degree_offset(k);
    // (coAd(exp y) m)(e_z) = m_z - t * top-coeff([y, e_z]) for z in degree n-k
    RMat P(dtar, dk);
    for (int z = 0; z < dtar; ++z)
      for (int c = 0; c < dk; ++c) {
        SparseVec br = A.basis_bracket(ok_ + c, otar + z);
        auto it = br.find(top);
        if (it != br.end()) P.at(z, c) = t * it->second;
      }
    RVec rhs(dtar);
    for (int z = 0; z < dtar; ++z) rhs[z] = m[otar + z];
    auto sol = rmat_solve(P, rhs);
    if (!sol) throw Error("flatten_orbit: degree solve failed (degenerate pairing?)");
    RVec y = zero_vec(A);
    for (int c = 0; c < dk; ++c) y[ok_ + c] = (*sol)[c];
    res.steps.push_back(y);
    m = coAd(A, y) * m;
    res.element = bch_product(A, y, res.element);
  }

  // exact self-verification
  RVec check = coAd(A, res.element) * m0;
  for (int i = 0; i < D; ++i) {
    Rational want = (i == top) ? t : Rational(0);
    if (check[i] != want)
      throw Error("flatten_orbit: internal verification failed");
  }
  res.flattened = check;
  return res;
}

}  // namespace carnot
