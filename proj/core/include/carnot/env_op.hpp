#pragma once

#include <map>
#include <optional>
#include <vector>

#include "carnot/algebra.hpp"
#include "carnot/gbar.hpp"

namespace carnot {

// A word in the generators (sequence of basis indices).
using Word = std::vector<int>;
// PBW monomial: exponent per basis index, in the declared (degree-major)
// basis order. The exponent vector is the normal form.
using Monomial = std::vector<int>;

// Element of U(g, V0, V1) in PBW normal form with exact Gaussian-rational
// matrix coefficients.
struct EnvelopingOperator {
  AlgebraPtr alg;
  int v0 = 1, v1 = 1;
  std::map<Monomial, CQMat> terms;

  bool is_zero() const { return terms.empty(); }
  int weighted_degree(const Monomial& m) const;
  // k when every monomial has weighted degree k, nullopt otherwise.
  std::optional<int> homogeneous_degree() const;
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

EnvelopingOperator zero_op(AlgebraPtr alg, int v0 = 1, int v1 = 1);
// X_idx with scalar coefficient (V0 = V1 = 1).
EnvelopingOperator generator_op(AlgebraPtr alg, int idx);
// Order-zero operator with the given coefficient matrix.
EnvelopingOperator coefficient_op(AlgebraPtr alg, const CQMat& c);

// Rewrites an arbitrary word (times coefficient) into PBW normal form via
// XY = YX + [X,Y] swaps. Confluent; exact.
EnvelopingOperator pbw_normalize(AlgebraPtr alg, const Word& word, const CQMat& coeff);
EnvelopingOperator pbw_normalize(AlgebraPtr alg, int v0, int v1,
                                 const std::vector<std::pair<Word, CQMat>>& words);

EnvelopingOperator op_add(const EnvelopingOperator& a, const EnvelopingOperator& b);
EnvelopingOperator op_sub(const EnvelopingOperator& a, const EnvelopingOperator& b);
EnvelopingOperator op_scale(const CQ& s, const EnvelopingOperator& a);
// Composition A∘B (B first); coefficient spaces must be composable.
EnvelopingOperator multiply(const EnvelopingOperator& a, const EnvelopingOperator& b);
// Formal adjoint: generators flip sign (divergence-free fields), words
// reverse, coefficients conjugate-transpose.
EnvelopingOperator adjoint(const EnvelopingOperator& a);
// alpha_lambda on U: each monomial scales by lambda^{weighted degree}.
EnvelopingOperator dilation_action(const Rational& lambda, const EnvelopingOperator& a);
// Pushforward along (l, t) -> (l, -t) on an abelian algebra; t_index < 0
// selects the last basis vector.
EnvelopingOperator psi_flip(const EnvelopingOperator& a, int t_index = -1);

// Crossed-product block operator D1 # cD2 on the ambient n ⋊ h.
// Standard variant maps (E⊗F)_0 = E0⊗F0 ⊕ E1⊗F1 to (E⊗F)_1 = E1⊗F0 ⊕ E0⊗F1:
//   [ i_N(D1)⊗Id_{F0}   -Id_{E1}⊗i_H(cD2)^t ]
//   [ Id_{E0}⊗i_H(cD2)   i_N(D1^t)⊗Id_{F1}  ]
// Symmetric variant (E0 = E1, D1 symmetric) maps E⊗F0 ⊕ E⊗F1 to itself:
//   [ i_N(D1)⊗Id_{F0}    Id_E⊗i_H(cD2)^t ]
//   [ Id_E⊗i_H(cD2)     -i_N(D1)⊗Id_{F1} ]
EnvelopingOperator sharp_product(const EnvelopingOperator& d1,
                                 const EnvelopingOperator& d2, const Rational& c,
                                 const SemidirectAlgebra& ambient,
                                 bool symmetric = false);

// --- model operators ---

// sum_i (-1)^{s/w(i)} X_i^{2s/w(i)}, homogeneous of degree 2s. Every degree
// 1..n must divide s; declared basis must be orthonormal.
EnvelopingOperator build_example1(AlgebraPtr alg, int s);

// -sum_i X_i^2 Id + i*gamma*T on a 2-step algebra with dim g_2 = 1.
EnvelopingOperator build_gamma_model(AlgebraPtr alg, const CQMat& gamma);

struct CliffordAction {
  std::vector<CQMat> mats;  // one per generator of the selected degree block
};
// Empty when the relations c_a c_b + c_b c_a = 2 delta_ab, c_a* = c_a hold.
std::optional<std::string> clifford_violation(const CliffordAction& c);

// i * sum_a c(X_a) X_a over the basis of the selected degree; symmetric.
EnvelopingOperator build_dirac(AlgebraPtr alg, const CliffordAction& c, int degree = 1);

}  // namespace carnot
