#pragma once

#include <carnot/algebra.hpp>
#include <carnot/standard_algebras.hpp>

#include <random>

namespace carnot_test {

using carnot::GradedLieAlgebra;
using carnot::Rational;
using carnot::RVec;

inline Rational random_rational(std::mt19937_64& rng, int num_bound = 6, int den_bound = 4) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  return carnot::rat_of(num(rng), den(rng));
}

inline RVec random_vec(std::mt19937_64& rng, const GradedLieAlgebra& A) {
  RVec v(A.dim());
  for (auto& q : v) q = random_rational(rng);
  return v;
}

inline Rational random_nonzero_rational(std::mt19937_64& rng) {
  Rational q = random_rational(rng);
  while (q == 0) q = random_rational(rng);
  return q;
}

// Random degree-preserving basis change of a validated algebra: structure
// constants conjugate, so the result is again a validated Carnot algebra.
inline GradedLieAlgebra random_graded_conjugate(std::mt19937_64& rng,
                                                const GradedLieAlgebra& A) {
  using carnot::RMat;
  const int D = A.dim();
  // block-diagonal invertible rational matrix (unitriangular times swaps)
  RMat T = RMat::identity(D);
  for (int deg = 1; deg <= A.step(); ++deg) {
    int off = A.degree_offset(deg);
    int d = A.dims()[deg - 1];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j) continue;
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
          T.at(off + i, off + j) = random_rational(rng, 2, 2);
      }
  }
  auto Tinv = carnot::rmat_inverse(T);
  while (!Tinv) {
    // resample the off-diagonal fill until invertible
    T = RMat::identity(D);
    for (int deg = 1; deg <= A.step(); ++deg) {
      int off = A.degree_offset(deg);
      int d = A.dims()[deg - 1];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          if (i == j) continue;
          if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
            T.at(off + i, off + j) = random_rational(rng, 2, 2);
        }
    }
    Tinv = carnot::rmat_inverse(T);
  }
  // new basis f_i = sum_j T_ji e_j; c'(i,j) = T^{-1} [T e_i, T e_j]
  carnot::AlgebraInput in;
  in.dims = A.dims();
  for (int i = 0; i < D; ++i) in.basis.push_back("f" + std::to_string(i + 1));
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j) {
      RVec ei(D, Rational(0)), ej(D, Rational(0));
      for (int k = 0; k < D; ++k) {
        ei[k] = T.at(k, i);
        ej[k] = T.at(k, j);
      }
      RVec br = carnot::bracket(A, ei, ej);
      RVec coords = *Tinv * br;
      carnot::AlgebraInput::Entry e;
      e.i = i;
      e.j = j;
      for (int k = 0; k < D; ++k)
        if (coords[k] != 0) e.value[k] = coords[k];
      if (!e.value.empty()) in.brackets.push_back(std::move(e));
    }
  return GradedLieAlgebra::build(std::move(in));
}

// Random validated Carnot algebra of step <= 3: a conjugate of one of the
// stock algebras, possibly padded with an extra abelian degree-1 direction.
inline GradedLieAlgebra random_step_le3(std::mt19937_64& rng) {
  int pick = std::uniform_int_distribution<int>(0, 5)(rng);
  GradedLieAlgebra base = [&] {
    switch (pick) {
      case 0: return carnot::abelian(std::uniform_int_distribution<int>(1, 4)(rng));
      case 1: return carnot::h3();
      case 2: return carnot::h5();
      case 3: return carnot::engel();
      case 4: return carnot::free_step3_2gen();
      default:
        return carnot::heisenberg_type({carnot::rat_of(1), carnot::rat_of(2)},
                                       std::uniform_int_distribution<int>(0, 1)(rng));
    }
  }();
  return random_graded_conjugate(rng, base);
}

}  // namespace carnot_test
