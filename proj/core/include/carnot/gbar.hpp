#pragma once

#include "carnot/algebra.hpp"

namespace carnot {

// Semidirect sum n ⋊ h assembled into one graded algebra. Basis order is
// degree-major; within a degree the h-part precedes the n-part.
struct SemidirectAlgebra {
  AlgebraPtr ambient;
  AlgebraPtr n_part;
  AlgebraPtr h_part;
  std::vector<int> n_to_ambient;
  std::vector<int> h_to_ambient;
};

// Central extension gbar = (g* ⊕ RZ) ⋊ g of step n+1. The dual copy of g_i
// sits in degree n-i+1; Z spans degree n+1. The pairing <.,.> is the
// Kronecker pairing in the declared basis (dual basis = basis).
struct GbarAlgebra {
  AlgebraPtr bar;
  AlgebraPtr base;                 // g
  std::vector<int> g_to_bar;       // base index -> bar index
  std::vector<int> gstar_to_bar;   // base index -> bar index of its dual vector
  int z_index = -1;

  // The abelian factor g* ⊕ RZ as a standalone graded algebra (dual blocks in
  // their bar degrees, Z on top).
  AlgebraPtr nbar;
  std::vector<int> nbar_to_bar;
};

GbarAlgebra build_gbar(const GradedLieAlgebra& g);

// View of gbar as nbar ⋊ g for the crossed-product operator machinery.
SemidirectAlgebra gbar_as_semidirect(const GbarAlgebra& gb);

// Action of h on n by graded derivations: one dim(n) x dim(n) matrix per
// h-basis vector. Degree of action(Y_b) is the degree of Y_b.
using DerivationAction = std::vector<RMat>;

// Validates the action (grading, derivation property, compatibility with
// h-brackets) and assembles the semidirect algebra.
SemidirectAlgebra build_semidirect(const GradedLieAlgebra& n,
                                   const GradedLieAlgebra& h,
                                   const DerivationAction& action);

// The coadjoint-type action of g on g* ⊕ RZ extracted from the gbar bracket
// rules; build_semidirect with this action reproduces build_gbar exactly.
DerivationAction coadjoint_gbar_action(const GradedLieAlgebra& g);

struct NondegeneracyReport {
  bool ok = false;
  bool top_degree_ok = false;        // dim g_n == 1
  int degenerate_degree = 0;         // first i with singular pairing (0 = none)
  std::optional<RVec> witness;       // kernel vector of the degenerate pairing
  int witness_degree = 0;            // degree the witness lives in
};

// Checks dim g_n = 1 and that each pairing [.,.]: g_i x g_{n-i} -> g_n is
// nondegenerate (exact rank over Q).
NondegeneracyReport check_nondegeneracy(const GradedLieAlgebra& A);

struct FlattenResult {
  RVec element;        // group element (exponential coordinates)
  RVec flattened;      // coAd(element) applied to (ell, t); equals (0,...,0,t)
  std::vector<RVec> steps;  // the per-degree solves y_k
};

// Moves (ell, t) to (0,...,0,t) along the coadjoint orbit, degree by degree,
// with an exact verification of the result. ell holds the dual coordinates on
// degrees 1..n-1 (length dim - 1); t != 0 is the top component.
FlattenResult flatten_orbit(const GradedLieAlgebra& A, const RVec& ell,
                            const Rational& t);

}  // namespace carnot
