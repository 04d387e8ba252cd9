#pragma once

#include <functional>

#include "carnot/rockland.hpp"

namespace carnot {

struct IndexReport {
  std::string kind;  // fredholm | spectral-flow | winding
  double tol = 1e-8;

  // fredholm
  std::vector<int> cutoffs;
  std::vector<long> values;
  bool stabilized = false;
  std::optional<long> value;

  // spectral flow
  std::vector<double> crossings;  // located crossing times in [0,1]
  long signature_check = 0;

  // winding
  double residual = 0;
};

// Nested band compressions of one assembled operator. Kernel dimensions are
// read off the domain restriction A|_{S_m} (all outputs captured exactly),
// cokernel dimensions off the row restriction (the domain restriction of A*);
// the working matrix is clipped to the truncation-exact region.
struct TruncationLadder {
  Eigen::MatrixXcd big;
  int modes = 0;
  int cutoff_big = 0;   // per-mode cutoff of the assembly
  int exact_bound = 0;  // entries with both mode indices < exact_bound are exact
  int v_rows = 1, v_cols = 1;
  int degree = 0;
  std::vector<int> cutoffs;
};

TruncationLadder make_ladder(const EnvelopingOperator& D,
                             const RepresentationAssembly& rep,
                             std::vector<int> cutoffs);

// Per cutoff m: index = (cols - rank(A P_m)) - (rows - rank(P_m A)) with
// numerical ranks at threshold tol * sigma_max. The report carries the value
// only when the last three ladder entries agree.
IndexReport fredholm_index(const TruncationLadder& ladder, double tol = 1e-8);

// Signed eigenvalue crossings along the affine path (1-t)F0 + tF1 between
// self-adjoint invertible endpoints; localized by bisection. The count must
// match (sig F1 - sig F0)/2, otherwise this throws.
IndexReport spectral_flow(const Eigen::MatrixXcd& F0, const Eigen::MatrixXcd& F1,
                          int steps = 64, double tol = 1e-8);

// Total phase change of det around the loop / 2pi. Consecutive phase
// increments must stay below 0.9*pi; near-singular samples are an error.
IndexReport winding_number(const std::vector<Eigen::MatrixXcd>& loop);
// Doubles the sample count until the increments are comfortable.
IndexReport winding_number_adaptive(const std::function<Eigen::MatrixXcd(double)>& sampler,
                                    int initial_samples = 64);

struct VanErpOptions {
  Rational c{1};
  int sign = 1;
  std::vector<int> ladder = {8, 16, 32};
  std::vector<int> tail_modes = {8, 16, 24};
  double tol = 1e-8;
  bool verify_rockland = true;
};

struct VanErpReport {
  IndexReport fredholm;          // index ladder of pi+(D1 # cD2)
  std::vector<int> tail_modes;
  std::vector<double> tail_deviation;  // ||P_{>=m} (A B^{-1} - 1) P_{>=m}||
  double b_min_sv = 0;           // invertibility evidence for pi+(psi(D1) # cD2)
  bool symmetric_variant = false;
  IndexReport sflow;             // spectral flow between bounded transforms
  std::string d1_verdict, d2_verdict;
};

// Assembles A = pi+(D1 # cD2) and B = pi+(psi(D1) # cD2) for abelian g:
// Fredholm ladder of A, tail deviation of A B^{-1} from the identity, and (for
// symmetric D1) the spectral flow between the bounded transforms of the
// symmetric-variant blocks.
VanErpReport van_erp_pair(const EnvelopingOperator& d1, const EnvelopingOperator& d2,
                          const GbarAlgebra& gb, const VanErpOptions& opts = {});

}  // namespace carnot
