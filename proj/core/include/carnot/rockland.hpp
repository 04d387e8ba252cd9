#pragma once

#include <optional>

#include "carnot/rep.hpp"

namespace carnot {

// One representation parameter of a Rockland sweep. When `ray` is set the
// scan minimizes over functionals ell + r*ray, r in (0, r_max], refining the
// radius adaptively (needed for kernel-direction characters, where no single
// radius is canonical).
struct SweepPoint {
  Eigen::VectorXd ell;
  std::optional<Eigen::VectorXd> ray;
  std::string label;
};

// Default sweep: abelian algebras get radial families over a unit-sphere
// grid; step-2 algebras get central characters t = +-1, kernel-direction ray
// families and abelianized characters. Step >= 3 gets characters only and is
// marked incomplete (satisfied verdicts are then capped at inconclusive).
struct Sweep {
  std::vector<SweepPoint> points;
  bool complete = true;
};
Sweep default_sweep(const GradedLieAlgebra& alg, int sphere_points = 32);

struct RocklandVerdict {
  std::string verdict;  // satisfied | violated | inconclusive
  double tol = 1e-6;
  std::vector<int> cutoffs;
  struct Row {
    std::string label;
    std::vector<double> min_sv;   // per cutoff, over the safe band
    std::string status;           // ok | violated | inconclusive
  };
  std::vector<Row> table;
  int witness = -1;  // row index of a violation
  bool sweep_complete = true;
};

// Min singular values of pi(D) and pi(D^t) on the safe band, per
// representation and truncation. Verdict per row:
//   - all ladder values below tol, or decreasing (>= 2x) to below tol: violated
//   - final value >= tol and not collapsing (>= half the first value): ok
//   - otherwise: inconclusive.
RocklandVerdict rockland_scan(const EnvelopingOperator& D, const Sweep& sweep,
                              const std::vector<int>& cutoffs, double tol = 1e-6);

struct GammaCriterion {
  bool satisfied = false;
  bool discrete_branch = false;  // 2n = dim g_1
  int rank = 0;                  // 2n, exact over Q at t = 1
  std::vector<double> lambdas;
  double lambda_sum = 0;
  std::vector<double> singular_points;  // discrete branch, enumerated <= bound
  double bound = 0;
  std::vector<std::complex<double>> gamma_spectrum;
  double distance = 0;  // min distance of the spectrum to the singular set
};

// Examples-style exact verdict for D = -sum X_i^2 + i gamma T on a 2-step
// algebra with one-dimensional center: the spectrum of gamma must avoid
//   ]-inf, -sum lambda] u [sum lambda, inf[   when 2n < dim g_1,
//   { +-(sum lambda + 2 sum alpha_j lambda_j) }  when 2n = dim g_1.
GammaCriterion exact_gamma_criterion(const GradedLieAlgebra& alg, const CQMat& gamma,
                                     double point_tol = 1e-9);

// Per-representation realization of the fractional-power model operator
// sum_i |D_i|^{s/i - 1} D_i for a Clifford action on the full algebra
// (functional calculus on the assembled blocks).
Eigen::MatrixXcd assemble_fractional_dirac(const GradedLieAlgebra& alg,
                                           const std::vector<CQMat>& clifford,
                                           double s, const RepresentationAssembly& rep);

}  // namespace carnot
