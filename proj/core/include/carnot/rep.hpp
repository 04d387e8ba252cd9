#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "carnot/env_op.hpp"
#include "carnot/gbar.hpp"

namespace carnot {

// Functional ell in g* together with its step-2 derived data.
struct KirillovDatum {
  AlgebraPtr alg;
  Eigen::VectorXd ell;

  // derived (filled by make_kirillov_datum)
  Eigen::MatrixXd skew;      // B(x,y) = ell([x,y]) on g_1
  std::vector<double> lambdas;  // positive symplectic eigenvalues, ascending
  Eigen::MatrixXd p_vecs, q_vecs;  // d1 x n columns, B(p_k, q_k) = lambda_k
  Eigen::MatrixXd kernel;          // d1 x kdim, B-kernel directions
  bool central_nonzero = false;    // ell|g_2 != 0
};

KirillovDatum make_kirillov_datum(AlgebraPtr alg, const Eigen::VectorXd& ell,
                                  double tol = 1e-12);

// Finite truncation of a unitary irreducible representation: one complex
// matrix per generator on a tensor-Hermite basis with cutoff N per mode.
// Degree-1 matrices are banded; truncation error is confined to the top
// cutoff layer of each mode (band-edge effect).
struct RepresentationAssembly {
  AlgebraPtr alg;
  std::string kind;  // character | schrodinger | pi+ | pi-
  int cutoff = 1;    // N per mode
  int modes = 0;     // hilbert dim = N^modes
  std::vector<Eigen::MatrixXcd> gen;  // indexed by algebra basis
  std::vector<double> lambdas;
  Eigen::VectorXd ell;

  int hdim() const;
};

// 1-dimensional character of an abelian algebra: X -> i <xi, X>.
RepresentationAssembly abelian_character(AlgebraPtr alg, const Eigen::VectorXd& xi);

// Canonical-coordinates Schrodinger representation of a step-2 algebra at a
// functional with nonzero central part: q_k as position (tridiagonal), p_k as
// derivative, center as i*ell(z)*Id, B-kernel directions as characters.
RepresentationAssembly schrodinger_rep(const KirillovDatum& datum, int N);

// Dispatch: abelian -> character; step-2 with ell|g2 != 0 -> schrodinger;
// ell|g2 = 0 -> character of the abelianization.
RepresentationAssembly rep_for(AlgebraPtr alg, const Eigen::VectorXd& ell, int N);

// pi± of gbar(g) for abelian g: the g-copy acts by derivatives (left-regular
// sign), the g*-copy by positions, Z by ±i.
RepresentationAssembly pi_plus_rep(const GbarAlgebra& gb, int sign, int N);

// Substitutes generator matrices into the PBW monomials and tensors with the
// coefficient matrices. Layout: kron(hermite part, coefficient part).
Eigen::MatrixXcd assemble(const EnvelopingOperator& D, const RepresentationAssembly& rep);

// Flattened indices whose every mode index is < mode_bound, replicated over a
// coefficient space of dimension vdim.
std::vector<int> band_indices(int modes, int N, int mode_bound, int vdim);
Eigen::MatrixXcd select(const Eigen::MatrixXcd& M, const std::vector<int>& rows,
                        const std::vector<int>& cols);
// Safe-band compression for an operator of weighted degree k: a degree-k
// operator pollutes exactly the top k layers per mode.
Eigen::MatrixXcd safe_compress(const Eigen::MatrixXcd& M, const RepresentationAssembly& rep,
                               int degree, int v_rows, int v_cols);

// Spectral |M|^exponent for self-adjoint M (|0|^0 := 0 on the numerical
// kernel). Throws when M is not self-adjoint within tol.
Eigen::MatrixXcd functional_calculus(const Eigen::MatrixXcd& M, double exponent,
                                     double tol = 1e-8);
// M (1 + M^2)^{-1/2} for self-adjoint M.
Eigen::MatrixXcd bounded_transform(const Eigen::MatrixXcd& M, double tol = 1e-8);

double min_singular_value(const Eigen::MatrixXcd& M);

}  // namespace carnot
