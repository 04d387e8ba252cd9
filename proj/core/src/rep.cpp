#include "carnot/rep.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace carnot {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

// annihilation a|k> = sqrt(k)|k-1>
MatrixXd lowering(int N) {
  MatrixXd a = MatrixXd::Zero(N, N);
  for (int k = 1; k < N; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

// operator acting on one mode of the tensor basis (mode-major flattening,
// mode 0 most significant)
MatrixXcd on_mode(const MatrixXcd& m, int mode, int modes, int N) {
  MatrixXcd r = MatrixXcd::Identity(1, 1);
  for (int k = 0; k < modes; ++k) {
    if (k == mode)
      r = kron(r, m);
    else
      r = kron(r, MatrixXcd::Identity(N, N));
  }
  return r;
}

int pow_int(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

int RepresentationAssembly::hdim() const { return pow_int(cutoff, modes); }

KirillovDatum make_kirillov_datum(AlgebraPtr alg, const Eigen::VectorXd& ell, double tol) {
  if (alg->step() > 2)
    throw Error("make_kirillov_datum: only step <= 2 algebras are supported");
  if (ell.size() != alg->dim()) throw Error("make_kirillov_datum: ell has wrong length");
  KirillovDatum d;
  d.alg = alg;
  d.ell = ell;

  const int d1 = alg->dims()[0];
  d.skew = MatrixXd::Zero(d1, d1);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d1; ++b) {
      double v = 0;
      for (const auto& [k, c] : alg->basis_bracket(a, b)) v += rat_double(c) * ell(k);
      d.skew(a, b) = v;
    }
  if (alg->step() == 2) {
    const int off2 = alg->degree_offset(2);
    for (int i = off2; i < alg->dim(); ++i)
      if (std::abs(ell(i)) > tol) d.central_nonzero = true;
  }

  // Hermitian eigenproblem for iB: eigenpairs (lambda, v) with lambda > 0 give
  // the symplectic pairs p_k = sqrt2 Im v, q_k = sqrt2 Re v, B(p_k,q_k) = lambda.
  MatrixXcd H = cplx(0, 1) * d.skew.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<std::pair<double, int>> pos;
  for (int i = 0; i < d1; ++i)
    if (es.eigenvalues()(i) > tol * scale) pos.push_back({es.eigenvalues()(i), i});
  std::sort(pos.begin(), pos.end());  // ascending lambda, ties by solver order
  int n = static_cast<int>(pos.size());
  d.p_vecs = MatrixXd::Zero(d1, n);
  d.q_vecs = MatrixXd::Zero(d1, n);
  for (int k = 0; k < n; ++k) {
    d.lambdas.push_back(pos[k].first);
    Eigen::VectorXcd v = es.eigenvectors().col(pos[k].second);
    d.p_vecs.col(k) = std::sqrt(2.0) * v.imag();
    d.q_vecs.col(k) = std::sqrt(2.0) * v.real();
  }

  // real orthonormal kernel via SVD of B
  Eigen::JacobiSVD<MatrixXd> svd(d.skew, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol * std::max(1.0, smax)) ++rank;
  d.kernel = svd.matrixV().rightCols(d1 - rank);
  if (d1 - rank != d1 - 2 * n)
    throw Error("make_kirillov_datum: inconsistent skew rank (tolerance issue)");
  return d;
}

RepresentationAssembly abelian_character(AlgebraPtr alg, const Eigen::VectorXd& xi) {
  if (!alg->is_abelian()) throw Error("abelian_character: algebra is not abelian");
  if (xi.size() != alg->dim()) throw Error("abelian_character: xi has wrong length");
  RepresentationAssembly rep;
  rep.alg = std::move(alg);
  rep.kind = "character";
  rep.cutoff = 1;
  rep.modes = 0;
  rep.ell = xi;
  for (int a = 0; a < rep.alg->dim(); ++a) {
    MatrixXcd m(1, 1);
    m(0, 0) = cplx(0, xi(a));
    rep.gen.push_back(m);
  }
  return rep;
}

RepresentationAssembly schrodinger_rep(const KirillovDatum& datum, int N) {
  const auto& alg = *datum.alg;
  if (alg.step() != 2) throw Error("schrodinger_rep: algebra must be step 2");
  if (!datum.central_nonzero)
    throw Error(
        "schrodinger_rep: ell vanishes on the center; use abelian_character on "
        "the abelianization instead");
  if (N < 2) throw Error("schrodinger_rep: cutoff must be >= 2");

  const int d1 = alg.dims()[0];
  const int n = static_cast<int>(datum.lambdas.size());
  const int kdim = static_cast<int>(datum.kernel.cols());

  RepresentationAssembly rep;
  rep.alg = datum.alg;
  rep.kind = "schrodinger";
  rep.cutoff = N;
  rep.modes = n;
  rep.lambdas = datum.lambdas;
  rep.ell = datum.ell;

  MatrixXd a = lowering(N);
  MatrixXd xhat = (a + a.transpose()) / std::sqrt(2.0);
  MatrixXd deriv = (a - a.transpose()) / std::sqrt(2.0);
  const int hd = pow_int(N, n);

  // mode operators
  std::vector<MatrixXcd> pos_k(n), der_k(n);
  for (int k = 0; k < n; ++k) {
    pos_k[k] = on_mode(xhat.cast<cplx>(), k, n, N);
    der_k[k] = on_mode(deriv.cast<cplx>(), k, n, N);
  }

  rep.gen.assign(alg.dim(), MatrixXcd::Zero(hd, hd));
  for (int b = 0; b < alg.dim(); ++b) {
    if (alg.degree(b) == 2) {
      rep.gen[b] = cplx(0, datum.ell(b)) * MatrixXcd::Identity(hd, hd);
      continue;
    }
    // decompose e_b over the orthonormal basis (p_k, q_k, kernel)
    MatrixXcd m = MatrixXcd::Zero(hd, hd);
    for (int k = 0; k < n; ++k) {
      double cp = datum.p_vecs(b, k);
      double cq = datum.q_vecs(b, k);
      double sl = std::sqrt(datum.lambdas[k]);
      // pi(p_k) = sqrt(lambda) * d/dx_k, pi(q_k) = i sqrt(lambda) * x_k
      if (cp != 0.0) m += cp * sl * der_k[k];
      if (cq != 0.0) m += cq * sl * cplx(0, 1) * pos_k[k];
    }
    for (int j = 0; j < kdim; ++j) {
      double ck = datum.kernel(b, j);
      if (ck == 0.0) continue;
      double mu = datum.ell.head(d1).dot(datum.kernel.col(j));
      m += ck * cplx(0, mu) * MatrixXcd::Identity(hd, hd);
    }
    rep.gen[b] = std::move(m);
  }
  return rep;
}

RepresentationAssembly rep_for(AlgebraPtr alg, const Eigen::VectorXd& ell, int N) {
  if (alg->is_abelian()) return abelian_character(alg, ell);
  if (alg->step() > 2)
    throw Error("rep_for: representations beyond step 2 are not implemented");
  auto datum = make_kirillov_datum(alg, ell);
  if (datum.central_nonzero) return schrodinger_rep(datum, N);
  // character of the abelianization; requires ell([g,g]) = 0, which holds
  // because ell is supported on g_1 and brackets land in g_2
  RepresentationAssembly rep;
  rep.alg = alg;
  rep.kind = "character";
  rep.cutoff = 1;
  rep.modes = 0;
  rep.ell = ell;
  for (int a = 0; a < alg->dim(); ++a) {
    MatrixXcd m(1, 1);
    m(0, 0) = alg->degree(a) == 1 ? cplx(0, ell(a)) : cplx(0, 0);
    rep.gen.push_back(m);
  }
  return rep;
}

RepresentationAssembly pi_plus_rep(const GbarAlgebra& gb, int sign, int N) {
  if (!gb.base->is_abelian())
    throw Error("pi_plus_rep: only abelian base algebras are supported (gbar is "
                "then Heisenberg-type)");
  if (sign != 1 && sign != -1) throw Error("pi_plus_rep: sign must be +1 or -1");
  if (N < 2) throw Error("pi_plus_rep: cutoff must be >= 2");
  const int d = gb.base->dim();
  const auto& bar = *gb.bar;

  RepresentationAssembly rep;
  rep.alg = gb.bar;
  rep.kind = sign > 0 ? "pi+" : "pi-";
  rep.cutoff = N;
  rep.modes = d;
  rep.lambdas.assign(d, 1.0);
  rep.ell = Eigen::VectorXd::Zero(bar.dim());
  rep.ell(gb.z_index) = sign;

  MatrixXd a = lowering(N);
  MatrixXd xhat = (a + a.transpose()) / std::sqrt(2.0);
  MatrixXd deriv = (a - a.transpose()) / std::sqrt(2.0);
  const int hd = pow_int(N, d);

  rep.gen.assign(bar.dim(), MatrixXcd::Zero(hd, hd));
  for (int k = 0; k < d; ++k) {
    rep.gen[gb.g_to_bar[k]] = -on_mode(deriv.cast<cplx>(), k, d, N);
    rep.gen[gb.gstar_to_bar[k]] =
        cplx(0, sign) * on_mode(xhat.cast<cplx>(), k, d, N);
  }
  rep.gen[gb.z_index] = cplx(0, sign) * MatrixXcd::Identity(hd, hd);
  return rep;
}

Eigen::MatrixXcd assemble(const EnvelopingOperator& D, const RepresentationAssembly& rep) {
  if (!same_algebra(D.alg, rep.alg)) throw Error("assemble: operator/representation algebra mismatch");
  const int hd = rep.hdim();
  MatrixXcd full = MatrixXcd::Zero(hd * D.v1, hd * D.v0);
  for (const auto& [mono, coeff] : D.terms) {
    MatrixXcd h = MatrixXcd::Identity(hd, hd);
    for (size_t b = 0; b < mono.size(); ++b)
      for (int e = 0; e < mono[b]; ++e) h = h * rep.gen[b];
    full += kron(h, to_complex(coeff));
  }
  return full;
}

std::vector<int> band_indices(int modes, int N, int mode_bound, int vdim) {
  std::vector<int> idx;
  int hd = pow_int(N, modes);
  for (int h = 0; h < hd; ++h) {
    int rem = h;
    bool ok = true;
    for (int k = modes - 1; k >= 0; --k) {
      int alpha = rem % N;
      rem /= N;
      if (alpha >= mode_bound) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (int v = 0; v < vdim; ++v) idx.push_back(h * vdim + v);
  }
  return idx;
}

Eigen::MatrixXcd select(const Eigen::MatrixXcd& M, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  MatrixXcd r(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      r(static_cast<int>(i), static_cast<int>(j)) = M(rows[i], cols[j]);
  return r;
}

Eigen::MatrixXcd safe_compress(const Eigen::MatrixXcd& M, const RepresentationAssembly& rep,
                               int degree, int v_rows, int v_cols) {
  int bound = std::max(1, rep.cutoff - degree);
  auto rows = band_indices(rep.modes, rep.cutoff, bound, v_rows);
  auto cols = band_indices(rep.modes, rep.cutoff, bound, v_cols);
  return select(M, rows, cols);
}

Eigen::MatrixXcd functional_calculus(const Eigen::MatrixXcd& M, double exponent, double tol) {
  double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
    throw Error("functional_calculus: matrix is not self-adjoint within tolerance");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es((M + M.adjoint()) / 2.0);
  Eigen::VectorXd f(es.eigenvalues().size());
  double emax = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (int i = 0; i < f.size(); ++i) {
    double lam = std::abs(es.eigenvalues()(i));
    // |0|^e := 0 on the numerical kernel, including e = 0
    f(i) = (lam <= 1e-14 * emax) ? 0.0 : std::pow(lam, exponent);
  }
  return es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd bounded_transform(const Eigen::MatrixXcd& M, double tol) {
  double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
    throw Error("bounded_transform: matrix is not self-adjoint within tolerance");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es((M + M.adjoint()) / 2.0);
  Eigen::VectorXd f(es.eigenvalues().size());
  for (int i = 0; i < f.size(); ++i) {
    double lam = es.eigenvalues()(i);
    f(i) = lam / std::sqrt(1.0 + lam * lam);
  }
  return es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
}

double min_singular_value(const Eigen::MatrixXcd& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0.0;
  Eigen::BDCSVD<MatrixXcd> svd(M);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace carnot
