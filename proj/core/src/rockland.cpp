#include "carnot/rockland.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "carnot/parallel.hpp"

namespace carnot {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

// deterministic unit-sphere grid: axis directions plus seeded random points,
// `per_dim` points per dimension in total
std::vector<VectorXd> sphere_grid(int dim, int per_dim) {
  std::vector<VectorXd> pts;
  if (dim <= 0) return pts;
  if (dim == 1) {
    VectorXd p(1);
    p << 1;
    pts.push_back(p);
    p << -1;
    pts.push_back(p);
    return pts;
  }
  for (int i = 0; i < dim; ++i) {
    VectorXd p = VectorXd::Zero(dim);
    p(i) = 1;
    pts.push_back(p);
    p(i) = -1;
    pts.push_back(p);
  }
  std::mt19937_64 rng(0x5eedULL + dim);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int want = per_dim * dim;
  while (static_cast<int>(pts.size()) < want) {
    VectorXd p(dim);
    for (int i = 0; i < dim; ++i) p(i) = gauss(rng);
    double n = p.norm();
    if (n < 1e-8) continue;
    pts.push_back(p / n);
  }
  return pts;
}

struct SvPair {
  double min_sv = 0;
  double max_sv = 0;
};

SvPair sv_at(const EnvelopingOperator& D, const EnvelopingOperator& Dt,
             const VectorXd& ell, int N, int degree) {
  auto rep = rep_for(D.alg, ell, N);
  MatrixXcd A = assemble(D, rep);
  MatrixXcd At = assemble(Dt, rep);
  MatrixXcd As = safe_compress(A, rep, degree, D.v1, D.v0);
  MatrixXcd Ats = safe_compress(At, rep, degree, Dt.v1, Dt.v0);
  Eigen::BDCSVD<MatrixXcd> s1(As), s2(Ats);
  double mn = std::min(s1.singularValues()(s1.singularValues().size() - 1),
                       s2.singularValues()(s2.singularValues().size() - 1));
  double mx = std::max(s1.singularValues()(0), s2.singularValues()(0));
  return {mn, mx};
}

}  // namespace

Sweep default_sweep(const GradedLieAlgebra& alg, int sphere_points) {
  Sweep sweep;
  const int D = alg.dim();

  if (alg.is_abelian()) {
    for (const auto& w : sphere_grid(D, sphere_points)) {
      SweepPoint p;
      p.ell = VectorXd::Zero(D);
      p.ray = w;
      p.label = fmt::format("xi-ray:{}", sweep.points.size());
      sweep.points.push_back(std::move(p));
    }
    return sweep;
  }

  if (alg.step() == 2) {
    const int d1 = alg.dims()[0];
    const int off2 = alg.degree_offset(2);
    const int d2 = alg.dim() - off2;
    std::vector<VectorXd> tdirs;
    if (d2 == 1) {
      VectorXd t(1);
      t << 1;
      tdirs.push_back(t);
      t << -1;
      tdirs.push_back(t);
    } else {
      tdirs = sphere_grid(d2, sphere_points);
    }
    for (const auto& t : tdirs) {
      VectorXd ell = VectorXd::Zero(D);
      ell.segment(off2, d2) = t;
      auto alg_ptr = std::make_shared<GradedLieAlgebra>(alg);
      auto datum = make_kirillov_datum(alg_ptr, ell);
      SweepPoint base;
      base.ell = ell;
      base.label = fmt::format("t:{}", sweep.points.size());
      sweep.points.push_back(base);
      // kernel-direction character families at this central parameter
      int kdim = static_cast<int>(datum.kernel.cols());
      if (kdim > 0) {
        for (const auto& w : sphere_grid(kdim, sphere_points)) {
          SweepPoint p;
          p.ell = ell;
          VectorXd ray = VectorXd::Zero(D);
          ray.head(d1) = datum.kernel * w;
          p.ray = ray;
          p.label = fmt::format("t+mu-ray:{}", sweep.points.size());
          sweep.points.push_back(std::move(p));
        }
      }
    }
    // abelianized characters (trivial central part)
    for (const auto& w : sphere_grid(d1, sphere_points)) {
      SweepPoint p;
      p.ell = VectorXd::Zero(D);
      p.ell.head(d1) = w;
      p.label = fmt::format("char:{}", sweep.points.size());
      sweep.points.push_back(std::move(p));
    }
    return sweep;
  }

  // step >= 3: abelianized characters only; coverage is partial
  sweep.complete = false;
  for (const auto& w : sphere_grid(alg.dims()[0], sphere_points)) {
    SweepPoint p;
    p.ell = VectorXd::Zero(D);
    p.ell.head(alg.dims()[0]) = w;
    p.label = fmt::format("char:{}", sweep.points.size());
    sweep.points.push_back(std::move(p));
  }
  return sweep;
}

RocklandVerdict rockland_scan(const EnvelopingOperator& D, const Sweep& sweep,
                              const std::vector<int>& cutoffs, double tol) {
  if (sweep.points.empty()) throw Error("rockland_scan: empty sweep");
  if (cutoffs.empty()) throw Error("rockland_scan: empty truncation ladder");
  auto deg_opt = D.homogeneous_degree();
  int degree = deg_opt ? *deg_opt : 0;
  if (!deg_opt) {
    // conservative band for inhomogeneous operators
    for (const auto& [m, c] : D.terms) {
      (void)c;
      degree = std::max(degree, D.weighted_degree(m));
    }
  }
  EnvelopingOperator Dt = adjoint(D);

  RocklandVerdict v;
  v.tol = tol;
  v.cutoffs = cutoffs;
  v.sweep_complete = sweep.complete;
  v.table.resize(sweep.points.size());

  parallel_for(sweep.points.size(), [&](size_t pi) {
    const auto& pt = sweep.points[pi];
    RocklandVerdict::Row row;
    row.label = pt.label;
    for (int N : cutoffs) {
      if (!pt.ray) {
        row.min_sv.push_back(sv_at(D, Dt, pt.ell, N, degree).min_sv);
        continue;
      }
      // Adaptive radial minimization along ell + r*ray of the scale-free
      // measure min_sv / max(1, max_sv); an absolute measure would fake a
      // violation for every ray as r -> 0.
      auto eval = [&](double r) {
        SvPair s = sv_at(D, Dt, pt.ell + r * (*pt.ray), N, degree);
        return s.min_sv / std::max(1.0, s.max_sv);
      };
      const double rmax = 8.0;
      const int coarse = 48;
      double best_r = rmax / coarse;
      double best = eval(best_r);
      for (int i = 2; i <= coarse; ++i) {
        double r = rmax * i / coarse;
        double s = eval(r);
        if (s < best) {
          best = s;
          best_r = r;
        }
      }
      // golden-section refinement around the coarse argmin
      double lo = std::max(1e-6, best_r - rmax / coarse);
      double hi = best_r + rmax / coarse;
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
      double f1 = eval(c1), f2 = eval(c2);
      for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
          hi = c2;
          c2 = c1;
          f2 = f1;
          c1 = hi - gr * (hi - lo);
          f1 = eval(c1);
        } else {
          lo = c1;
          c1 = c2;
          f1 = f2;
          c2 = lo + gr * (hi - lo);
          f2 = eval(c2);
        }
      }
      best = std::min({best, f1, f2});
      row.min_sv.push_back(best);
    }
    v.table[pi] = std::move(row);
  });

  // verdict per row
  bool any_inconclusive = false;
  for (size_t pi = 0; pi < v.table.size(); ++pi) {
    auto& row = v.table[pi];
    double first = row.min_sv.front(), last = row.min_sv.back();
    bool all_below = true;
    for (double s : row.min_sv)
      if (s >= tol) all_below = false;
    if (all_below || (last < tol && first >= 2 * last)) {
      row.status = "violated";
      if (v.witness < 0) v.witness = static_cast<int>(pi);
    } else if (last < tol) {
      row.status = "inconclusive";
      any_inconclusive = true;
    } else if (last <= first / 2) {
      row.status = "inconclusive";
      any_inconclusive = true;
    } else {
      row.status = "ok";
    }
  }
  if (v.witness >= 0)
    v.verdict = "violated";
  else if (any_inconclusive || !sweep.complete)
    v.verdict = "inconclusive";
  else
    v.verdict = "satisfied";
  return v;
}

GammaCriterion exact_gamma_criterion(const GradedLieAlgebra& alg, const CQMat& gamma,
                                     double point_tol) {
  if (alg.step() != 2 || alg.dims()[1] != 1)
    throw Error("exact_gamma_criterion: needs a 2-step algebra with dim g_2 = 1");
  const int d1 = alg.dims()[0];
  const int top = alg.degree_offset(2);

  GammaCriterion crit;

  // exact rank of the skew form at t = 1
  RMat B(d1, d1);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d1; ++b) {
      SparseVec br = alg.basis_bracket(a, b);
      auto it = br.find(top);
      if (it != br.end()) B.at(a, b) = it->second;
    }
  crit.rank = rmat_rank(B);
  crit.discrete_branch = (crit.rank == d1);

  auto alg_ptr = std::make_shared<GradedLieAlgebra>(alg);
  VectorXd ell = VectorXd::Zero(alg.dim());
  ell(top) = 1;
  auto datum = make_kirillov_datum(alg_ptr, ell);
  crit.lambdas = datum.lambdas;
  for (double l : crit.lambdas) crit.lambda_sum += l;

  Eigen::ComplexEigenSolver<MatrixXcd> es(to_complex(gamma));
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    crit.gamma_spectrum.push_back(es.eigenvalues()(i));

  double maxabs = 0;
  for (auto z : crit.gamma_spectrum) maxabs = std::max(maxabs, std::abs(z));

  double dist = std::numeric_limits<double>::infinity();
  if (!crit.discrete_branch) {
    // singular set ]-inf,-S] u [S,inf[ on the real axis, S = sum lambda
    double S = crit.lambda_sum;
    crit.bound = S;
    for (auto z : crit.gamma_spectrum) {
      double re = std::abs(z.real()), im = std::abs(z.imag());
      double d = (re >= S) ? im : std::hypot(S - re, im);
      dist = std::min(dist, d);
    }
  } else {
    // enumerate +-(S + 2 sum alpha_j lambda_j) up to a bound covering the
    // spectrum with margin
    double bound = maxabs + 2 * crit.lambda_sum + 1;
    crit.bound = bound;
    int n = static_cast<int>(crit.lambdas.size());
    std::vector<double> pts;
    std::function<void(int, double)> enumerate = [&](int j, double acc) {
      if (acc > bound) return;
      if (j == n) {
        pts.push_back(acc);
        return;
      }
      for (int a = 0;; ++a) {
        double next = acc + 2 * a * crit.lambdas[j];
        if (next > bound) break;
        enumerate(j + 1, next);
        if (crit.lambdas[j] == 0) break;
      }
    };
    enumerate(0, crit.lambda_sum);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              pts.end());
    crit.singular_points = pts;
    for (auto z : crit.gamma_spectrum)
      for (double p : pts) {
        dist = std::min(dist, std::abs(z - std::complex<double>(p, 0)));
        dist = std::min(dist, std::abs(z + std::complex<double>(p, 0)));
      }
  }
  crit.distance = dist;
  crit.satisfied = dist > point_tol;
  return crit;
}

Eigen::MatrixXcd assemble_fractional_dirac(const GradedLieAlgebra& alg,
                                           const std::vector<CQMat>& clifford,
                                           double s, const RepresentationAssembly& rep) {
  if (static_cast<int>(clifford.size()) != alg.dim())
    throw Error("assemble_fractional_dirac: one Clifford matrix per basis vector");
  CliffordAction full{clifford};
  if (auto viol = clifford_violation(full))
    throw Error("assemble_fractional_dirac: " + *viol);
  if (s <= alg.step())
    throw Error("assemble_fractional_dirac: s must exceed the step");

  auto alg_ptr = std::make_shared<GradedLieAlgebra>(alg);
  const int vdim = clifford[0].rows;
  const int hd = rep.hdim();
  MatrixXcd total = MatrixXcd::Zero(hd * vdim, hd * vdim);
  for (int i = 1; i <= alg.step(); ++i) {
    if (alg.dims()[i - 1] == 0) continue;
    EnvelopingOperator Di = zero_op(alg_ptr, vdim, vdim);
    for (int b = 0; b < alg.dims()[i - 1]; ++b) {
      int idx = alg.degree_offset(i) + b;
      Monomial m(alg.dim(), 0);
      m[idx] = 1;
      Di.terms[m] = cqmat_scale(cq_i(), clifford[idx]);
    }
    MatrixXcd Mi = assemble(Di, rep);
    double expo = s / i - 1.0;
    total += functional_calculus(Mi, expo) * Mi;
  }
  return total;
}

}  // namespace carnot
