#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

using RVec = std::vector<Rational>;

// Gaussian rational a + b*i. Exact carrier for operator coefficients.
struct CQ {
  Rational re{0}, im{0};

  CQ() = default;
  CQ(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design
  CQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  CQ conj() const { return {re, -im}; }

  CQ operator-() const { return {-re, -im}; }
  CQ& operator+=(const CQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CQ& operator-=(const CQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend CQ operator+(CQ a, const CQ& b) { return a += b; }
  friend CQ operator-(CQ a, const CQ& b) { return a -= b; }
  friend CQ operator*(const CQ& a, const CQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const CQ& a, const CQ& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const CQ& a, const CQ& b) { return !(a == b); }
};

inline CQ cq_i() { return {Rational(0), Rational(1)}; }

std::string cq_str(const CQ& z);

// Dense rational matrix, row-major.
struct RMat {
  int rows = 0, cols = 0;
  std::vector<Rational> a;

  RMat() = default;
  RMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rational(0)) {}

  Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static RMat identity(int n);
  RMat transpose() const;
  bool is_zero() const;

  friend bool operator==(const RMat& x, const RMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

RMat operator*(const RMat& x, const RMat& y);
RMat operator+(const RMat& x, const RMat& y);
RMat operator-(const RMat& x, const RMat& y);
RMat rmat_scale(const Rational& s, const RMat& x);
RVec operator*(const RMat& x, const RVec& v);

int rmat_rank(RMat m);  // exact rank over Q
// Solves m * x = b exactly; nullopt when inconsistent. For underdetermined
// systems returns one solution (free variables set to 0).
std::optional<RVec> rmat_solve(RMat m, RVec b);
std::optional<RMat> rmat_inverse(const RMat& m);
// A nonzero kernel vector, or nullopt when the kernel is trivial.
std::optional<RVec> rmat_kernel_vector(RMat m);
// Exact positive definiteness via LDL^T pivots (symmetric input required).
bool rmat_positive_definite(const RMat& m);

// Dense Gaussian-rational matrix, row-major.
struct CQMat {
  int rows = 0, cols = 0;
  std::vector<CQ> a;

  CQMat() = default;
  CQMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  CQ& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const CQ& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static CQMat identity(int n);
  CQMat conj_transpose() const;
  bool is_zero() const;

  friend bool operator==(const CQMat& x, const CQMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

CQMat operator*(const CQMat& x, const CQMat& y);
CQMat operator+(const CQMat& x, const CQMat& y);
CQMat operator-(const CQMat& x, const CQMat& y);
CQMat cqmat_scale(const CQ& s, const CQMat& x);
CQMat cqmat_kron(const CQMat& x, const CQMat& y);

Eigen::MatrixXcd to_complex(const CQMat& m);
Eigen::MatrixXd to_double(const RMat& m);
Eigen::VectorXd to_double(const RVec& v);

}  // namespace carnot
