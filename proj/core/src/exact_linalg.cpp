#include "carnot/exact_linalg.hpp"

namespace carnot {

std::string cq_str(const CQ& z) {
  if (z.im == 0) return rat_str(z.re);
  if (z.re == 0) return rat_str(z.im) + "i";
  std::string s = rat_str(z.re);
  if (z.im > 0) s += "+";
  return s + rat_str(z.im) + "i";
}

RMat RMat::identity(int n) {
  RMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RMat RMat::transpose() const {
  RMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool RMat::is_zero() const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

RMat operator*(const RMat& x, const RMat& y) {
  if (x.cols != y.rows) throw Error("RMat multiply: shape mismatch");
  RMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rational& xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

RMat operator+(const RMat& x, const RMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw Error("RMat add: shape mismatch");
  RMat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

RMat operator-(const RMat& x, const RMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw Error("RMat sub: shape mismatch");
  RMat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

RMat rmat_scale(const Rational& s, const RMat& x) {
  RMat r = x;
  for (auto& v : r.a) v *= s;
  return r;
}

RVec operator*(const RMat& x, const RVec& v) {
  if (x.cols != static_cast<int>(v.size())) throw Error("RMat * RVec: shape mismatch");
  RVec r(x.rows, Rational(0));
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (x.at(i, j) != 0 && v[j] != 0) r[i] += x.at(i, j) * v[j];
  return r;
}

namespace {

// Row echelon reduction; returns pivot columns. Optionally carries b along.
std::vector<int> echelon(RMat& m, RVec* b) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int p = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
      if (b) std::swap((*b)[p], (*b)[row]);
    }
    Rational inv = 1 / m.at(row, col);
    for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    if (b) (*b)[row] *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      Rational f = m.at(i, col);
      if (f == 0) continue;
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
      if (b) (*b)[i] -= f * (*b)[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rmat_rank(RMat m) { return static_cast<int>(echelon(m, nullptr).size()); }

std::optional<RVec> rmat_solve(RMat m, RVec b) {
  if (m.rows != static_cast<int>(b.size())) throw Error("rmat_solve: shape mismatch");
  auto pivots = echelon(m, &b);
  for (int i = static_cast<int>(pivots.size()); i < m.rows; ++i)
    if (b[i] != 0) return std::nullopt;
  RVec x(m.cols, Rational(0));
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = b[k];
  return x;
}

std::optional<RMat> rmat_inverse(const RMat& m) {
  if (m.rows != m.cols) throw Error("rmat_inverse: not square");
  int n = m.rows;
  RMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = echelon(aug, nullptr);
  if (static_cast<int>(pivots.size()) != n) return std::nullopt;
  RMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::optional<RVec> rmat_kernel_vector(RMat m) {
  int cols = m.cols;
  auto pivots = echelon(m, nullptr);
  if (static_cast<int>(pivots.size()) == cols) return std::nullopt;
  // first free column
  int free_col = -1;
  {
    size_t k = 0;
    for (int c = 0; c < cols; ++c) {
      if (k < pivots.size() && pivots[k] == c) {
        ++k;
        continue;
      }
      free_col = c;
      break;
    }
  }
  RVec v(cols, Rational(0));
  v[free_col] = 1;
  for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m.at(static_cast<int>(k), free_col);
  return v;
}

bool rmat_positive_definite(const RMat& m) {
  if (m.rows != m.cols) return false;
  int n = m.rows;
  RMat w = m;
  // symmetric Gaussian elimination: pivots of LDL^T must all be positive
  for (int k = 0; k < n; ++k) {
    if (w.at(k, k) <= 0) return false;
    Rational inv = 1 / w.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      Rational f = w.at(i, k) * inv;
      if (f == 0) continue;
      for (int j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
    }
  }
  return true;
}

CQMat CQMat::identity(int n) {
  CQMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = CQ(Rational(1));
  return m;
}

CQMat CQMat::conj_transpose() const {
  CQMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j).conj();
  return t;
}

bool CQMat::is_zero() const {
  for (const auto& z : a)
    if (!z.is_zero()) return false;
  return true;
}

CQMat operator*(const CQMat& x, const CQMat& y) {
  if (x.cols != y.rows) throw Error("CQMat multiply: shape mismatch");
  CQMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const CQ& xik = x.at(i, k);
      if (xik.is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
    }
  return r;
}

CQMat operator+(const CQMat& x, const CQMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw Error("CQMat add: shape mismatch");
  CQMat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

CQMat operator-(const CQMat& x, const CQMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw Error("CQMat sub: shape mismatch");
  CQMat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

CQMat cqmat_scale(const CQ& s, const CQMat& x) {
  CQMat r = x;
  for (auto& v : r.a) v = s * v;
  return r;
}

CQMat cqmat_kron(const CQMat& x, const CQMat& y) {
  CQMat r(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      if (x.at(i, j).is_zero()) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l)
          r.at(i * y.rows + k, j * y.cols + l) = x.at(i, j) * y.at(k, l);
    }
  return r;
}

Eigen::MatrixXcd to_complex(const CQMat& m) {
  Eigen::MatrixXcd r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      r(i, j) = std::complex<double>(rat_double(m.at(i, j).re), rat_double(m.at(i, j).im));
  return r;
}

Eigen::MatrixXd to_double(const RMat& m) {
  Eigen::MatrixXd r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(i, j) = rat_double(m.at(i, j));
  return r;
}

Eigen::VectorXd to_double(const RVec& v) {
  Eigen::VectorXd r(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) r(static_cast<int>(i)) = rat_double(v[i]);
  return r;
}

}  // namespace carnot
