#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "carnot/exact_linalg.hpp"

namespace carnot {

// Sparse algebra vector keyed by basis index.
using SparseVec = std::map<int, Rational>;

// Raw (possibly redundant) algebra description, as read from a file or
// assembled by hand. validate() inspects this form; GradedLieAlgebra::build
// canonicalizes it.
struct AlgebraInput {
  std::vector<int> dims;               // per-degree dimensions d_1..d_n
  std::vector<std::string> basis;      // optional names, defaults e1..eD
  struct Entry {
    int i = 0, j = 0;
    SparseVec value;
  };
  std::vector<Entry> brackets;
  std::optional<RMat> inner;           // default: identity
};

struct Violation {
  std::string kind;          // antisymmetry | grading | jacobi | metric | malformed
  std::vector<int> witness;  // basis indices involved
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const AlgebraInput& in);

class GradedLieAlgebra {
 public:
  // Structural canonicalization; throws Error on malformed input (bad
  // dimensions, out-of-range indices, inconsistent duplicate entries).
  // Mathematical invariants are checked by validate().
  static GradedLieAlgebra build(AlgebraInput in);

  int dim() const { return dim_; }
  int step() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int degree(int idx) const { return degree_[idx]; }
  // first basis index of a degree block (deg is 1-based)
  int degree_offset(int deg) const { return offsets_[deg - 1]; }
  const std::vector<std::string>& basis() const { return names_; }
  const std::string& name(int idx) const { return names_[idx]; }
  int index_of(const std::string& name) const;
  const RMat& inner() const { return inner_; }
  bool inner_is_identity() const;
  bool is_abelian() const;

  // [e_i, e_j] as a sparse vector (any index order).
  SparseVec basis_bracket(int i, int j) const;
  const std::map<std::pair<int, int>, SparseVec>& table() const { return c_; }

  ValidationReport validate() const;

 private:
  int dim_ = 0;
  std::vector<int> dims_;
  std::vector<int> degree_;
  std::vector<int> offsets_;
  std::vector<std::string> names_;
  std::map<std::pair<int, int>, SparseVec> c_;  // canonical i < j
  RMat inner_;
};

using AlgebraPtr = std::shared_ptr<const GradedLieAlgebra>;

// ---- lie-core operations (exact) ----

RVec bracket(const GradedLieAlgebra& A, const RVec& x, const RVec& y);

// Group product in exponential coordinates: truncated Dynkin series.
RVec bch_product(const GradedLieAlgebra& A, const RVec& x, const RVec& y);

// alpha_lambda: scales the degree-i component by lambda^i.
RVec dilate(const GradedLieAlgebra& A, const Rational& lambda, const RVec& x);

RMat ad_matrix(const GradedLieAlgebra& A, const RVec& x);
// Ad(exp x) = exp(ad_x); exact because ad_x is nilpotent.
RMat Ad(const GradedLieAlgebra& A, const RVec& g);
// coAd(g) = Ad(g^{-1})^T acting on dual coordinates.
RMat coAd(const GradedLieAlgebra& A, const RVec& g);

// Same graded space, bracket alpha_t([.,.]): the structure constant into
// degree k picks up t^k. t = 1 is the identity, t = 0 the graded abelianization.
GradedLieAlgebra dnc_rescale(const GradedLieAlgebra& A, const Rational& t);

RVec zero_vec(const GradedLieAlgebra& A);
RVec basis_vec(const GradedLieAlgebra& A, int idx);

}  // namespace carnot
