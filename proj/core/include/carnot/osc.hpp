#pragma once

#include <map>
#include <string>
#include <vector>

#include "carnot/algebra.hpp"
#include "carnot/env_op.hpp"

namespace carnot {

using MultiIndex = std::vector<int>;  // exponent per chart coordinate

// Multivariate polynomial over Q.
struct Polynomial {
  int dim = 0;
  std::map<MultiIndex, Rational> terms;

  static Polynomial zero(int dim) { return {dim, {}}; }
  static Polynomial constant(int dim, const Rational& c);
  static Polynomial monomial(int dim, const MultiIndex& m, const Rational& c);

  bool is_zero() const { return terms.empty(); }
  Rational eval(const RVec& x) const;
  Polynomial partial(int i) const;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Rational& s, const Polynomial& a);
bool operator==(const Polynomial& a, const Polynomial& b);

// Vector field with polynomial coefficients: sum_i comp[i] * d/dx_i.
struct PolyVectorField {
  int dim = 0;
  std::vector<Polynomial> comp;

  static PolyVectorField zero(int dim);
  // d/dx_i
  static PolyVectorField coordinate(int dim, int i);
  RVec eval(const RVec& x) const;
  // X applied to a function (derivation).
  Polynomial apply(const Polynomial& f) const;
  Polynomial divergence() const;
};

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
PolyVectorField vf_scale(const Rational& s, const PolyVectorField& a);
PolyVectorField vf_scale(const Polynomial& s, const PolyVectorField& a);
bool operator==(const PolyVectorField& a, const PolyVectorField& b);

// [X, Y] = X(Y) - Y(X), exact.
PolyVectorField vf_bracket(const PolyVectorField& x, const PolyVectorField& y);

struct FiltrationSpec {
  int dim = 0;
  struct Frame {
    int weight = 1;
    PolyVectorField field;
  };
  std::vector<Frame> frames;

  int max_weight() const;
  // declared rank of H^i = number of frames of weight <= i
  int declared_rank(int i) const;
};

struct FiltrationReport {
  struct Item {
    std::string kind;  // rank | bracket
    RVec point;
    int fi = -1, fj = -1;  // frame indices for bracket violations
    std::string detail;
  };
  std::vector<Item> violations;
  bool ok() const { return violations.empty(); }
};

// Verifies, at each sample point, that the frames attain their declared ranks
// and that every frame-pair bracket lies in the span of the weight-(i+j)
// frames. Exact membership solves over Q.
FiltrationReport check_filtration(const FiltrationSpec& spec,
                                  const std::vector<RVec>& points);

struct OsculatingAlgebra {
  AlgebraPtr algebra;
  RVec point;
  // chosen graded basis: value at the point and the constant frame
  // combination that realizes it as a section
  std::vector<RVec> basis_vectors;
  std::vector<RVec> section_coeffs;  // over frames
  std::vector<int> basis_weight;
};

// The graded quotient algebra at x with the induced bracket; output passes
// validate (Jacobi inherited from vector fields).
OsculatingAlgebra osculating_algebra(const FiltrationSpec& spec, const RVec& x);

struct SymbolInfo {
  int order = 0;
  EnvelopingOperator symbol;  // principal part in U(g_x)
};

// Order (= sum of weights) and principal symbol of the composite operator
// frame_word[0] ∘ frame_word[1] ∘ ... in the osculating enveloping algebra.
SymbolInfo filtration_order(const FiltrationSpec& spec, const OsculatingAlgebra& osc,
                            const std::vector<int>& frame_word);

// Vector-field file format (JSON):
// { "dim": d, "frames": [ {"weight": w,
//     "components": [ [ {"monomial":[e1..ed], "coeff":"p/q"}, ... ], ... ] } ] }
// (one component array per chart coordinate)
FiltrationSpec parse_filtration_json(const std::string& text);
FiltrationSpec load_filtration_file(const std::string& path);

}  // namespace carnot
