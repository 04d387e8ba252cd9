#include <carnot/algebra.hpp>
#include <carnot/standard_algebras.hpp>

#include "doctest.h"
#include "support/generators.hpp"

using namespace carnot;
using carnot_test::random_vec;

namespace {

// Independent closed-form BCH oracle up to step 4:
//   z = x + y + 1/2 [x,y] + 1/12 ([x,[x,y]] + [y,[y,x]]) - 1/24 [y,[x,[x,y]]]
RVec bch_closed_form(const GradedLieAlgebra& A, const RVec& x, const RVec& y) {
  RVec z = x;
  for (int i = 0; i < A.dim(); ++i) z[i] += y[i];
  RVec xy = bracket(A, x, y);
  RVec xxy = bracket(A, x, xy);
  RVec yyx = bracket(A, y, bracket(A, y, x));
  RVec yxxy = bracket(A, y, xxy);
  for (int i = 0; i < A.dim(); ++i) {
    z[i] += Rational(1, 2) * xy[i];
    z[i] += Rational(1, 12) * (xxy[i] + yyx[i]);
    z[i] -= Rational(1, 24) * yxxy[i];
  }
  for (auto& q : z) q.canonicalize();
  return z;
}

bool is_zero(const RVec& v) {
  for (const auto& q : v)
    if (q != 0) return false;
  return true;
}

// 6-dim step-3 quotient with a genuinely binding Jacobi relation:
// [X1,X2]=Y1, [X1,X3]=Y2, [Y1,X3]=aZ, [Y2,X2]=bZ. Jacobi forces a = b.
AlgebraInput six_dim_step3(const Rational& a, const Rational& b) {
  AlgebraInput in;
  in.dims = {3, 2, 1};
  in.basis = {"X1", "X2", "X3", "Y1", "Y2", "Z"};
  in.brackets.push_back({0, 1, {{3, Rational(1)}}});
  in.brackets.push_back({0, 2, {{4, Rational(1)}}});
  in.brackets.push_back({3, 2, {{5, a}}});
  in.brackets.push_back({4, 1, {{5, b}}});
  return in;
}

}  // namespace

TEST_CASE("validate: canonical examples") {
  CHECK(h3().validate().ok());
  CHECK(h5().validate().ok());
  CHECK(engel().validate().ok());
  CHECK(free_step3_2gen().validate().ok());

  SUBCASE("antisymmetry violation is reported with its pair") {
    AlgebraInput in;
    in.dims = {2, 1};
    in.basis = {"X", "Y", "Z"};
    in.brackets.push_back({0, 1, {{2, Rational(1)}}});
    in.brackets.push_back({1, 0, {{2, Rational(1)}}});  // should be -Z
    auto rep = validate(in);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].kind == "antisymmetry");
    CHECK(rep.violations[0].witness == std::vector<int>{0, 1});
  }

  SUBCASE("jacobi violation carries a witness triple") {
    CHECK(validate(six_dim_step3(Rational(1), Rational(1))).ok());
    auto rep = validate(six_dim_step3(Rational(1), Rational(2)));
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
      if (v.kind == "jacobi" && v.witness == std::vector<int>{0, 1, 2}) found = true;
    CHECK(found);
  }

  SUBCASE("grading violation") {
    AlgebraInput in;
    in.dims = {2, 1};
    in.brackets.push_back({0, 1, {{0, Rational(1)}}});  // lands in degree 1
    auto rep = validate(in);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].kind == "grading");
  }

  SUBCASE("metric invariants") {
    AlgebraInput in;
    in.dims = {2, 1};
    in.brackets.push_back({0, 1, {{2, Rational(1)}}});
    RMat g = RMat::identity(3);
    g.at(0, 2) = 1;
    g.at(2, 0) = 1;  // couples degrees 1 and 2
    in.inner = g;
    auto rep = validate(in);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].kind == "metric");
  }

  SUBCASE("malformed input throws") {
    AlgebraInput in;
    in.dims = {2, 1};
    in.brackets.push_back({0, 7, {{2, Rational(1)}}});
    CHECK_THROWS_AS(validate(in), Error);
  }
}

TEST_CASE("bracket: definitions and bilinearity") {
  auto A = h3();
  CHECK(bracket(A, basis_vec(A, 0), basis_vec(A, 1)) == basis_vec(A, 2));

  auto E = engel();
  CHECK(bracket(E, basis_vec(E, 0), basis_vec(E, 2)) == basis_vec(E, 3));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    RVec x = random_vec(rng, A);
    CHECK(is_zero(bracket(A, x, x)));
  }

  RVec bad(2, Rational(0));
  CHECK_THROWS_AS(bracket(A, bad, basis_vec(A, 0)), Error);
}

TEST_CASE("bch: frozen values against the closed-form oracle") {
  SUBCASE("step 2 is x + y + [x,y]/2") {
    auto A = h5();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 25; ++i) {
      RVec x = random_vec(rng, A), y = random_vec(rng, A);
      RVec expect = x;
      RVec br = bracket(A, x, y);
      for (int k = 0; k < A.dim(); ++k) expect[k] += y[k] + Rational(1, 2) * br[k];
      CHECK(bch_product(A, x, y) == expect);
    }
  }

  SUBCASE("engel generators: x*y = X1 + X2 + X3/2 + X4/12") {
    auto E = engel();
    RVec x = basis_vec(E, 0), y = basis_vec(E, 1);
    RVec z = bch_product(E, x, y);
    RVec expect(4, Rational(0));
    expect[0] = 1;
    expect[1] = 1;
    expect[2] = Rational(1, 2);
    expect[3] = Rational(1, 12);
    CHECK(z == expect);
    CHECK(z == bch_closed_form(E, x, y));
  }

  SUBCASE("matches the closed form on random inputs, steps 2-4") {
    std::mt19937_64 rng(13);
    auto GB = [](const GradedLieAlgebra& g) { return g; };
    std::vector<GradedLieAlgebra> algs{GB(h3()), GB(h5()), GB(engel()),
                                       GB(free_step3_2gen())};
    for (const auto& A : algs)
      for (int i = 0; i < 25; ++i) {
        RVec x = random_vec(rng, A), y = random_vec(rng, A);
        CHECK(bch_product(A, x, y) == bch_closed_form(A, x, y));
      }
  }

  SUBCASE("group axioms hold exactly") {
    std::mt19937_64 rng(17);
    std::vector<GradedLieAlgebra> algs{h3(), engel(), free_step3_2gen()};
    for (const auto& A : algs) {
      for (int i = 0; i < 15; ++i) {
        RVec x = random_vec(rng, A), y = random_vec(rng, A), z = random_vec(rng, A);
        CHECK(bch_product(A, bch_product(A, x, y), z) ==
              bch_product(A, x, bch_product(A, y, z)));
        RVec minus_x(x.size());
        for (size_t k = 0; k < x.size(); ++k) minus_x[k] = -x[k];
        CHECK(is_zero(bch_product(A, x, minus_x)));
        CHECK(bch_product(A, x, zero_vec(A)) == x);
        CHECK(bch_product(A, zero_vec(A), x) == x);
      }
    }
  }
}

TEST_CASE("dilate: grading action") {
  auto A = h3();
  RVec x = zero_vec(A);
  x[0] = 1;
  x[2] = 1;  // X + Z
  RVec d = dilate(A, Rational(2), x);
  CHECK(d[0] == 2);
  CHECK(d[2] == 4);

  std::mt19937_64 rng(19);
  for (int i = 0; i < 10; ++i) {
    RVec v = random_vec(rng, A);
    CHECK(dilate(A, Rational(1), v) == v);
    CHECK(is_zero(dilate(A, Rational(0), v)));
  }

  SUBCASE("alpha_lambda is a BCH homomorphism and composes multiplicatively") {
    std::mt19937_64 rng2(23);
    std::vector<GradedLieAlgebra> algs{h3(), engel()};
    for (const auto& B : algs)
      for (int i = 0; i < 15; ++i) {
        Rational lam = carnot_test::random_nonzero_rational(rng2);
        Rational mu = carnot_test::random_nonzero_rational(rng2);
        RVec x = random_vec(rng2, B), y = random_vec(rng2, B);
        CHECK(dilate(B, lam, bch_product(B, x, y)) ==
              bch_product(B, dilate(B, lam, x), dilate(B, lam, y)));
        CHECK(dilate(B, lam, dilate(B, mu, x)) == dilate(B, lam * mu, x));
      }
  }
}

TEST_CASE("Ad and coAd") {
  auto A = h3();
  SUBCASE("h3: Ad(exp Y) X = X - Z") {
    RVec g = basis_vec(A, 1);
    RMat ad = Ad(A, g);
    RVec img = ad * basis_vec(A, 0);
    RVec expect = basis_vec(A, 0);
    expect[2] = -1;
    CHECK(img == expect);
  }
  SUBCASE("identity maps to identity") {
    CHECK(Ad(A, zero_vec(A)) == RMat::identity(3));
  }
  SUBCASE("engel: Ad(exp X1) X2 = X2 + X3 + X4/2, and inverses are exact") {
    auto E = engel();
    RVec img = Ad(E, basis_vec(E, 0)) * basis_vec(E, 1);
    RVec expect = basis_vec(E, 1);
    expect[2] = 1;
    expect[3] = Rational(1, 2);
    CHECK(img == expect);

    std::mt19937_64 rng(29);
    for (int i = 0; i < 10; ++i) {
      RVec g = random_vec(rng, E);
      RVec ginv(g.size());
      for (size_t k = 0; k < g.size(); ++k) ginv[k] = -g[k];
      CHECK(Ad(E, g) * Ad(E, ginv) == RMat::identity(E.dim()));
    }
  }
  SUBCASE("Ad is a group homomorphism preserving brackets") {
    std::mt19937_64 rng(31);
    std::vector<GradedLieAlgebra> algs{h3(), engel(), free_step3_2gen()};
    for (const auto& B : algs)
      for (int i = 0; i < 10; ++i) {
        RVec g = random_vec(rng, B), h = random_vec(rng, B);
        CHECK(Ad(B, bch_product(B, g, h)) == Ad(B, g) * Ad(B, h));
        RVec x = random_vec(rng, B), y = random_vec(rng, B);
        RMat adg = Ad(B, g);
        CHECK(adg * bracket(B, x, y) == bracket(B, adg * x, adg * y));
        CHECK(coAd(B, g) == Ad(B, [&] {
          RVec m(g.size());
          for (size_t k = 0; k < g.size(); ++k) m[k] = -g[k];
          return m;
        }()).transpose());
      }
  }
}

TEST_CASE("dnc_rescale") {
  auto A = h3();
  SUBCASE("t = 1 reproduces the algebra") {
    auto B = dnc_rescale(A, Rational(1));
    CHECK(B.table() == A.table());
  }
  SUBCASE("t = 0 kills every bracket") {
    auto B = dnc_rescale(A, Rational(0));
    CHECK(B.is_abelian());
  }
  SUBCASE("h3 at t = 1/2: [X,Y] = Z/4") {
    auto B = dnc_rescale(A, Rational(1, 2));
    auto br = B.basis_bracket(0, 1);
    REQUIRE(br.size() == 1);
    CHECK(br.at(2) == Rational(1, 4));
  }
  SUBCASE("random t keeps validity; negative t rejected") {
    std::mt19937_64 rng(37);
    std::vector<GradedLieAlgebra> algs{h3(), engel(), free_step3_2gen()};
    for (const auto& B : algs)
      for (int i = 0; i < 8; ++i) {
        Rational t = abs(carnot_test::random_rational(rng));
        CHECK(dnc_rescale(B, t).validate().ok());
      }
    CHECK_THROWS_AS(dnc_rescale(A, Rational(-1)), Error);
  }
}

TEST_CASE("random conjugates validate exactly (jacobi preserved)") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 20; ++i) {
    auto A = carnot_test::random_step_le3(rng);
    CHECK(A.validate().ok());
  }
}
