#include "carnot/standard_algebras.hpp"

#include <fmt/format.h>

namespace carnot {

GradedLieAlgebra abelian(int d) {
  AlgebraInput in;
  in.dims = {d};
  return GradedLieAlgebra::build(std::move(in));
}

GradedLieAlgebra heisenberg(int d) {
  AlgebraInput in;
  in.dims = {2 * d, 1};
  if (d == 1) {
    in.basis = {"X", "Y", "Z"};
  } else {
    for (int a = 1; a <= d; ++a) in.basis.push_back(fmt::format("X{}", a));
    for (int a = 1; a <= d; ++a) in.basis.push_back(fmt::format("Y{}", a));
    in.basis.push_back("Z");
  }
  for (int a = 0; a < d; ++a)
    in.brackets.push_back({a, d + a, {{2 * d, Rational(1)}}});
  return GradedLieAlgebra::build(std::move(in));
}

GradedLieAlgebra engel() {
  AlgebraInput in;
  in.dims = {2, 1, 1};
  in.basis = {"X1", "X2", "X3", "X4"};
  in.brackets.push_back({0, 1, {{2, Rational(1)}}});
  in.brackets.push_back({0, 2, {{3, Rational(1)}}});
  return GradedLieAlgebra::build(std::move(in));
}

GradedLieAlgebra free_step3_2gen() {
  AlgebraInput in;
  in.dims = {2, 1, 2};
  in.basis = {"X1", "X2", "X3", "X4", "X5"};
  in.brackets.push_back({0, 1, {{2, Rational(1)}}});
  in.brackets.push_back({0, 2, {{3, Rational(1)}}});
  in.brackets.push_back({1, 2, {{4, Rational(1)}}});
  return GradedLieAlgebra::build(std::move(in));
}

GradedLieAlgebra heisenberg_type(const std::vector<Rational>& lambdas, int kernel_dims) {
  int n = static_cast<int>(lambdas.size());
  int d1 = 2 * n + kernel_dims;
  AlgebraInput in;
  in.dims = {d1, 1};
  for (int a = 1; a <= n; ++a) in.basis.push_back(fmt::format("X{}", a));
  for (int a = 1; a <= n; ++a) in.basis.push_back(fmt::format("Y{}", a));
  for (int a = 1; a <= kernel_dims; ++a) in.basis.push_back(fmt::format("K{}", a));
  in.basis.push_back("T");
  for (int a = 0; a < n; ++a)
    in.brackets.push_back({a, n + a, {{d1, lambdas[a]}}});
  return GradedLieAlgebra::build(std::move(in));
}

}  // namespace carnot
