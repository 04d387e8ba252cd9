#include <benchmark/benchmark.h>

#include <carnot/algebra.hpp>
#include <carnot/env_op.hpp>
#include <carnot/gbar.hpp>
#include <carnot/index_ops.hpp>
#include <carnot/rep.hpp>
#include <carnot/standard_algebras.hpp>

using namespace carnot;

static void BchEngel(benchmark::State& state) {
  auto A = engel();
  RVec x = basis_vec(A, 0), y = basis_vec(A, 1);
  x[2] = Rational(1, 3);
  y[3] = Rational(2, 5);
  for (auto _ : state) {
    auto z = bch_product(A, x, y);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BchEngel);

static void BchGbarEngel(benchmark::State& state) {
  auto gb = build_gbar(engel());
  RVec x = basis_vec(*gb.bar, 0), y = basis_vec(*gb.bar, 2);
  x[4] = Rational(1, 2);
  for (auto _ : state) {
    auto z = bch_product(*gb.bar, x, y);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BchGbarEngel);

static void PbwMultiply(benchmark::State& state) {
  auto alg = std::make_shared<GradedLieAlgebra>(engel());
  auto X1 = generator_op(alg, 0);
  auto X2 = generator_op(alg, 1);
  auto D = multiply(multiply(X2, X1), multiply(X1, X2));
  for (auto _ : state) {
    auto p = multiply(D, D);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(PbwMultiply);

static void FlattenGbarH3(benchmark::State& state) {
  auto gb = build_gbar(h3());
  RVec ell(gb.bar->dim() - 1, Rational(0));
  ell[0] = Rational(3, 2);
  ell[3] = Rational(-2, 7);
  for (auto _ : state) {
    auto res = flatten_orbit(*gb.bar, ell, Rational(2));
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(FlattenGbarH3);

static void AssembleGammaModel(benchmark::State& state) {
  auto alg = std::make_shared<GradedLieAlgebra>(h3());
  CQMat gamma(1, 1);
  gamma.at(0, 0) = CQ(Rational(1, 2));
  auto D = build_gamma_model(alg, gamma);
  Eigen::VectorXd ell = Eigen::VectorXd::Zero(3);
  ell(2) = 1;
  int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rep = rep_for(alg, ell, N);
    auto M = assemble(D, rep);
    benchmark::DoNotOptimize(M);
  }
}
BENCHMARK(AssembleGammaModel)->Arg(16)->Arg(32)->Arg(64);

static void MinSvScan(benchmark::State& state) {
  auto alg = std::make_shared<GradedLieAlgebra>(h3());
  CQMat gamma(1, 1);
  gamma.at(0, 0) = CQ(Rational(1, 2));
  auto D = build_gamma_model(alg, gamma);
  Eigen::VectorXd ell = Eigen::VectorXd::Zero(3);
  ell(2) = 1;
  int N = static_cast<int>(state.range(0));
  auto rep = rep_for(alg, ell, N);
  auto M = assemble(D, rep);
  for (auto _ : state) {
    auto S = safe_compress(M, rep, 2, 1, 1);
    benchmark::DoNotOptimize(min_singular_value(S));
  }
}
BENCHMARK(MinSvScan)->Arg(16)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
