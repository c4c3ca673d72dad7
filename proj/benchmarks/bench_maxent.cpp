#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "maxent/baseline/baseline.hpp"
#include "maxent/groebner/buchberger.hpp"
#include "maxent/groebner/sturm.hpp"
#include "maxent/kc/kc.hpp"
#include "maxent/model/estimate.hpp"
#include "maxent/model/systems.hpp"
#include "maxent/model/toric.hpp"

using namespace maxent;
using me::MaxEntProblem;
using num::Rational;

namespace {

MaxEntProblem die() { return MaxEntProblem::with_targets(6, {{1, 2, 3, 4, 5, 6}}, {Rational(9, 2)}); }

// Two constraints on six outcomes, interior targets.
MaxEntProblem two_constraints() {
  return MaxEntProblem::with_targets(6, {{0, 1, 2, 0, 1, 2}, {0, 0, 0, 1, 1, 1}},
                                     {Rational(5, 4), Rational(1, 3)});
}

void BM_EstimateDirectDie(benchmark::State& state) {
  const auto p = die();
  for (auto _ : state) benchmark::DoNotOptimize(me::estimate(p, me::Method::direct));
}
BENCHMARK(BM_EstimateDirectDie)->Unit(benchmark::kMillisecond);

void BM_EstimateDirectTwoConstraints(benchmark::State& state) {
  const auto p = two_constraints();
  for (auto _ : state) benchmark::DoNotOptimize(me::estimate(p, me::Method::direct));
}
BENCHMARK(BM_EstimateDirectTwoConstraints)->Unit(benchmark::kMillisecond);

void BM_BuchbergerGrevlex(benchmark::State& state) {
  const auto eqs = me::build_direct_system(two_constraints()).equations;
  const auto order = poly::MonomialOrder::grevlex(2);
  for (auto _ : state) benchmark::DoNotOptimize(gb::buchberger(eqs, order));
}
BENCHMARK(BM_BuchbergerGrevlex)->Unit(benchmark::kMillisecond);

void BM_SturmIsolate(benchmark::State& state) {
  // (x - 1)(x - 2)(x + 3)(x^2 - 2)(2x - 1), degree 6
  const gb::UniPoly u(std::vector<Rational>{Rational(12), Rational(-38), Rational(22), Rational(21),
                                            Rational(-18), Rational(-1), Rational(2)});
  for (auto _ : state) benchmark::DoNotOptimize(gb::sturm_isolate(u, gb::RootDomain::all_reals));
}
BENCHMARK(BM_SturmIsolate)->Unit(benchmark::kMicrosecond);

void BM_ToricIdeal2x2(benchmark::State& state) {
  const me::ToricSpec spec{{{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}}, {}};
  for (auto _ : state) benchmark::DoNotOptimize(me::toric_ideal(spec));
}
BENCHMARK(BM_ToricIdeal2x2)->Unit(benchmark::kMillisecond);

void BM_KcRun(benchmark::State& state) {
  const auto p = two_constraints();
  for (auto _ : state) benchmark::DoNotOptimize(kc::kc_run(p));
}
BENCHMARK(BM_KcRun)->Unit(benchmark::kMicrosecond);

void BM_NewtonDual(benchmark::State& state) {
  const auto p = two_constraints();
  for (auto _ : state) benchmark::DoNotOptimize(baseline::newton_dual(p));
}
BENCHMARK(BM_NewtonDual)->Unit(benchmark::kMicrosecond);

void BM_Gis(benchmark::State& state) {
  const auto p = two_constraints();
  for (auto _ : state) benchmark::DoNotOptimize(baseline::gis(p));
}
BENCHMARK(BM_Gis)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
