#include <benchmark/benchmark.h>

#include <random>

#include "lqf/calculus.hpp"
#include "lqf/filters.hpp"
#include "lqf/matrix.hpp"
#include "lqf/model_search.hpp"

using namespace lqf;

static void BM_HoldsOrthomodularLaw(benchmark::State& state) {
  const auto& l = catalog()[static_cast<std::size_t>(state.range(0))].lattice;
  const Equation eq = parse_equation("x | (~x & (x | y)) = x | y");
  for (auto _ : state) benchmark::DoNotOptimize(holds(l, eq).holds);
  state.SetLabel(catalog()[static_cast<std::size_t>(state.range(0))].name);
}
BENCHMARK(BM_HoldsOrthomodularLaw)->DenseRange(0, 14, 2);

static void BM_Decide2(benchmark::State& state) {
  free_algebra2();
  const Equation eq = parse_equation("x & (y | ~x) = x & y");
  for (auto _ : state) benchmark::DoNotOptimize(decide2(eq).valid);
}
BENCHMARK(BM_Decide2);

static void BM_EdCongruences(benchmark::State& state) {
  const auto& l = catalog()[static_cast<std::size_t>(state.range(0))].lattice;
  for (auto _ : state) benchmark::DoNotOptimize(ed_congruences(l).size());
  state.SetLabel(catalog()[static_cast<std::size_t>(state.range(0))].name);
}
BENCHMARK(BM_EdCongruences)->Arg(5)->Arg(8)->Arg(11)->Arg(14);

static void BM_CheckLqfRandom(benchmark::State& state) {
  const auto& l = find_catalog("MO3")->lattice;
  std::mt19937_64 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(check_lqf_axioms(random_structure(l, rng)).failing_number);
}
BENCHMARK(BM_CheckLqfRandom);

static void BM_FragmentCheck(benchmark::State& state) {
  const auto f = derived_rule("COR-2", {}, {{"t", parse_term("(x & ~y) | z")}});
  for (auto _ : state) benchmark::DoNotOptimize(check_fragment(f, {}).ok);
  state.counters["steps"] = static_cast<double>(f.steps.size());
}
BENCHMARK(BM_FragmentCheck);

static void BM_PartialIsometry(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  RationalMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = Rational(static_cast<int>(rng() % 5) - 2, 1 + static_cast<int>(rng() % 3));
  for (auto _ : state) benchmark::DoNotOptimize(is_partial_isometry(w).verdict());
}
BENCHMARK(BM_PartialIsometry)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK_MAIN();
