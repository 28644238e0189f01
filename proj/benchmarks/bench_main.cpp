// Microbenchmarks for the hot paths: exact normal forms, section bases,
// subdivision refinement, and the twist enumeration.

#include <benchmark/benchmark.h>

#include <random>

#include "fixtures.hpp"
#include "logchow/piecewise.hpp"
#include "logchow/twist.hpp"

using namespace logchow;

namespace {

IntegerMatrix random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> entry(-9, 9);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  return m;
}

void bench_smith_normal_form(benchmark::State& state) {
  std::mt19937 rng(1);
  auto m = random_matrix(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto s = smith_normal_form(m);
    benchmark::DoNotOptimize(s.d);
  }
}
BENCHMARK(bench_smith_normal_form)->Arg(4)->Arg(6)->Arg(8);

void bench_pp_basis_barycentric(benchmark::State& state) {
  ConeComplex c = fixtures::from_facets({{"A", "B", "C"}});
  Subdivision sub = barycentric(c);
  for (auto _ : state) {
    auto basis = pp_basis(sub.refined(), static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(basis);
  }
}
BENCHMARK(bench_pp_basis_barycentric)->Arg(1)->Arg(2);

void bench_common_refine(benchmark::State& state) {
  ConeComplex c = fixtures::coordinate_cross();
  Subdivision a = stellar(c, "sigma", LatticeVector{1, 1});
  Subdivision b = stellar(c, "sigma", LatticeVector{1, 2}, true);
  for (auto _ : state) {
    auto cr = common_refine(a, b);
    benchmark::DoNotOptimize(cr.sub);
  }
}
BENCHMARK(bench_common_refine);

void bench_ext_fan_threecycle(benchmark::State& state) {
  TropicalCurve g = fixtures::threecycle();
  Divisor d = fixtures::divisor(g, {2, -1, -1});
  for (auto _ : state) {
    // vary the bound so the per-call caches do not trivialize the loop
    ExtFan fan = ext_fan(TwistProblem{g, {d}, Int(4 + state.iterations() % 7)});
    benchmark::DoNotOptimize(fan);
  }
}
BENCHMARK(bench_ext_fan_threecycle);

}  // namespace

BENCHMARK_MAIN();
