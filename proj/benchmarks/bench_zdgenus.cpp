#include <benchmark/benchmark.h>

#include "zdgenus/classify.hpp"

using namespace zdgenus;

static void BM_Realize(benchmark::State& state, const char* spec) {
  for (auto _ : state) benchmark::DoNotOptimize(realize(spec).order());
}
BENCHMARK_CAPTURE(BM_Realize, z4_cubic, "Z4[x]/(x^3+x+1)");
BENCHMARK_CAPTURE(BM_Realize, two_variables, "Z2[x,y]/(x^4,x*y,y^2-x^3)");
BENCHMARK_CAPTURE(BM_Realize, product, "Z2 * Z2 * Z7");

static void BM_ZeroDivisorGraph(benchmark::State& state, const char* spec) {
  auto ring = realize(spec);
  for (auto _ : state) benchmark::DoNotOptimize(zero_divisor_graph(ring).size());
}
BENCHMARK_CAPTURE(BM_ZeroDivisorGraph, z3_cubed, "Z3 * Z3 * Z3");
BENCHMARK_CAPTURE(BM_ZeroDivisorGraph, z3_z27, "Z3 * Z27");

static void BM_CanonicalGraph6(benchmark::State& state, const char* spec) {
  auto g = zero_divisor_graph(realize(spec));
  for (auto _ : state) benchmark::DoNotOptimize(export_graph6(g));
}
BENCHMARK_CAPTURE(BM_CanonicalGraph6, z32, "Z32");
BENCHMARK_CAPTURE(BM_CanonicalGraph6, z2_pow4, "Z2 * Z2 * Z2 * Z2");

static void BM_Planarity(benchmark::State& state, const char* spec) {
  auto g = zero_divisor_graph(realize(spec));
  for (auto _ : state) benchmark::DoNotOptimize(is_planar(g));
}
BENCHMARK_CAPTURE(BM_Planarity, planar_z3_z9, "Z3 * Z9");
BENCHMARK_CAPTURE(BM_Planarity, nonplanar_z2_z2_z7, "Z2 * Z2 * Z7");

static void BM_ToroidalSearch(benchmark::State& state, const char* name) {
  Graph g = named_graph(name);
  for (auto _ : state) benchmark::DoNotOptimize(search_embedding(g, 1, 1'000'000).nodes);
}
BENCHMARK_CAPTURE(BM_ToroidalSearch, k7, "K7");
BENCHMARK_CAPTURE(BM_ToroidalSearch, g6, "G6");
BENCHMARK_CAPTURE(BM_ToroidalSearch, k44, "K4,4");

static void BM_Refutation(benchmark::State& state, const char* spec) {
  auto g = zero_divisor_graph(realize(spec));
  GenusOptions opts;
  opts.budget = 100'000'000;
  opts.stop_at_lower = 2;
  for (auto _ : state) benchmark::DoNotOptimize(genus(g, opts).lower);
}
BENCHMARK_CAPTURE(BM_Refutation, z2_z3_z4, "Z2 * Z3 * Z4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Refutation, z2_z16, "Z2 * Z16")->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_VerifyCatalog(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_catalog(1'000'000, 1).failures());
}
BENCHMARK(BM_VerifyCatalog)->Unit(benchmark::kMillisecond);


BENCHMARK_MAIN();
