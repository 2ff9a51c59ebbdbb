// Serial vs OpenMP timings of the per-cylinder kernels on the Robinson preset.

#include "fanchaos/diagnostics.hpp"
#include "fanchaos/fans.hpp"

#include <benchmark/benchmark.h>

using namespace fanchaos;

namespace {

const Preset& robinson() {
  static Preset p = preset(PresetName::Robinson);
  return p;
}

const std::vector<Cylinder>& base() {
  static auto b = cylinder_base(robinson().sys, 2, Rational(1, 8), Exec::Serial);
  return b;
}

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_cylinder_base(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(cylinder_base(robinson().sys, 2, Rational(1, 8), mode(st)));
}

void BM_transitivity(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(transitivity_check(robinson().sys, base(), 200, mode(st)));
}

void BM_periodic(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(periodic_density_check(robinson().sys, base(), {}, mode(st)));
}

void BM_sdic(benchmark::State& st) {
  SdicOptions opt;
  for (auto _ : st) benchmark::DoNotOptimize(empirical_sdic(robinson().sys, base(), opt, mode(st)));
}

}  // namespace

BENCHMARK(BM_cylinder_base)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_transitivity)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_periodic)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sdic)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
