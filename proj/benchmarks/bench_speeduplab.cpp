#include <benchmark/benchmark.h>

#include "speeduplab/analysis.hpp"
#include "speeduplab/odometer.hpp"
#include "speeduplab/speedup.hpp"

namespace {

using namespace speeduplab;

Substitution ex44_theta() { return Substitution({{0, 0, 0, 1, 1}, {0, 0, 1}}); }

JumpFunction ex44_jump() {
  const std::vector<CylinderRule> rules{{0, {0, 0, 0, 1, 1}, 3}, {-1, {0, 0, 0, 1, 1}, 1}};
  return JumpFunction::from_rules(ex44_theta(), rules, 2);
}

void BM_Language(benchmark::State& state) {
  const Substitution theta = ex44_theta();
  for (auto _ : state) benchmark::DoNotOptimize(language(theta, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Language)->Arg(10)->Arg(40)->Arg(160);

void BM_SpeedupWalk(benchmark::State& state) {
  const Substitution theta = ex44_theta();
  const JumpFunction p = ex44_jump();
  for (auto _ : state) {
    benchmark::DoNotOptimize(speedup_walk(theta, p, 0, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_SpeedupWalk)->Arg(1000)->Arg(100000);

void BM_OrbitNumber(benchmark::State& state) {
  const Substitution theta = ex44_theta();
  const JumpFunction p = ex44_jump();
  for (auto _ : state) {
    benchmark::DoNotOptimize(orbit_number(theta, p, 0, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_OrbitNumber)->Arg(4000)->Arg(64000);

void BM_AnalyzeSpeedup(benchmark::State& state) {
  const Substitution theta = ex44_theta();
  const JumpFunction p = ex44_jump();
  for (auto _ : state) benchmark::DoNotOptimize(analyze_speedup(theta, p));
}
BENCHMARK(BM_AnalyzeSpeedup);

void BM_OdometerSweep(benchmark::State& state) {
  const OdometerSpec alpha{{}, {6}};
  for (auto _ : state) {
    std::size_t minimal = 0;
    std::vector<std::uint32_t> q(6, 1);
    for (;;) {
      if (check_jump_function(alpha, OdometerJumpSpec{1, q}).minimal) ++minimal;
      std::size_t i = 0;
      while (i < q.size() && q[i] == 4) q[i++] = 1;
      if (i == q.size()) break;
      ++q[i];
    }
    benchmark::DoNotOptimize(minimal);
  }
}
BENCHMARK(BM_OdometerSweep);

void BM_Exammeas(benchmark::State& state) {
  const std::vector<std::uint64_t> n{10, 20, 40};
  for (auto _ : state) benchmark::DoNotOptimize(exammeas_check(exammeas_build(n, 4), 4));
}
BENCHMARK(BM_Exammeas);

}  // namespace

BENCHMARK_MAIN();
