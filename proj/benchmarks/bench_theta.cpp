#include <benchmark/benchmark.h>

#include "thetacalc/theta_lift.hpp"
#include "thetacalc/universe.hpp"

namespace {

using namespace thetacalc;

EnhancedParameter running_example() {
  auto env = Environment::default_split();
  const auto& reg = env->chars();
  EnhancedParameter p;
  p.ctx = make_context(env, GroupKind::Mp, 6, reg.trivial(), reg.trivial(), 1, std::nullopt);
  p.phi.add(Atom::chain(reg.trivial(), 2));
  p.phi.add(Atom::chain(reg.trivial(), 4));
  p.eta.signs = {Sign::plus(), Sign::minus()};
  return p;
}

void BM_FirstOccurrence(benchmark::State& state) {
  auto p = running_example();
  for (auto _ : state) benchmark::DoNotOptimize(first_occurrence(p));
}
BENCHMARK(BM_FirstOccurrence);

void BM_TabulateTowers(benchmark::State& state) {
  auto p = running_example();
  for (auto _ : state) benchmark::DoNotOptimize(tabulate_towers(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TabulateTowers)->Arg(13)->Arg(25);

void BM_TwistedEps(benchmark::State& state) {
  auto env = Environment::default_split();
  WDRep phi;
  for (int k = 2; k <= 8; k += 2) phi.add(Atom::chain(env->chars().trivial(), k));
  for (auto _ : state)
    benchmark::DoNotOptimize(twisted_eps(*env, phi, env->chars().trivial(), 8, TwistSide::plus));
}
BENCHMARK(BM_TwistedEps);

void BM_ConservationUniverse(benchmark::State& state) {
  auto env = Environment::default_split();
  int max_dim = static_cast<int>(state.range(0));
  for (auto _ : state) {
    long count = 0;
    for (GroupKind k : kinds_for(*env))
      for_each_parameter(env, k, {max_dim, 8}, [&](const EnhancedParameter& p) {
        auto r = first_occurrence(p);
        count += r.m_down + r.m_up;
      });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_ConservationUniverse)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_LiftUniverse(benchmark::State& state) {
  auto env = Environment::default_split();
  int max_dim = static_cast<int>(state.range(0));
  for (auto _ : state) {
    long count = 0;
    for (GroupKind k : kinds_for(*env))
      for_each_parameter(env, k, {max_dim, 8}, [&](const EnhancedParameter& p) {
        auto r = first_occurrence(p);
        count += static_cast<long>(tabulate_towers(p, r.m_up + 2).size());
      });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_LiftUniverse)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
