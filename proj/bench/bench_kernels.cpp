// Serial reference vs OpenMP paths for the three parallel kernels:
// obligation suites, certificate step checks and mutation sweeps.
#include <benchmark/benchmark.h>

#include "twogen/certificate.hpp"
#include "twogen/relations.hpp"

using namespace twogen;

namespace {

const SurfaceModel& model() {
  static const SurfaceModel m = build_surface({3, 7});
  return m;
}

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_Atlas(benchmark::State& st) {
  RunOptions opt;
  opt.exec = exec_of(st);
  for (auto _ : st) {
    auto r = validate_atlas(model(), opt);
    if (!r.ok()) st.SkipWithError("atlas failed");
    benchmark::DoNotOptimize(r);
  }
}

void BM_ActionTable(benchmark::State& st) {
  RunOptions opt;
  opt.exec = exec_of(st);
  for (auto _ : st) {
    auto r = check_action_table(model(), opt);
    benchmark::DoNotOptimize(r);
  }
}

void BM_VerifyThm42(benchmark::State& st) {
  VerifyOptions opt;
  opt.exec = exec_of(st);
  const Certificate base = build_thm42(model());
  for (auto _ : st) {
    Certificate c = base;
    verify(c, model(), opt);
    if (!c.verified()) st.SkipWithError("thm42 failed");
    benchmark::DoNotOptimize(c);
  }
}

void BM_Mutations(benchmark::State& st) {
  VerifyOptions opt;
  opt.exec = exec_of(st);
  static const Certificate c = derive_lemma41(model());
  for (auto _ : st) {
    auto mu = mutation_controls(c, model(), 1, 32, opt);
    benchmark::DoNotOptimize(mu);
  }
}

}  // namespace

// Arg 0 is the serial reference, 1 the OpenMP path.
BENCHMARK(BM_Atlas)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ActionTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyThm42)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mutations)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
