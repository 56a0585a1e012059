#include <benchmark/benchmark.h>

#include "wcop/probes.hpp"

using namespace wcop;

namespace {

const MoebiusMap kPhi{1.0, 0.0, -1.0, 2.0};

OperatorSpec weighted_exp() {
  return OperatorSpec::weighted(AnalyticExpr::product({AnalyticExpr::exp(AnalyticExpr::z()),
                                                       AnalyticExpr::rational({2.0}, {2.0, -1.0})}),
                                kPhi);
}

void BM_BuildBlock(benchmark::State& st) {
  const OperatorSpec op = weighted_exp();
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(build_block(op, SpaceSpec::hardy(), n, 8 * n));
}
BENCHMARK(BM_BuildBlock)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_CowenWord(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const SpaceSpec sp = SpaceSpec::bergman(0.0);
  const OperatorWord w({Letter::plain(OperatorSpec::toeplitz(AnalyticExpr::power(AnalyticExpr::poly({2.0}), -2.0))),
                        Letter::plain(OperatorSpec::composition(krein_adjoint(kPhi))),
                        Letter::star(OperatorSpec::toeplitz(AnalyticExpr::power(AnalyticExpr::poly({2.0, -1.0}), 2.0)))});
  for (auto _ : st) benchmark::DoNotOptimize(word_block(w, sp, n, 8 * n, {false}));
}
BENCHMARK(BM_CowenWord)->Arg(16)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_QuasinormalDefect(benchmark::State& st) {
  const OperatorSpec op = weighted_exp();
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(quasinormality_defect(op, SpaceSpec::hardy(), n, 320));
}
BENCHMARK(BM_QuasinormalDefect)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_HyponormalityProbe(benchmark::State& st) {
  const OperatorSpec op = weighted_exp();
  for (auto _ : st) benchmark::DoNotOptimize(hyponormality_probe(op, SpaceSpec::hardy(), 16, 160));
}
BENCHMARK(BM_HyponormalityProbe)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
