#include <benchmark/benchmark.h>

#include <random>

#include "ewt/corpus.hpp"
#include "ewt/polar.hpp"

using namespace ewt;

namespace {

const char* kThree = "(y^2+x^3)*(y^3+x^4)*((y^3+x^4)^2+x^9)";

void BM_FieldMul(benchmark::State& st) {
  Field F = Field::make(3, static_cast<unsigned>(st.range(0)));
  Elem a = 2, b = F.order() - 1;
  for (auto _ : st) {
    a = F.add(F.mul(a, b), 1);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul)->Arg(1)->Arg(4)->Arg(12);

void BM_FieldInv(benchmark::State& st) {
  Field F = Field::make(3, static_cast<unsigned>(st.range(0)));
  Elem a = 2;
  for (auto _ : st) {
    a = F.add(F.inv(a), 1);
    if (a == 0) a = 1;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldInv)->Arg(1)->Arg(4)->Arg(12);

void BM_Resultant(benchmark::State& st) {
  Field F = Field::make(7);
  BivarPoly f = BivarPoly::parse(F, "(y^3+x^4)^2+x^9"), g = BivarPoly::parse(F, "y^5+x^7*y+x^11");
  for (auto _ : st) benchmark::DoNotOptimize(resultant_y(f, g));
}
BENCHMARK(BM_Resultant);

void BM_BranchDecompose(benchmark::State& st) {
  BivarPoly f = BivarPoly::parse(Field::make(5), kThree);
  for (auto _ : st) benchmark::DoNotOptimize(branch_decompose(f));
}
BENCHMARK(BM_BranchDecompose)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& st) {
  BivarPoly f = BivarPoly::parse(Field::make(5), kThree);
  for (auto _ : st) benchmark::DoNotOptimize(analyze(f));
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& st) {
  PolarAnalysis A = analyze(BivarPoly::parse(Field::make(5), kThree));
  for (auto _ : st) benchmark::DoNotOptimize(verify_decomposition(A));
}
BENCHMARK(BM_Verify)->Unit(benchmark::kMillisecond);

void BM_CorpusInstance(benchmark::State& st) {
  CorpusOptions opt;
  opt.seed = 1;
  CorpusInstance inst = corpus_instance(opt, 0);
  for (auto _ : st) benchmark::DoNotOptimize(check_instance(inst, opt));
}
BENCHMARK(BM_CorpusInstance)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
