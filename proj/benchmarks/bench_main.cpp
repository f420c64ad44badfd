#include <benchmark/benchmark.h>

#include "ielc/gen.hpp"
#include "ielc/hilbert.hpp"
#include "ielc/kripke.hpp"
#include "ielc/parser.hpp"
#include "ielc/printer.hpp"
#include "ielc/rewrite.hpp"
#include "ielc/stlc.hpp"
#include "ielc/typecheck.hpp"

using namespace ielc;

namespace {

const char* kKWitness =
    "\\f:[](p->q). \\a:[]p. box [g:p->q = f, x:p = a] in g x";

void BM_ParseTerm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_term(kKWitness));
}
BENCHMARK(BM_ParseTerm);

void BM_Infer(benchmark::State& state) {
  TermPtr t = parse_term(kKWitness);
  for (auto _ : state) benchmark::DoNotOptimize(infer(Context{}, t));
}
BENCHMARK(BM_Infer);

void BM_NormalizeCorpusTerm(benchmark::State& state) {
  std::vector<TermPtr> corpus = gen_corpus(20240901, 64);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize(corpus[i % corpus.size()]));
    ++i;
  }
}
BENCHMARK(BM_NormalizeCorpusTerm);

void BM_EraseAndOracleNormalize(benchmark::State& state) {
  TermPtr t = parse_term(kKWitness);
  for (auto _ : state) {
    StlcTermPtr e = erase_term(t);
    benchmark::DoNotOptimize(stlc_normalize(e));
  }
}
BENCHMARK(BM_EraseAndOracleNormalize);

void BM_CountermodelReflection(benchmark::State& state) {
  FormulaPtr f = parse_formula("[]p -> p");
  for (auto _ : state)
    benchmark::DoNotOptimize(countermodel_search(f, 3));
}
BENCHMARK(BM_CountermodelReflection);

void BM_NdToHilbertKWitness(benchmark::State& state) {
  TermPtr t = parse_term(kKWitness);
  for (auto _ : state)
    benchmark::DoNotOptimize(nd_to_hilbert(t, Context{}));
}
BENCHMARK(BM_NdToHilbertKWitness);

}  // namespace

BENCHMARK_MAIN();
