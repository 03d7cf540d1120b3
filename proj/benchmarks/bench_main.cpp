#include <benchmark/benchmark.h>

#include "pathplan/characterize.hpp"
#include "pathplan/engine.hpp"
#include "pathplan/evaluate.hpp"
#include "pathplan/oracle.hpp"
#include "pathplan/synth.hpp"

using namespace pathplan;

namespace {

Catalog fig1() {
  return Catalog({{"getCompany", parse_skeleton("worksFor"), {1}},
                  {"getHierarchy", parse_skeleton("worksFor^-.jobTitle"), {1, 2}},
                  {"getEducation", parse_skeleton("graduatedFrom"), {1}}});
}

Catalog synth(int relations, int functions, std::uint64_t seed = 7) {
  SynthConfig sc;
  sc.relations = relations;
  sc.functions = functions;
  sc.seed = seed;
  return gen_catalog(sc);
}

void BM_EnumerateSmartFig1(benchmark::State& st) {
  Catalog c = fig1();
  AtomicQuery q = parse_query("jobTitle");
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_minimal_smart(q, c));
}
BENCHMARK(BM_EnumerateSmartFig1);

// one query per relation orientation, as in the sweep
void BM_FindOneWeak(benchmark::State& st) {
  Catalog c = synth(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  auto rels = relation_names(static_cast<int>(st.range(0)));
  std::size_t i = 0;
  for (auto _ : st) {
    AtomicQuery q{Atom{rels[i % rels.size()], (i / rels.size()) % 2 == 1}, "a"};
    benchmark::DoNotOptimize(find_one_weakly_smart(q, c));
    ++i;
  }
}
BENCHMARK(BM_FindOneWeak)->Args({4, 30})->Args({10, 30})->Args({20, 30})->Args({10, 40});

void BM_FindOneSmart(benchmark::State& st) {
  Catalog c = synth(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  auto rels = relation_names(static_cast<int>(st.range(0)));
  std::size_t i = 0;
  for (auto _ : st) {
    AtomicQuery q{Atom{rels[i % rels.size()], (i / rels.size()) % 2 == 1}, "a"};
    benchmark::DoNotOptimize(find_one_smart(q, c));
    ++i;
  }
}
BENCHMARK(BM_FindOneSmart)->Args({4, 30})->Args({10, 30})->Args({20, 30});

void BM_EnumerateWeak(benchmark::State& st) {
  Catalog c = synth(4, static_cast<int>(st.range(0)), 11);
  AtomicQuery q = parse_query("r0");
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_minimal_weakly_smart(q, c));
}
BENCHMARK(BM_EnumerateWeak)->Arg(5)->Arg(10)->Arg(20);

void BM_IsSmart(benchmark::State& st) {
  Catalog c = fig1();
  AtomicQuery q = parse_query("jobTitle");
  ExecutionPlan p = chain_plan({c.find("getCompany"), c.find("getHierarchy")}, "a");
  p.filters.push_back({p.calls[1].outputs[0], "a"});
  for (auto _ : st) benchmark::DoNotOptimize(is_smart(p, q, c));
}
BENCHMARK(BM_IsSmart);

void BM_OracleSmart(benchmark::State& st) {
  Catalog c = fig1();
  AtomicQuery q = parse_query("jobTitle");
  ExecutionPlan p = chain_plan({c.find("getCompany"), c.find("getHierarchy")}, "a");
  p.filters.push_back({p.calls[1].outputs[0], "a"});
  for (auto _ : st) benchmark::DoNotOptimize(oracle_is_smart(p, q, c));
}
BENCHMARK(BM_OracleSmart)->Unit(benchmark::kMillisecond);

void BM_AnsweredFractions(benchmark::State& st) {
  Catalog c = synth(static_cast<int>(st.range(0)), 30);
  auto rels = relation_names(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(answered_fractions(c, rels, all_approaches()));
}
BENCHMARK(BM_AnsweredFractions)->Arg(4)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
