#include <benchmark/benchmark.h>

#include "densitylab/densities.hpp"
#include "densitylab/dsl.hpp"
#include "densitylab/families.hpp"
#include "densitylab/verify.hpp"

namespace {

using namespace densitylab;

SetExpr alternating_blocks() {
  return SetExpr::blocks(IntervalScheme::geometric(2, 1), SetExpr::ap(2, 2));
}

void BM_Membership(benchmark::State& state) {
  SetExpr e = alternating_blocks();
  Int n = 1;
  for (auto _ : state) {
    n += 7919;
    if (n > 1000000) n -= 1000000;
    benchmark::DoNotOptimize(e.contains(n));
  }
}
BENCHMARK(BM_Membership);

void BM_PrefixCountClosedForm(benchmark::State& state) {
  SetExpr e = alternating_blocks();
  const Int n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.count_upto(n));
  }
}
BENCHMARK(BM_PrefixCountClosedForm)->Arg(1000)->Arg(100000)->Arg(10000000);

void BM_PrefixCountScan(benchmark::State& state) {
  SetExpr e = alternating_blocks();
  const long n = state.range(0);
  for (auto _ : state) {
    Int count = 0;
    for (long i = 1; i <= n; ++i) {
      if (e.contains(i)) ++count;
    }
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_PrefixCountScan)->Arg(1000)->Arg(100000);

void BM_RunDecomposition(benchmark::State& state) {
  SetExpr e = SetExpr::diff(SetExpr::shift(alternating_blocks(), 5), alternating_blocks());
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.runs_upto(1000000));
  }
}
BENCHMARK(BM_RunDecomposition);

void BM_BanachEstimate(benchmark::State& state) {
  // A sparse perturbation of a progression: outside every exact route, so the
  // sliding-window estimator does the work.
  SetExpr e = SetExpr::union_of(SetExpr::ap(3, 7), SetExpr::branch_codes(Branch("", "01"), 1));
  ClassicalOptions options;
  options.horizon = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_classical(ClassicalKind::Banach, e, options));
  }
}
BENCHMARK(BM_BanachEstimate)->Arg(1 << 14)->Arg(1 << 16);

void BM_TadPairVerify(benchmark::State& state) {
  std::vector<Branch> branches;
  for (int i = 0; i < 4; ++i) {
    std::string head;
    for (int b = 1; b >= 0; --b) head += ((i >> b) & 1) ? '1' : '0';
    branches.emplace_back(head, "01");
  }
  TadFamily family(IntervalScheme::geometric(2, 1), branches);
  Int k = 0;
  for (auto _ : state) {
    k = (k + 1) % 17;
    benchmark::DoNotOptimize(verify_tad_pair(family, 0, 1, k, 1000000));
  }
}
BENCHMARK(BM_TadPairVerify);

void BM_OmegaEvaluation(benchmark::State& state) {
  auto corpus = default_corpus();
  Partition part = Partition::dyadic();
  IdealOracle pf = IdealOracle::piece_finite();
  std::size_t i = 0;
  for (auto _ : state) {
    i = (i + 1) % corpus.size();
    benchmark::DoNotOptimize(eval_omega_partition(pf, part, corpus[i], 12));
  }
}
BENCHMARK(BM_OmegaEvaluation);

void BM_ParseRoundTrip(benchmark::State& state) {
  std::string text = print_expr(SetExpr::diff(SetExpr::shift(alternating_blocks(), 3),
                                              SetExpr::union_of(SetExpr::ap(1, 3),
                                                                SetExpr::finite({1, 2, 3}))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(print_expr(parse_expr(text)));
  }
}
BENCHMARK(BM_ParseRoundTrip);

}  // namespace

BENCHMARK_MAIN();
