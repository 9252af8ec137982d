#include <benchmark/benchmark.h>

#include "swdiag/constructions.hpp"
#include "swdiag/treediag.hpp"

using namespace swdiag;

static void BM_EvaluateShannon(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto net = shannon_network(symmetric_spec(SymmetricKind::not_equal_mid, n));
  const Evaluator eval(net, Fault{});
  AssignmentIndex a = 0;
  const AssignmentIndex mask = (AssignmentIndex{1} << n) - 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.at(a));
    a = (a + 1) & mask;
  }
}
BENCHMARK(BM_EvaluateShannon)->Arg(4)->Arg(8)->Arg(16);

static void BM_PathDnfS1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto net = s1_network(n);
  const auto input = Assignment::from_index(0, n);
  for (auto _ : state) benchmark::DoNotOptimize(path_dnf_eval(net, Fault{}, input));
}
BENCHMARK(BM_PathDnfS1)->Arg(4)->Arg(8);

static void BM_TruthTableShannon8(benchmark::State& state) {
  const auto net = shannon_network(symmetric_spec(SymmetricKind::equal_mid, 8));
  TableOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(truth_table(net, Fault{}, opts));
}
BENCHMARK(BM_TruthTableShannon8)->Arg(1);

static void BM_TruthTableShannon16(benchmark::State& state) {
  const auto net = shannon_network(symmetric_spec(SymmetricKind::equal_mid, 16));
  TableOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(truth_table(net, Fault{}, opts));
}
BENCHMARK(BM_TruthTableShannon16)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_ExactTreeS1Full(benchmark::State& state) {
  const auto net = s1_network(2);
  const DiagnosisProblem p{net, FaultType::both(), enumerate_faults(net, FaultType::both())};
  for (auto _ : state) benchmark::DoNotOptimize(build_tree_exact(p));
}
BENCHMARK(BM_ExactTreeS1Full)->Unit(benchmark::kMicrosecond);

static void BM_GreedyTreeS1Full(benchmark::State& state) {
  const auto net = s1_network(3);
  const DiagnosisProblem p{net, FaultType::zero(), enumerate_faults(net, FaultType::zero())};
  for (auto _ : state) benchmark::DoNotOptimize(build_tree_greedy(p));
}
BENCHMARK(BM_GreedyTreeS1Full)->Unit(benchmark::kMicrosecond);

static void BM_VcReduction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  edges.emplace_back(1, n);
  const VcInstance inst(SimpleGraph(n, edges), n / 2);
  const auto variant = state.range(1) == 1 ? ReductionVariant::q1 : ReductionVariant::q2;
  for (auto _ : state) benchmark::DoNotOptimize(vc_reduction_decide(inst, variant));
}
BENCHMARK(BM_VcReduction)->Args({6, 1})->Args({6, 2})->Args({10, 1})->Unit(benchmark::kMicrosecond);

static void BM_ConjunctionFamilyCheck(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_verify(n, FaultType::zero()));
}
BENCHMARK(BM_ConjunctionFamilyCheck)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
