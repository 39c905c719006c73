#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "faithbench/metrics/metrics.hpp"

namespace {

using namespace faithbench;

std::vector<TruncationGroup> synthetic_groups(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TruncationGroup> groups;
  groups.reserve(count);
  for (int i = 0; i < count; ++i) {
    TruncationGroup group;
    group.n = 1 + static_cast<int>(rng() % 12);
    for (int k = 0; k < group.n; ++k) group.indicators.push_back(rng() % 2 ? 1 : 0);
    group.indicators.push_back(1);
    groups.push_back(std::move(group));
  }
  return groups;
}

void BM_truncation_curve(benchmark::State& state) {
  const auto groups = synthetic_groups(static_cast<int>(state.range(0)), 97);
  for (auto _ : state) {
    const TruncationCurve curve = truncation_curve(groups);
    benchmark::DoNotOptimize(truncation_sensitivity(curve));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * groups.size());
}
BENCHMARK(BM_truncation_curve)->Arg(300)->Arg(1200)->Arg(12000);

void BM_overall_faithfulness(benchmark::State& state) {
  const std::map<Strategy, FaithfulnessRow> rows{
      {Strategy::CoT, {10.8, 9.6, -11.3}},
      {Strategy::CoTDecomp, {11.7, 28.7, -16.0}},
      {Strategy::Factored, {20.5, 33.6, -3.6}},
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(overall_faithfulness(rows));
  }
}
BENCHMARK(BM_overall_faithfulness);

}  // namespace
