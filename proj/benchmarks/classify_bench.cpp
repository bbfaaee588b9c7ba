#include <benchmark/benchmark.h>

#include "mergeprobe/analyzer.hpp"

namespace {

using mergeprobe::OutcomeVector;
using mergeprobe::TestOutcome;
using mergeprobe::VersionId;

OutcomeVector vector_from_index(int idx) {
  static const TestOutcome kOutcomes[] = {TestOutcome::Pass, TestOutcome::Fail,
                                          TestOutcome::Error};
  OutcomeVector v;
  v.stable = true;
  int x = idx;
  for (VersionId version : mergeprobe::kAllVersions) {
    v.outcomes[version] = kOutcomes[x % 3];
    x /= 3;
  }
  return v;
}

void BM_ClassifyOutcomeVector(benchmark::State& state) {
  // All 81 three-valued vectors, classified round-robin.
  std::vector<OutcomeVector> vectors;
  for (int i = 0; i < 81; ++i) vectors.push_back(vector_from_index(i));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mergeprobe::classify_outcome_vector(vectors[i % vectors.size()]));
    ++i;
  }
}
BENCHMARK(BM_ClassifyOutcomeVector);

void BM_AggregateScenarioVerdict(benchmark::State& state) {
  std::vector<mergeprobe::ConflictWitness> witnesses;
  for (int i = 0; i < 81; ++i) {
    OutcomeVector v = vector_from_index(i);
    mergeprobe::ConflictWitness w;
    w.artifact_file = "Test_" + std::to_string(i) + ".java";
    w.variant_id = 1 + i % 8;
    w.signal = mergeprobe::classify_outcome_vector(v);
    w.outcomes = v.outcomes;
    witnesses.push_back(std::move(w));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mergeprobe::aggregate_scenario_verdict("bench", witnesses));
  }
}
BENCHMARK(BM_AggregateScenarioVerdict);

}  // namespace

BENCHMARK_MAIN();
