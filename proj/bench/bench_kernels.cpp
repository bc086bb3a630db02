// Serial reference kernels against their OpenMP counterparts.
//
//   qsr_bench --benchmark_filter=Sample
//   OMP_NUM_THREADS=8 qsr_bench

#include <benchmark/benchmark.h>
#include <omp.h>

#include "qsr/composition.hpp"

using namespace qsr;

namespace {

CalculusId id_of(std::int64_t v) { return static_cast<CalculusId>(v); }

template <CompositionTable (*Generate)(CalculusId, Granularity, const SamplingPlan&,
                                       const TolerancePolicy&)>
void BM_Sample(benchmark::State& state) {
  const CalculusId id = id_of(state.range(0));
  const Granularity m(static_cast<int>(state.range(1)));
  SamplingPlan plan;
  plan.density = static_cast<int>(state.range(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Generate(id, m, plan, TolerancePolicy{}).raw_words().data());
  }
  state.counters["threads"] = omp_get_max_threads();
  state.SetLabel(std::string(calculus_name(id)) + "-" + std::to_string(m.value()));
}

template <VerificationReport (*Verify)(const CompositionTable&, std::uint64_t, std::uint64_t)>
void BM_Verify(benchmark::State& state) {
  const CalculusId id = id_of(state.range(0));
  static const CompositionTable opra =
      compose_tablegen(CalculusId::Opra, Granularity(2), SamplingPlan{});
  static const CompositionTable estar =
      compose_tablegen(CalculusId::Estar, Granularity(2), SamplingPlan{});
  const CompositionTable& table = id == CalculusId::Opra ? opra : estar;
  const auto trials = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Verify(table, trials, 42).violations.size());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
  state.counters["threads"] = omp_get_max_threads();
  state.SetLabel(std::string(calculus_name(id)) + "-2");
}

constexpr auto kOpra = static_cast<std::int64_t>(CalculusId::Opra);
constexpr auto kEopra = static_cast<std::int64_t>(CalculusId::Eopra);
constexpr auto kEstar = static_cast<std::int64_t>(CalculusId::Estar);

void sample_args(benchmark::internal::Benchmark* b) {
  b->Args({kOpra, 2, 3})->Args({kOpra, 3, 3})->Args({kEstar, 2, 3})->Args({kEopra, 1, 3});
  b->Unit(benchmark::kMillisecond);
}

void verify_args(benchmark::internal::Benchmark* b) {
  b->Args({kOpra, 100000})->Args({kEstar, 100000})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_Sample<sample_table_serial>)->Name("SampleSerial")->Apply(sample_args);
BENCHMARK(BM_Sample<sample_table>)->Name("SampleParallel")->Apply(sample_args);
BENCHMARK(BM_Verify<verify_table_serial>)->Name("VerifySerial")->Apply(verify_args);
BENCHMARK(BM_Verify<verify_table>)->Name("VerifyParallel")->Apply(verify_args);

BENCHMARK_MAIN();
