// Serial vs OpenMP kernels, plus the validator on growing inputs.

#include <map>

#include <benchmark/benchmark.h>

#include "eod/bench.hpp"
#include "eod/oracle.hpp"

namespace {

using namespace eod;

const SyntheticData& dataset(std::size_t rows) {
    static std::map<std::size_t, SyntheticData> cache;
    auto it = cache.find(rows);
    if (it == cache.end()) {
        SyntheticConfig cfg;
        cfg.rows = rows;
        cfg.attributes = 10;
        cfg.null_rate = 0.1;
        cfg.swap_pairs = rows / 100;
        cfg.merge_pairs = rows / 100;
        it = cache.emplace(rows, gen_synthetic(cfg)).first;
    }
    return it->second;
}

void presence(benchmark::State& state, Execution exec) {
    const auto& d = dataset(static_cast<std::size_t>(state.range(0)));
    const MissingIndex idx = build_missing_index(d.relation);
    AttributeSet all;
    for (AttrId a = 0; a < d.relation.num_attributes(); ++a) all.insert(a);
    for (auto _ : state) benchmark::DoNotOptimize(presence_mask(idx, all, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void min_ignored(benchmark::State& state, Execution exec) {
    const auto& d = dataset(static_cast<std::size_t>(state.range(0)));
    const Statement s{{0}, {1}, Operator::Leq, AttributeSet{0, 1}};
    OracleOptions opts;
    opts.execution = exec;
    for (auto _ : state) benchmark::DoNotOptimize(min_ignored_embedding(d.relation, s, opts));
}

void naive(benchmark::State& state, Execution exec) {
    const auto& d = dataset(static_cast<std::size_t>(state.range(0)));
    const Statement s{{0}, {1}, Operator::Leq, AttributeSet{0, 1}};
    OracleOptions opts;
    opts.execution = exec;
    for (auto _ : state) benchmark::DoNotOptimize(naive_validate(d.relation, s, opts));
}

void validate(benchmark::State& state) {
    const auto& d = dataset(static_cast<std::size_t>(state.range(0)));
    const Statement s{{0}, {1}, Operator::Leq, AttributeSet{0, 1}};
    for (auto _ : state) benchmark::DoNotOptimize(validate_eod(d.relation, s));
    state.SetComplexityN(state.range(0));
}

BENCHMARK_CAPTURE(presence, serial, Execution::Serial)->Arg(100'000)->Arg(1'000'000);
BENCHMARK_CAPTURE(presence, parallel, Execution::Parallel)->Arg(100'000)->Arg(1'000'000);
BENCHMARK_CAPTURE(min_ignored, serial, Execution::Serial)->Arg(2'000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(min_ignored, parallel, Execution::Parallel)->Arg(2'000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(naive, serial, Execution::Serial)->Arg(2'000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(naive, parallel, Execution::Parallel)->Arg(2'000)->Unit(benchmark::kMillisecond);
BENCHMARK(validate)->RangeMultiplier(2)->Range(12'500, 200'000)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace

BENCHMARK_MAIN();
