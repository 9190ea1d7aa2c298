#include <benchmark/benchmark.h>

#include <sstream>

#include "qvord/freqdata.hpp"
#include "qvord/indices.hpp"
#include "qvord/moments.hpp"
#include "qvord/pipeline.hpp"
#include "qvord/rng.hpp"

namespace {

qvord::CategoryTable sized_table(std::size_t k) {
    qvord::SplitMix64 rng(1);
    std::vector<std::string> labels(k);
    std::vector<std::uint64_t> counts(k);
    for (std::size_t i = 0; i < k; ++i) {
        labels[i] = "c" + std::to_string(i);
        counts[i] = 1 + rng.below(40000);
    }
    return qvord::CategoryTable(std::move(labels), std::move(counts));
}

void BM_IndexSummary(benchmark::State& state) {
    const auto table = sized_table(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto s = qvord::index_summary(table);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_IndexSummary)->Arg(25)->Arg(43)->Arg(200);

void BM_EmpiricalMoments(benchmark::State& state) {
    const auto ranked =
        qvord::rank_frequencies(sized_table(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        auto m = qvord::empirical_moments(ranked);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_EmpiricalMoments)->Arg(25)->Arg(43)->Arg(200);

void BM_LoadBundledTable(benchmark::State& state) {
    for (auto _ : state) {
        std::istringstream in{std::string(qvord::bundled_table1())};
        auto tables = qvord::load_tables(in, qvord::TableFormat::Matrix);
        benchmark::DoNotOptimize(tables);
    }
}
BENCHMARK(BM_LoadBundledTable);

} // namespace
