#include <benchmark/benchmark.h>

#include "qvord/cluster.hpp"
#include "qvord/rng.hpp"

namespace {

qvord::PointSet random_points(std::size_t n) {
    qvord::SplitMix64 rng(9);
    std::vector<std::vector<double>> pts(n, std::vector<double>(2));
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = "p" + std::to_string(i);
        pts[i][0] = rng.unit();
        pts[i][1] = rng.unit();
    }
    return {std::move(pts), std::move(ids)};
}

void BM_KMeansLloyd(benchmark::State& state) {
    const auto points = random_points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = qvord::kmeans(points, 3, qvord::KMeansVariant::Lloyd, 42, 50);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_KMeansLloyd)->Arg(11)->Arg(100)->Arg(1000);

void BM_KMeansHartiganWong(benchmark::State& state) {
    const auto points = random_points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = qvord::kmeans(points, 3, qvord::KMeansVariant::HartiganWong, 42, 50);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_KMeansHartiganWong)->Arg(11)->Arg(100);

void BM_PamEuclidean(benchmark::State& state) {
    const auto points = random_points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = qvord::kmedoids_pam(points, 3, qvord::Metric::Euclidean);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_PamEuclidean)->Arg(11)->Arg(100);

void BM_PartitionOracle(benchmark::State& state) {
    const auto points = random_points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = qvord::partition_oracle(points, 3, qvord::PartitionObjective::Wcss);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_PartitionOracle)->Arg(8)->Arg(11);

} // namespace

BENCHMARK_MAIN();
