#include <doctest.h>

#include <cmath>

#include "qvord/cluster.hpp"
#include "qvord/error.hpp"
#include "qvord/rng.hpp"

using namespace qvord;

namespace {

PointSet four_pairs() {
    return PointSet({{0, 0}, {0, 0.1}, {10, 10}, {10, 10.1}}, {"p1", "p2", "p3", "p4"});
}

PointSet inventory_sizes() {
    // Alphabetical language order; values are the Table 1 inventory sizes.
    return PointSet({{30}, {30}, {42}, {31}, {32}, {33}, {25}, {30}, {43}, {34}, {37}},
                    {"BUL", "CRO", "CZE", "MAC", "POL", "RUS", "SLO", "SRB", "SVK", "UKR",
                     "UPS"});
}

const std::vector<std::vector<std::string>> kInventoryOptimum = {
    {"BUL", "CRO", "MAC", "POL", "RUS", "SRB", "UKR"},
    {"CZE", "SVK", "UPS"},
    {"SLO"},
};

PointSet random_points(SplitMix64& rng, std::size_t n, std::size_t dim = 2) {
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = "p" + std::to_string(i);
        for (std::size_t d = 0; d < dim; ++d)
            pts[i][d] = rng.unit();
    }
    return PointSet(std::move(pts), std::move(ids));
}

} // namespace

TEST_CASE("well-separated pairs cluster together under every variant") {
    const PointSet points = four_pairs();
    for (KMeansVariant variant :
         {KMeansVariant::Lloyd, KMeansVariant::MacQueen, KMeansVariant::HartiganWong}) {
        const ClusterResult result = kmeans(points, 2, variant, 42, 10);
        CHECK(result.objective == doctest::Approx(0.01).epsilon(1e-12));
        const auto groups = canonical_groups(result);
        REQUIRE(groups.size() == 2);
        CHECK(groups[0] == std::vector<std::string>{"p1", "p2"});
        CHECK(groups[1] == std::vector<std::string>{"p3", "p4"});
    }
    const ClusterResult pam = kmedoids_pam(points, 2, Metric::Euclidean);
    const auto groups = canonical_groups(pam);
    CHECK(groups[0] == std::vector<std::string>{"p1", "p2"});
    CHECK(groups[1] == std::vector<std::string>{"p3", "p4"});
}

TEST_CASE("inventory sizes: kmeans matches the exhaustive oracle") {
    const PointSet points = inventory_sizes();
    const ClusterResult oracle = partition_oracle(points, 3, PartitionObjective::Wcss);
    CHECK(canonical_groups(oracle) == kInventoryOptimum);
    CHECK(oracle.objective == doctest::Approx(36.38095238095238).epsilon(1e-12));

    for (KMeansVariant variant :
         {KMeansVariant::Lloyd, KMeansVariant::MacQueen, KMeansVariant::HartiganWong}) {
        const ClusterResult result = kmeans(points, 3, variant, 42, 50);
        CHECK(canonical_groups(result) == kInventoryOptimum);
        CHECK(result.objective == doctest::Approx(oracle.objective).epsilon(1e-12));
    }
}

TEST_CASE("PAM on three 1-D points") {
    const PointSet points({{0}, {1}, {10}}, {"a", "b", "c"});
    const ClusterResult result = kmedoids_pam(points, 2, Metric::Manhattan);
    CHECK(result.medoids == std::vector<std::string>{"b", "c"});
    CHECK(result.objective == doctest::Approx(1.0).epsilon(1e-15));
    const auto groups = canonical_groups(result);
    CHECK(groups[0] == std::vector<std::string>{"a", "b"});
    CHECK(groups[1] == std::vector<std::string>{"c"});
}

TEST_CASE("PAM matches the exhaustive medoid oracle on random instances") {
    SplitMix64 rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 4 + rng.below(6);
        const PointSet points = random_points(rng, n);
        for (Metric metric : {Metric::Euclidean, Metric::Manhattan}) {
            const ClusterResult pam = kmedoids_pam(points, 2, metric);
            const ClusterResult oracle =
                partition_oracle(points, 2, PartitionObjective::MedoidCost, metric);
            REQUIRE(pam.objective >= oracle.objective - 1e-9);
            // the PAM cost must recompute from its own assignment
            REQUIRE(std::abs(medoid_cost_of(points, pam.labels, pam.medoid_indices,
                                            metric) -
                             pam.objective) < 1e-9);
        }
    }
}

TEST_CASE("clustering errors") {
    const PointSet points = four_pairs();
    CHECK_THROWS_AS(kmeans(points, 5, KMeansVariant::Lloyd), TooFewPoints);
    CHECK_THROWS_AS(kmeans(points, 1, KMeansVariant::Lloyd), ValueError);
    CHECK_THROWS_AS(kmeans(points, 2, KMeansVariant::Lloyd, 42, 0), ValueError);
    CHECK_THROWS_AS(kmedoids_pam(points, 5, Metric::Euclidean), TooFewPoints);

    SplitMix64 rng(56);
    const PointSet big = random_points(rng, 13);
    CHECK_THROWS_AS(partition_oracle(big, 3, PartitionObjective::Wcss), TooLarge);

    CHECK_THROWS_AS(PointSet({{0, 0}, {1}}, {"a", "b"}), ValueError);
    CHECK_THROWS_AS(PointSet({{0}, {1}}, {"a", "a"}), DuplicateError);
    CHECK_THROWS_AS(PointSet({}, {}), EmptyInput);
}

TEST_CASE("duplicate points fall back to repeated seeding with a warning") {
    const PointSet points({{1, 1}, {1, 1}, {1, 1}, {5, 5}}, {"a", "b", "c", "d"});
    const ClusterResult result = kmeans(points, 3, KMeansVariant::Lloyd, 42, 5);
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].find("repeated") != std::string::npos);
    // still a valid clustering: k clusters, none empty
    std::vector<int> sizes(3, 0);
    for (int c : result.labels)
        ++sizes[static_cast<std::size_t>(c)];
    for (int s : sizes)
        CHECK(s > 0);
}

TEST_CASE("determinism: identical inputs give identical results") {
    SplitMix64 rng(57);
    const PointSet points = random_points(rng, 9);
    for (KMeansVariant variant :
         {KMeansVariant::Lloyd, KMeansVariant::MacQueen, KMeansVariant::HartiganWong}) {
        const ClusterResult a = kmeans(points, 3, variant, 123, 20);
        const ClusterResult b = kmeans(points, 3, variant, 123, 20);
        CHECK(a.labels == b.labels);
        CHECK(a.centers == b.centers);
        CHECK(a.objective == b.objective);
        CHECK(a.iterations == b.iterations);
    }
    const ClusterResult a = kmedoids_pam(points, 3, Metric::Euclidean);
    const ClusterResult b = kmedoids_pam(points, 3, Metric::Euclidean);
    CHECK(a.labels == b.labels);
    CHECK(a.medoid_indices == b.medoid_indices);
}

TEST_CASE("nearest-assignment and objective recomputation invariants (property)") {
    SplitMix64 rng(58);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng.below(8);
        const PointSet points = random_points(rng, n);
        const int k = 2 + static_cast<int>(rng.below(2));
        for (KMeansVariant variant :
             {KMeansVariant::Lloyd, KMeansVariant::MacQueen, KMeansVariant::HartiganWong}) {
            const ClusterResult result = kmeans(points, k, variant, 7, 10);
            REQUIRE(std::abs(wcss_of(points, result.labels, k) - result.objective) < 1e-9);
            for (std::size_t i = 0; i < n; ++i) {
                double own = 0.0, best = 0.0;
                for (std::size_t d = 0; d < points.dim(); ++d) {
                    const double diff =
                        points.points()[i][d] -
                        result.centers[static_cast<std::size_t>(result.labels[i])][d];
                    own += diff * diff;
                }
                for (int c = 0; c < k; ++c) {
                    best = 0.0;
                    for (std::size_t d = 0; d < points.dim(); ++d) {
                        const double diff =
                            points.points()[i][d] - result.centers[static_cast<std::size_t>(c)][d];
                        best += diff * diff;
                    }
                    REQUIRE(own <= best + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("oracle dominance: restarts never beat exhaustive search (property)") {
    SplitMix64 rng(59);
    int optimal_hits = 0;
    const int trials = 30;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t n = 5 + rng.below(6);
        const PointSet points = random_points(rng, n);
        const int k = 2 + static_cast<int>(rng.below(2));
        const ClusterResult oracle = partition_oracle(points, k, PartitionObjective::Wcss);
        const ClusterResult best = kmeans(points, k, KMeansVariant::Lloyd, 42, 50);
        REQUIRE(best.objective >= oracle.objective - 1e-9);
        if (best.objective <= oracle.objective + 1e-9)
            ++optimal_hits;
    }
    CHECK(optimal_hits >= trials * 9 / 10);
}

TEST_CASE("canonical groups are stable under cluster relabeling") {
    ClusterResult a;
    a.assignment = {{"x", 0}, {"y", 1}, {"z", 0}};
    ClusterResult b;
    b.assignment = {{"x", 1}, {"y", 0}, {"z", 1}};
    CHECK(canonical_groups(a) == canonical_groups(b));
}
