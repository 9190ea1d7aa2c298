#include <doctest.h>

#include <cmath>

#include "qvord/error.hpp"
#include "qvord/rng.hpp"
#include "qvord/theory.hpp"

using namespace qvord;

TEST_CASE("landmark points") {
    SUBCASE("poisson sits at P = (1,1) for any rate") {
        for (double lambda : {0.1, 1.0, 2.0, 17.5}) {
            const OrdPoint p = dist_point(DistSpec::poisson(lambda));
            CHECK(p.i == 1.0);
            CHECK(p.s == 1.0);
        }
    }
    SUBCASE("symmetric binomial sits at J = (0.5, 0)") {
        for (std::int64_t n : {2, 10, 100}) {
            const OrdPoint p = dist_point(DistSpec::binomial(n, 0.5));
            CHECK(p.i == 0.5);
            CHECK(p.s == 0.0);
        }
    }
    SUBCASE("negative binomial closed forms") {
        const OrdPoint p = dist_point(DistSpec::neg_binomial(3, 0.5));
        CHECK(p.i == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(p.s == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("summation oracle agrees with known moments") {
    SUBCASE("poisson cumulants") {
        const MomentSummary m = summation_moments(DistSpec::poisson(2.0), 1e-12);
        CHECK(m.mean == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(m.mu2 == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(m.mu3 == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("binomial np, npq, npq(1-2p)") {
        const MomentSummary m = summation_moments(DistSpec::binomial(10, 0.3), 1e-12);
        CHECK(m.mean == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(m.mu2 == doctest::Approx(2.1).epsilon(1e-9));
        CHECK(m.mu3 == doctest::Approx(0.84).epsilon(1e-9));
    }
    SUBCASE("hypergeometric path consistency") {
        const DistSpec spec = DistSpec::hypergeometric(20, 8, 5);
        const MomentSummary m = summation_moments(spec, 1e-12);
        const OrdPoint p = dist_point(spec);
        CHECK(p.i == doctest::Approx(m.mu2 / m.mean).epsilon(1e-9));
        CHECK(p.s == doctest::Approx(m.mu3 / m.mu2).epsilon(1e-9));
    }
}

TEST_CASE("closed forms agree with truncated summation for every family") {
    const DistSpec specs[] = {
        DistSpec::binomial(12, 0.35),   DistSpec::poisson(3.7),
        DistSpec::neg_binomial(2, 0.4), DistSpec::neg_binomial(5.5, 0.7),
        DistSpec::hypergeometric(30, 12, 9), DistSpec::beta_binomial(15, 2.0, 3.5),
    };
    for (const DistSpec& spec : specs) {
        const MomentSummary m = summation_moments(spec, 1e-12);
        const OrdPoint p = dist_point(spec);
        CHECK(p.i == doctest::Approx(m.mu2 / m.mean).epsilon(1e-9));
        CHECK(p.s == doctest::Approx(m.mu3 / m.mu2).epsilon(1e-9));
    }
}

TEST_CASE("binomial family lies on the GP segment (property)") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.below(60));
        const double p = 0.05 + 0.9 * rng.unit();
        const OrdPoint pt = dist_point(DistSpec::binomial(n, p));
        REQUIRE(std::abs(pt.s - (2.0 * pt.i - 1.0)) < 1e-9);
        REQUIRE(pt.i > 0.0);
        REQUIRE(pt.i < 1.0);
        const auto labels = classify_region(pt, 1e-9);
        REQUIRE(labels.count(RegionLabel::BinomialSegment) == 1);
    }
}

TEST_CASE("negative binomial lies on the PB half-line with I = 1/p (property)") {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const double r = 0.5 + 6.0 * rng.unit();
        const double p = 0.15 + 0.7 * rng.unit();
        const OrdPoint pt = dist_point(DistSpec::neg_binomial(r, p));
        REQUIRE(pt.i == doctest::Approx(1.0 / p).epsilon(1e-9));
        REQUIRE(std::abs(pt.s - (2.0 * pt.i - 1.0)) < 1e-9);
        REQUIRE(pt.i > 1.0);
        const auto labels = classify_region(pt, 1e-9);
        REQUIRE(labels.count(RegionLabel::NegBinHalfline) == 1);
    }
}

TEST_CASE("hypergeometric lands in the AGP triangle or on its boundary (property)") {
    SplitMix64 rng(33);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t population = 5 + static_cast<std::int64_t>(rng.below(40));
        const std::int64_t successes = 1 + static_cast<std::int64_t>(
                                               rng.below(static_cast<std::uint64_t>(population - 1)));
        const std::int64_t draws =
            1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(population - 1)));
        const OrdPoint pt = dist_point(DistSpec::hypergeometric(population, successes, draws));
        const bool inside = classify_region(pt, 1e-9).count(RegionLabel::HypergeomTriangle) == 1;
        const bool on_boundary = std::abs(pt.s - (2.0 * pt.i - 1.0)) < 1e-9 ||
                                 std::abs(pt.s - 1.0) < 1e-9 || std::abs(pt.i) < 1e-9;
        REQUIRE((inside || on_boundary));
    }
}

TEST_CASE("beta-binomial sits below the GP line (property)") {
    SplitMix64 rng(34);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(40));
        const double alpha = 0.2 + 5.0 * rng.unit();
        const double beta = 0.2 + 5.0 * rng.unit();
        const OrdPoint pt = dist_point(DistSpec::beta_binomial(n, alpha, beta));
        REQUIRE(pt.s < 2.0 * pt.i - 1.0 + 1e-9);
    }
}

TEST_CASE("region classification") {
    SUBCASE("the Poisson point") {
        const auto labels = classify_region({1.0, 1.0}, 1e-9);
        CHECK(labels == std::set<RegionLabel>{RegionLabel::PoissonPoint});
    }
    SUBCASE("below GP is beta-binomial half-plane") {
        const auto labels = classify_region({0.5, -0.5}, 1e-9);
        CHECK(labels == std::set<RegionLabel>{RegionLabel::BetaBinHalfplane});
    }
    SUBCASE("inside the triangle") {
        const auto labels = classify_region({0.5, 0.5}, 1e-9);
        CHECK(labels == std::set<RegionLabel>{RegionLabel::HypergeomTriangle});
    }
    SUBCASE("beta-Pascal region") {
        const auto labels = classify_region({0.5, 2.0}, 1e-9);
        CHECK(labels.count(RegionLabel::BetaPascalRegion) == 1);
    }
    SUBCASE("far-off point classifies as NONE") {
        const auto labels = classify_region({-2.0, 0.0}, 1e-9);
        CHECK(labels == std::set<RegionLabel>{RegionLabel::None});
    }
    SUBCASE("boundary coincidences are reported as a set") {
        const auto labels = classify_region({0.5, 0.0}, 1e-9);
        CHECK(labels.count(RegionLabel::BinomialSegment) == 1);
        CHECK(labels.count(RegionLabel::BinomialSegment) == 1);
    }
    SUBCASE("negative tolerance is rejected") {
        CHECK_THROWS_AS(classify_region({0.0, 0.0}, -1.0), ValueError);
    }
}

TEST_CASE("degenerate and invalid parameters") {
    CHECK_THROWS_AS(DistSpec::binomial(0, 0.5), DegenerateDistribution);
    CHECK_THROWS_AS(DistSpec::binomial(10, 0.0), DegenerateDistribution);
    CHECK_THROWS_AS(DistSpec::binomial(10, 1.0), DegenerateDistribution);
    CHECK_THROWS_AS(DistSpec::binomial(10, 1.5), ValueError);
    CHECK_THROWS_AS(DistSpec::binomial(-1, 0.5), ValueError);
    CHECK_THROWS_AS(DistSpec::poisson(0.0), DegenerateDistribution);
    CHECK_THROWS_AS(DistSpec::poisson(-1.0), ValueError);
    CHECK_THROWS_AS(DistSpec::neg_binomial(0.0, 0.5), DegenerateDistribution);
    CHECK_THROWS_AS(DistSpec::hypergeometric(10, 12, 5), ValueError);
    CHECK_THROWS_AS(DistSpec::beta_binomial(5, 0.0, 1.0), ValueError);
    // valid spec, zero variance
    CHECK_THROWS_AS(dist_point(DistSpec::hypergeometric(10, 10, 5)),
                    DegenerateDistribution);
    CHECK_THROWS_AS(dist_point(DistSpec::hypergeometric(10, 5, 10)),
                    DegenerateDistribution);
}

TEST_CASE("DistSpec::parse") {
    const OrdPoint p = dist_point(DistSpec::parse("binomial", "10,0.5"));
    CHECK(p.i == 0.5);
    CHECK_THROWS_AS(DistSpec::parse("cauchy", "1"), ValueError);
    CHECK_THROWS_AS(DistSpec::parse("poisson", "1,2"), ValueError);
    CHECK_THROWS_AS(DistSpec::parse("poisson", "abc"), ValueError);
}

TEST_CASE("tail tolerance validation and truncation") {
    CHECK_THROWS_AS(summation_moments(DistSpec::poisson(2.0), 0.0), ValueError);
    CHECK_THROWS_AS(summation_moments(DistSpec::poisson(2.0), 1e-3), ValueError);
    CHECK_NOTHROW(summation_moments(DistSpec::poisson(2.0), 1e-9));
}
