#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qvord/error.hpp"
#include "qvord/indices.hpp"
#include "qvord/pipeline.hpp"
#include "test_support.hpp"

using namespace qvord;

namespace {

CategoryTable table_of(std::vector<std::uint64_t> counts) {
    std::vector<std::string> labels(counts.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = "c" + std::to_string(i);
    return CategoryTable(std::move(labels), std::move(counts));
}

} // namespace

TEST_CASE("boundary values: uniform gives 1, concentrated gives 0") {
    const CategoryTable uniform = table_of({5, 5, 5, 5});
    CHECK(va(uniform) == 1.0);
    CHECK(sda(uniform) == 1.0);
    CHECK(re(uniform) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rr_norm(uniform) == doctest::Approx(1.0).epsilon(1e-12));

    const CategoryTable concentrated = table_of({20, 0, 0, 0});
    CHECK(va(concentrated) == 0.0);
    CHECK(sda(concentrated) == 0.0);
    CHECK(re(concentrated) == 0.0);
    CHECK(rr_norm(concentrated) == 0.0);
}

TEST_CASE("derived small-table values") {
    const CategoryTable t31 = table_of({3, 1});
    CHECK(va(t31) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(sda(t31) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rr_norm(t31) == doctest::Approx(0.75).epsilon(1e-15));
    // (-0.75 ln 0.75 - 0.25 ln 0.25) / ln 2
    CHECK(re(t31) == doctest::Approx(0.8112781244591328).epsilon(1e-14));

    const CategoryTable t220 = table_of({2, 2, 0});
    CHECK(re(t220) == doctest::Approx(0.6309297535714574).epsilon(1e-14)); // ln2/ln3
}

TEST_CASE("modified coordinates") {
    const CategoryTable t31 = table_of({3, 1});
    const ModifiedPoint p = modified_coords(t31);
    CHECK(p.i_m == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(p.s_m == doctest::Approx(1.6225562489182657).epsilon(1e-14));
    CHECK(p.indices.va == doctest::Approx(0.75));

    const CategoryTable uniform = table_of({5, 5, 5, 5});
    const ModifiedPoint u = modified_coords(uniform);
    CHECK(u.i_m == 1.0);
    CHECK(u.s_m == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(modified_coords(table_of({20, 0, 0, 0})), DegenerateDistribution);
}

TEST_CASE("Table 1 SLO golden values (extended-precision oracle)") {
    std::istringstream in{std::string(bundled_table1())};
    const auto tables = load_tables(in, TableFormat::Matrix);
    const CategoryTable& slo = tables.at("SLO");

    CHECK(va(slo) == doctest::Approx(0.9766436519156514).epsilon(1e-12));
    CHECK(sda(slo) == doctest::Approx(0.8471721619457091).epsilon(1e-12));
    CHECK(re(slo) == doctest::Approx(0.9133253656167478).epsilon(1e-12));
    CHECK(rr_norm(slo) == doctest::Approx(0.9766436519156514).epsilon(1e-12));

    const ModifiedPoint p = modified_coords(slo);
    CHECK(p.i_m == doctest::Approx(0.8674322105959644).epsilon(1e-12));
    CHECK(p.s_m == doctest::Approx(1.0780870838804524).epsilon(1e-12));
}

TEST_CASE("identity chain over random tables (property)") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const CategoryTable t = test::random_table(rng);
        const IndexSummary s = index_summary(t);

        REQUIRE(s.va >= 0.0);
        REQUIRE(s.va <= 1.0);
        REQUIRE(s.sda >= 0.0);
        REQUIRE(s.sda <= 1.0);
        REQUIRE(s.re >= 0.0);
        REQUIRE(s.re <= 1.0);
        REQUIRE(s.rr_norm >= 0.0);
        REQUIRE(s.rr_norm <= 1.0);

        REQUIRE(std::abs(s.va - s.rr_norm) < 1e-12);
        REQUIRE(std::abs(s.sda - (1.0 - std::sqrt(1.0 - s.va))) < 1e-12);
        if (t.nonzero_categories() > 1) {
            const ModifiedPoint p = modified_coords(t);
            REQUIRE(std::abs(p.i_m * (1.0 + std::sqrt(1.0 - s.va)) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("permutation invariance is bitwise (property)") {
    SplitMix64 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const CategoryTable t = test::random_table(rng, 20);
        const IndexSummary base = index_summary(t);

        auto labels = t.labels();
        auto counts = t.counts();
        // Fisher-Yates with the shared rng
        for (std::size_t i = labels.size(); i > 1; --i) {
            const std::size_t j = rng.below(i);
            std::swap(labels[i - 1], labels[j]);
            std::swap(counts[i - 1], counts[j]);
        }
        const CategoryTable permuted(labels, counts);
        const IndexSummary p = index_summary(permuted);
        REQUIRE(p.va == base.va);
        REQUIRE(p.sda == base.sda);
        REQUIRE(p.re == base.re);
        REQUIRE(p.rr_norm == base.rr_norm);
    }
}

TEST_CASE("moving mass to the top category never increases va (property)") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        const CategoryTable t = test::random_table(rng, 8, 30);
        auto counts = t.counts();
        const std::size_t top = static_cast<std::size_t>(
            std::max_element(counts.begin(), counts.end()) - counts.begin());
        std::size_t low = counts.size();
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (i != top && counts[i] > 0 && (low == counts.size() || counts[i] < counts[low]))
                low = i;
        if (low == counts.size())
            continue; // already fully concentrated
        const double before = va(t);
        counts[top] += 1;
        counts[low] -= 1;
        const double after = va(CategoryTable(t.labels(), counts));
        REQUIRE(after <= before + 1e-12);
    }
}

TEST_CASE("index errors") {
    // K < 2 is unrepresentable as a CategoryTable; the constructor throws.
    CHECK_THROWS_AS(CategoryTable({"only"}, {7}), DegenerateCategories);
}
