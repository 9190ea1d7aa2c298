#include "qvord/indices.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qvord/error.hpp"

namespace qvord {

namespace {

// Terms are accumulated in ascending count order so that category
// permutations of the same table produce bitwise-identical sums.
std::vector<std::uint64_t> ascending_counts(const CategoryTable& table) {
    std::vector<std::uint64_t> counts = table.counts();
    std::sort(counts.begin(), counts.end());
    return counts;
}

// sum((f_i - N/K)^2) / (N^2 (K-1)/K), the shared core of va and sda.
double scaled_ssdev(const CategoryTable& table) {
    const auto counts = ascending_counts(table);
    const double n = static_cast<double>(table.total());
    const double k = static_cast<double>(table.categories());
    const double mean = n / k;
    double ss = 0.0;
    for (std::uint64_t f : counts) {
        const double d = static_cast<double>(f) - mean;
        ss += d * d;
    }
    return ss / (n * n * (k - 1.0) / k);
}

double clamp01(double v) {
    if (v <= 0.0)
        return 0.0; // also normalizes -0.0
    if (v > 1.0)
        return 1.0;
    return v;
}

bool concentrated(const CategoryTable& table) {
    return table.nonzero_categories() <= 1;
}

} // namespace

double va(const CategoryTable& table) {
    if (concentrated(table))
        return 0.0;
    return clamp01(1.0 - scaled_ssdev(table));
}

double sda(const CategoryTable& table) {
    if (concentrated(table))
        return 0.0;
    return clamp01(1.0 - std::sqrt(scaled_ssdev(table)));
}

double re(const CategoryTable& table) {
    const auto counts = ascending_counts(table);
    const double n = static_cast<double>(table.total());
    double h = 0.0;
    for (std::uint64_t f : counts) {
        if (f == 0)
            continue; // 0 ln 0 := 0
        const double p = static_cast<double>(f) / n;
        h -= p * std::log(p);
    }
    return clamp01(h / std::log(static_cast<double>(table.categories())));
}

double rr_norm(const CategoryTable& table) {
    const auto counts = ascending_counts(table);
    const double n = static_cast<double>(table.total());
    double sumsq = 0.0;
    for (std::uint64_t f : counts) {
        const double fd = static_cast<double>(f);
        sumsq += fd * fd;
    }
    const double k = static_cast<double>(table.categories());
    return clamp01(k / (k - 1.0) * (1.0 - sumsq / (n * n)));
}

IndexSummary index_summary(const CategoryTable& table) {
    return {va(table), sda(table), re(table), rr_norm(table)};
}

ModifiedPoint modified_coords(const CategoryTable& table) {
    if (concentrated(table))
        throw DegenerateDistribution(
            "all mass in one category: va == sda == 0, modified coordinates undefined");
    IndexSummary s = index_summary(table);
    if (s.va == 0.0)
        throw DegenerateDistribution("va is zero: modified coordinates undefined");
    return {s.sda / s.va, s.re / s.sda, s};
}

} // namespace qvord
