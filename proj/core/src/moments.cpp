#include "qvord/moments.hpp"

#include "qvord/error.hpp"

namespace qvord {

MomentSummary empirical_moments(const RankedTable& ranked) {
    if (ranked.total() == 0)
        throw EmptyInput("ranked table has zero total count");
    const double n = static_cast<double>(ranked.total());
    const auto& counts = ranked.counts();

    // Two passes: the mean first, then the central sums.
    double mean = 0.0;
    for (std::size_t r = 0; r < counts.size(); ++r) {
        if (counts[r] == 0)
            continue;
        mean += static_cast<double>(r + 1) * (static_cast<double>(counts[r]) / n);
    }
    double mu2 = 0.0;
    double mu3 = 0.0;
    for (std::size_t r = 0; r < counts.size(); ++r) {
        if (counts[r] == 0)
            continue;
        const double p = static_cast<double>(counts[r]) / n;
        const double d = static_cast<double>(r + 1) - mean;
        mu2 += d * d * p;
        mu3 += d * d * d * p;
    }
    return {mean, mu2, mu3};
}

OrdPoint ord_coords(const MomentSummary& summary) {
    if (summary.mu2 == 0.0)
        throw DegenerateDistribution("zero variance: Ord coordinates undefined");
    if (summary.mean == 0.0)
        throw DegenerateDistribution("zero mean: Ord coordinates undefined");
    return {summary.mu2 / summary.mean, summary.mu3 / summary.mu2};
}

} // namespace qvord
