#pragma once

#include "qvord/freqdata.hpp"

namespace qvord {

/// The three indices of qualitative variation plus the normalized repeat
/// rate. All lie in [0, 1]: 0 when one category holds all mass, 1 for the
/// uniform distribution. rr_norm equals va algebraically.
struct IndexSummary {
    double va;
    double sda;
    double re;
    double rr_norm;
};

/// Category-order-free graph coordinates: i_m = sda/va, s_m = re/sda.
struct ModifiedPoint {
    double i_m;
    double s_m;
    IndexSummary indices;
};

/// Variance analogue: 1 - sum((f_i - N/K)^2) / (N^2 (K-1)/K).
double va(const CategoryTable& table);

/// Standard deviation analogue: 1 - sqrt(sum((f_i - N/K)^2) / (N^2 (K-1)/K)).
double sda(const CategoryTable& table);

/// Relativized entropy: (-sum p_i ln p_i) / ln K, with 0 ln 0 := 0.
double re(const CategoryTable& table);

/// Normalized repeat rate: K/(K-1) * (1 - sum(f_i^2)/N^2).
double rr_norm(const CategoryTable& table);

IndexSummary index_summary(const CategoryTable& table);

/// Throws DegenerateDistribution when va == 0 (all mass in one category).
ModifiedPoint modified_coords(const CategoryTable& table);

} // namespace qvord
