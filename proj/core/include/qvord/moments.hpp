#pragma once

#include "qvord/freqdata.hpp"

namespace qvord {

/// First three moments of a discrete distribution: mean, variance and
/// the third central moment.
struct MomentSummary {
    double mean;
    double mu2;
    double mu3;
};

/// A distribution's position in the Ord plane: i = mu2/mean, s = mu3/mu2.
struct OrdPoint {
    double i;
    double s;
};

/// Moments of the rank variable: rank r in 1..K taken with probability
/// f_r/N. Zero-count ranks contribute nothing.
MomentSummary empirical_moments(const RankedTable& ranked);

/// Throws DegenerateDistribution when mu2 == 0.
OrdPoint ord_coords(const MomentSummary& summary);

} // namespace qvord
