#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "qvord/moments.hpp"

namespace qvord {

/// Parametrized discrete distribution for Ord-plane landmarks.
class DistSpec {
public:
    enum class Family { Binomial, Poisson, NegBinomial, Hypergeometric, BetaBinomial };

    static DistSpec binomial(std::int64_t n, double p);
    static DistSpec poisson(double lambda);
    /// Number of failures before the r-th success; real r > 0 allowed.
    static DistSpec neg_binomial(double r, double p);
    static DistSpec hypergeometric(std::int64_t population, std::int64_t successes,
                                   std::int64_t draws);
    static DistSpec beta_binomial(std::int64_t n, double alpha, double beta);

    /// Parse "binomial" "poisson" "negbinomial" "hypergeometric"
    /// "betabinomial" plus a comma-separated parameter list.
    static DistSpec parse(const std::string& family, const std::string& params);

    Family family() const noexcept { return family_; }
    double param(int i) const { return params_[i]; }
    std::string describe() const;

private:
    DistSpec(Family family, double a, double b, double c)
        : family_(family), params_{a, b, c} {}

    Family family_;
    double params_[3];
};

enum class RegionLabel {
    BinomialSegment,
    PoissonPoint,
    NegBinHalfline,
    HypergeomTriangle,
    BetaBinHalfplane,
    BetaPascalRegion,
    None,
};

const char* to_string(RegionLabel label);

/// Ord-plane landmark coordinates. A = (0,1), G = (0,-1), J = (0.5,0),
/// P = (1,1); the GP line is S = 2I - 1.
inline constexpr OrdPoint kLandmarkA{0.0, 1.0};
inline constexpr OrdPoint kLandmarkG{0.0, -1.0};
inline constexpr OrdPoint kLandmarkJ{0.5, 0.0};
inline constexpr OrdPoint kLandmarkP{1.0, 1.0};

/// Default classification tolerances: tight for library callers, looser
/// for values that passed through CLI text round-trips.
inline constexpr double kClassifyTolLibrary = 1e-9;
inline constexpr double kClassifyTolCli = 1e-6;

/// (I, S) from closed-form moments (binomial, Poisson, negative binomial)
/// or full-support pmf summation (hypergeometric, beta-binomial).
OrdPoint dist_point(const DistSpec& spec);

/// Moments by direct pmf summation; infinite supports truncated once the
/// accumulated mass reaches 1 - tail_tol. tail_tol must be in (0, 1e-6].
MomentSummary summation_moments(const DistSpec& spec, double tail_tol);

/// Every region predicate that holds at the point; boundary coincidences
/// therefore appear as multi-element sets. Empty input is impossible: the
/// fallback label is RegionLabel::None.
std::set<RegionLabel> classify_region(const OrdPoint& point, double tol);

} // namespace qvord
