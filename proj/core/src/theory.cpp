#include "qvord/theory.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "qvord/error.hpp"
#include "text_format.hpp"

namespace qvord {

namespace {

constexpr std::size_t kMaxSummationTerms = 1u << 24; // truncation hard cap

void require_prob(double p, const char* name) {
    if (std::isnan(p) || p < 0.0 || p > 1.0)
        throw ValueError(std::string(name) + " must lie in [0, 1]");
    if (p == 0.0 || p == 1.0)
        throw DegenerateDistribution(std::string(name) + " at the boundary gives zero variance");
}

double parse_number(const std::string& text) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty())
        throw ValueError("bad numeric parameter '" + text + "'");
    return v;
}

std::int64_t as_integer(double v, const char* name) {
    if (v != std::floor(v) || std::abs(v) > 1e15)
        throw ValueError(std::string(name) + " must be an integer");
    return static_cast<std::int64_t>(v);
}

double log_choose(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Two-pass moments over an explicit pmf on values 0..len-1 offset by `lo`.
MomentSummary pmf_moments(const std::vector<double>& pmf, std::int64_t lo) {
    double mean = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i)
        mean += static_cast<double>(lo + static_cast<std::int64_t>(i)) * pmf[i];
    double mu2 = 0.0;
    double mu3 = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        const double d = static_cast<double>(lo + static_cast<std::int64_t>(i)) - mean;
        mu2 += d * d * pmf[i];
        mu3 += d * d * d * pmf[i];
    }
    return {mean, mu2, mu3};
}

std::vector<double> hypergeometric_pmf(std::int64_t population, std::int64_t successes,
                                       std::int64_t draws, std::int64_t& lo) {
    lo = std::max<std::int64_t>(0, draws + successes - population);
    const std::int64_t hi = std::min(draws, successes);
    std::vector<double> pmf;
    pmf.reserve(static_cast<std::size_t>(hi - lo + 1));
    const double denom = log_choose(static_cast<double>(population),
                                    static_cast<double>(draws));
    for (std::int64_t x = lo; x <= hi; ++x) {
        const double lp = log_choose(static_cast<double>(successes), static_cast<double>(x)) +
                          log_choose(static_cast<double>(population - successes),
                                     static_cast<double>(draws - x)) -
                          denom;
        pmf.push_back(std::exp(lp));
    }
    return pmf;
}

std::vector<double> beta_binomial_pmf(std::int64_t n, double alpha, double beta) {
    std::vector<double> pmf;
    pmf.reserve(static_cast<std::size_t>(n + 1));
    const double lb = log_beta(alpha, beta);
    for (std::int64_t x = 0; x <= n; ++x) {
        const double lp = log_choose(static_cast<double>(n), static_cast<double>(x)) +
                          log_beta(static_cast<double>(x) + alpha,
                                   static_cast<double>(n - x) + beta) -
                          lb;
        pmf.push_back(std::exp(lp));
    }
    return pmf;
}

// Truncated pmf of an infinite-support family. Stopping needs the
// accumulated mass to reach 1 - tail_tol AND the running term's cubed-value
// weight to drop below tail_tol, so that third-moment tails are negligible
// too, not just the mass.
std::vector<double> truncated_pmf(const DistSpec& spec, double tail_tol) {
    std::vector<double> pmf;
    double mass = 0.0;
    double p0;
    if (spec.family() == DistSpec::Family::Poisson) {
        p0 = std::exp(-spec.param(0));
    } else {
        p0 = std::pow(spec.param(1), spec.param(0)); // p^r
    }
    double term = p0;
    for (std::size_t x = 0;; ++x) {
        pmf.push_back(term);
        mass += term;
        const double cube = static_cast<double>(x + 1) * static_cast<double>(x + 1) *
                            static_cast<double>(x + 1);
        if (mass >= 1.0 - tail_tol && term * cube <= tail_tol)
            return pmf;
        if (x + 1 >= kMaxSummationTerms)
            throw TruncationError("pmf summation did not reach the requested mass within " +
                                  std::to_string(kMaxSummationTerms) + " terms");
        if (spec.family() == DistSpec::Family::Poisson) {
            term *= spec.param(0) / static_cast<double>(x + 1);
        } else {
            const double r = spec.param(0);
            const double q = 1.0 - spec.param(1);
            term *= (static_cast<double>(x) + r) / static_cast<double>(x + 1) * q;
        }
    }
}

} // namespace

DistSpec DistSpec::binomial(std::int64_t n, double p) {
    if (n < 0)
        throw ValueError("binomial n must be non-negative");
    require_prob(p, "binomial p");
    if (n == 0)
        throw DegenerateDistribution("binomial with n = 0 has zero variance");
    return DistSpec(Family::Binomial, static_cast<double>(n), p, 0.0);
}

DistSpec DistSpec::poisson(double lambda) {
    if (std::isnan(lambda) || lambda < 0.0)
        throw ValueError("poisson lambda must be positive");
    if (lambda == 0.0)
        throw DegenerateDistribution("poisson with lambda = 0 has zero variance");
    return DistSpec(Family::Poisson, lambda, 0.0, 0.0);
}

DistSpec DistSpec::neg_binomial(double r, double p) {
    if (std::isnan(r) || r < 0.0)
        throw ValueError("negative binomial r must be positive");
    if (r == 0.0)
        throw DegenerateDistribution("negative binomial with r = 0 is a point mass");
    require_prob(p, "negative binomial p");
    return DistSpec(Family::NegBinomial, r, p, 0.0);
}

DistSpec DistSpec::hypergeometric(std::int64_t population, std::int64_t successes,
                                  std::int64_t draws) {
    if (population < 1)
        throw ValueError("hypergeometric population must be at least 1");
    if (successes < 0 || successes > population)
        throw ValueError("hypergeometric successes must lie in [0, population]");
    if (draws < 0 || draws > population)
        throw ValueError("hypergeometric draws must lie in [0, population]");
    return DistSpec(Family::Hypergeometric, static_cast<double>(population),
                    static_cast<double>(successes), static_cast<double>(draws));
}

DistSpec DistSpec::beta_binomial(std::int64_t n, double alpha, double beta) {
    if (n < 0)
        throw ValueError("beta-binomial n must be non-negative");
    if (std::isnan(alpha) || alpha <= 0.0 || std::isnan(beta) || beta <= 0.0)
        throw ValueError("beta-binomial alpha and beta must be positive");
    if (n == 0)
        throw DegenerateDistribution("beta-binomial with n = 0 has zero variance");
    return DistSpec(Family::BetaBinomial, static_cast<double>(n), alpha, beta);
}

DistSpec DistSpec::parse(const std::string& family, const std::string& params) {
    std::vector<double> values;
    std::stringstream ss(params);
    std::string item;
    while (std::getline(ss, item, ','))
        values.push_back(parse_number(item));

    auto arity = [&](std::size_t want) {
        if (values.size() != want)
            throw ValueError("family '" + family + "' takes " + std::to_string(want) +
                             " parameters, got " + std::to_string(values.size()));
    };
    if (family == "binomial") {
        arity(2);
        return binomial(as_integer(values[0], "binomial n"), values[1]);
    }
    if (family == "poisson") {
        arity(1);
        return poisson(values[0]);
    }
    if (family == "negbinomial") {
        arity(2);
        return neg_binomial(values[0], values[1]);
    }
    if (family == "hypergeometric") {
        arity(3);
        return hypergeometric(as_integer(values[0], "population"),
                              as_integer(values[1], "successes"),
                              as_integer(values[2], "draws"));
    }
    if (family == "betabinomial") {
        arity(3);
        return beta_binomial(as_integer(values[0], "betabinomial n"), values[1], values[2]);
    }
    throw ValueError("unknown distribution family '" + family + "'");
}

std::string DistSpec::describe() const {
    using detail::format_double;
    switch (family_) {
    case Family::Binomial:
        return "binomial(n=" + format_double(params_[0]) + ", p=" + format_double(params_[1]) +
               ")";
    case Family::Poisson:
        return "poisson(lambda=" + format_double(params_[0]) + ")";
    case Family::NegBinomial:
        return "negbinomial(r=" + format_double(params_[0]) +
               ", p=" + format_double(params_[1]) + ")";
    case Family::Hypergeometric:
        return "hypergeometric(population=" + format_double(params_[0]) +
               ", successes=" + format_double(params_[1]) +
               ", draws=" + format_double(params_[2]) + ")";
    case Family::BetaBinomial:
        return "betabinomial(n=" + format_double(params_[0]) +
               ", alpha=" + format_double(params_[1]) + ", beta=" + format_double(params_[2]) +
               ")";
    }
    return "?";
}

const char* to_string(RegionLabel label) {
    switch (label) {
    case RegionLabel::BinomialSegment: return "BINOMIAL_SEGMENT";
    case RegionLabel::PoissonPoint: return "POISSON_POINT";
    case RegionLabel::NegBinHalfline: return "NEGBIN_HALFLINE";
    case RegionLabel::HypergeomTriangle: return "HYPERGEOM_TRIANGLE";
    case RegionLabel::BetaBinHalfplane: return "BETABIN_HALFPLANE";
    case RegionLabel::BetaPascalRegion: return "BETAPASCAL_REGION";
    case RegionLabel::None: return "NONE";
    }
    return "?";
}

OrdPoint dist_point(const DistSpec& spec) {
    switch (spec.family()) {
    case DistSpec::Family::Binomial: {
        const double n = spec.param(0);
        const double p = spec.param(1);
        const double q = 1.0 - p;
        return ord_coords({n * p, n * p * q, n * p * q * (q - p)});
    }
    case DistSpec::Family::Poisson: {
        const double lambda = spec.param(0);
        return ord_coords({lambda, lambda, lambda});
    }
    case DistSpec::Family::NegBinomial: {
        const double r = spec.param(0);
        const double p = spec.param(1);
        const double q = 1.0 - p;
        return ord_coords({r * q / p, r * q / (p * p), r * q * (1.0 + q) / (p * p * p)});
    }
    case DistSpec::Family::Hypergeometric:
    case DistSpec::Family::BetaBinomial:
        return ord_coords(summation_moments(spec, 1e-12));
    }
    throw ValueError("unreachable distribution family");
}

MomentSummary summation_moments(const DistSpec& spec, double tail_tol) {
    if (!(tail_tol > 0.0) || tail_tol > 1e-6)
        throw ValueError("tail_tol must lie in (0, 1e-6]");
    switch (spec.family()) {
    case DistSpec::Family::Binomial: {
        const auto n = static_cast<std::int64_t>(spec.param(0));
        const double p = spec.param(1);
        std::vector<double> pmf;
        pmf.reserve(static_cast<std::size_t>(n + 1));
        for (std::int64_t x = 0; x <= n; ++x) {
            const double lp = log_choose(static_cast<double>(n), static_cast<double>(x)) +
                              static_cast<double>(x) * std::log(p) +
                              static_cast<double>(n - x) * std::log(1.0 - p);
            pmf.push_back(std::exp(lp));
        }
        return pmf_moments(pmf, 0);
    }
    case DistSpec::Family::Poisson:
    case DistSpec::Family::NegBinomial:
        return pmf_moments(truncated_pmf(spec, tail_tol), 0);
    case DistSpec::Family::Hypergeometric: {
        const auto population = static_cast<std::int64_t>(spec.param(0));
        const auto successes = static_cast<std::int64_t>(spec.param(1));
        const auto draws = static_cast<std::int64_t>(spec.param(2));
        if (draws == 0 || draws == population || successes == 0 || successes == population)
            throw DegenerateDistribution("hypergeometric with zero variance");
        std::int64_t lo = 0;
        const auto pmf = hypergeometric_pmf(population, successes, draws, lo);
        return pmf_moments(pmf, lo);
    }
    case DistSpec::Family::BetaBinomial: {
        const auto n = static_cast<std::int64_t>(spec.param(0));
        return pmf_moments(beta_binomial_pmf(n, spec.param(1), spec.param(2)), 0);
    }
    }
    throw ValueError("unreachable distribution family");
}

std::set<RegionLabel> classify_region(const OrdPoint& point, double tol) {
    if (std::isnan(tol) || tol < 0.0)
        throw ValueError("classification tolerance must be non-negative");
    const double i = point.i;
    const double s = point.s;
    const double gp = 2.0 * i - 1.0; // the GP line S = 2I - 1

    std::set<RegionLabel> labels;
    if (std::abs(i - 1.0) <= tol && std::abs(s - 1.0) <= tol)
        labels.insert(RegionLabel::PoissonPoint);
    if (std::abs(s - gp) <= tol && i > 0.0 && i < 1.0)
        labels.insert(RegionLabel::BinomialSegment);
    if (std::abs(s - gp) <= tol && i > 1.0)
        labels.insert(RegionLabel::NegBinHalfline);
    if (i > 0.0 && s < 1.0 && s > gp)
        labels.insert(RegionLabel::HypergeomTriangle);
    if (s < gp - tol)
        labels.insert(RegionLabel::BetaBinHalfplane);
    if (s > 1.0 + tol && s > gp + tol)
        labels.insert(RegionLabel::BetaPascalRegion);
    if (labels.empty())
        labels.insert(RegionLabel::None);
    return labels;
}

} // namespace qvord
