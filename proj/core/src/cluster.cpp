#include "qvord/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "qvord/error.hpp"
#include "qvord/rng.hpp"

namespace qvord {

namespace {

using Point = std::vector<double>;

double sq_dist(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

double metric_dist(const Point& a, const Point& b, Metric metric) {
    if (metric == Metric::Euclidean)
        return std::sqrt(sq_dist(a, b));
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d)
        s += std::abs(a[d] - b[d]);
    return s;
}

int nearest_center(const Point& x, const std::vector<Point>& centers) {
    int best = 0;
    double best_d = sq_dist(x, centers[0]);
    for (int c = 1; c < static_cast<int>(centers.size()); ++c) {
        const double d = sq_dist(x, centers[c]);
        if (d < best_d) { // ties keep the lowest cluster index
            best_d = d;
            best = c;
        }
    }
    return best;
}

std::vector<Point> means_of(const std::vector<Point>& pts, const std::vector<int>& labels,
                            int k, std::size_t dim) {
    std::vector<Point> centers(static_cast<std::size_t>(k), Point(dim, 0.0));
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto c = static_cast<std::size_t>(labels[i]);
        ++counts[c];
        for (std::size_t d = 0; d < dim; ++d)
            centers[c][d] += pts[i][d];
    }
    for (std::size_t c = 0; c < centers.size(); ++c)
        for (std::size_t d = 0; d < dim; ++d)
            centers[c][d] /= static_cast<double>(counts[c]);
    return centers;
}

// Draw k seed points, preferring distinct values; repeats are allowed only
// when the input has fewer than k distinct points (with a warning).
std::vector<int> draw_seeds(const std::vector<Point>& pts, int k, SplitMix64& rng,
                            bool& used_duplicates) {
    std::vector<int> pool(pts.size());
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> picked;
    std::vector<int> rejected;
    std::vector<const Point*> picked_values;
    std::size_t pool_size = pool.size();
    while (static_cast<int>(picked.size()) < k && pool_size > 0) {
        const std::size_t j = rng.below(pool_size);
        const int candidate = pool[j];
        pool[j] = pool[--pool_size];
        bool duplicate = false;
        for (const Point* v : picked_values)
            if (*v == pts[static_cast<std::size_t>(candidate)]) {
                duplicate = true;
                break;
            }
        if (duplicate) {
            rejected.push_back(candidate);
        } else {
            picked.push_back(candidate);
            picked_values.push_back(&pts[static_cast<std::size_t>(candidate)]);
        }
    }
    used_duplicates = false;
    for (std::size_t r = 0; static_cast<int>(picked.size()) < k; ++r) {
        picked.push_back(rejected[r]);
        used_duplicates = true;
    }
    return picked;
}

// Give every empty cluster the point currently farthest from its center.
// Only points whose cluster keeps at least two members may move.
void repair_empty(const std::vector<Point>& pts, std::vector<int>& labels,
                  std::vector<Point>& centers, std::vector<std::size_t>& sizes) {
    const int k = static_cast<int>(centers.size());
    for (int e = 0; e < k; ++e) {
        if (sizes[static_cast<std::size_t>(e)] > 0)
            continue;
        int farthest = -1;
        double far_d = -1.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto c = static_cast<std::size_t>(labels[i]);
            if (sizes[c] < 2)
                continue;
            const double d = sq_dist(pts[i], centers[c]);
            if (d > far_d) {
                far_d = d;
                farthest = static_cast<int>(i);
            }
        }
        if (farthest < 0)
            continue; // unreachable while k <= n, kept as a guard
        const auto old = static_cast<std::size_t>(labels[static_cast<std::size_t>(farthest)]);
        --sizes[old];
        ++sizes[static_cast<std::size_t>(e)];
        labels[static_cast<std::size_t>(farthest)] = e;
        centers[static_cast<std::size_t>(e)] = pts[static_cast<std::size_t>(farthest)];
    }
}

struct RunOutcome {
    std::vector<int> labels;
    int iterations = 0;
};

RunOutcome run_lloyd(const std::vector<Point>& pts, int k, const std::vector<int>& seeds) {
    const std::size_t dim = pts[0].size();
    std::vector<Point> centers;
    centers.reserve(static_cast<std::size_t>(k));
    for (int s : seeds)
        centers.push_back(pts[static_cast<std::size_t>(s)]);

    auto wcss = [&](const std::vector<int>& labels, const std::vector<Point>& ctrs) {
        double total = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            total += sq_dist(pts[i], ctrs[static_cast<std::size_t>(labels[i])]);
        return total;
    };

    std::vector<int> labels(pts.size(), -1);
    double prev_wcss = std::numeric_limits<double>::infinity();
    int iterations = 0;
    for (; iterations < 10000; ++iterations) {
        std::vector<int> next(pts.size());
        std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            next[i] = nearest_center(pts[i], centers);
            ++sizes[static_cast<std::size_t>(next[i])];
        }
        const bool repaired =
            std::find(sizes.begin(), sizes.end(), std::size_t{0}) != sizes.end();
        repair_empty(pts, next, centers, sizes);
        if (next == labels)
            break;
        labels = std::move(next);
        centers = means_of(pts, labels, k, dim);
        // WCSS is non-increasing across iterations; a repair resets the
        // baseline since it deliberately trades objective for validity.
        const double w = wcss(labels, centers);
        if (!repaired && w > prev_wcss + 1e-9 * (1.0 + prev_wcss))
            throw std::logic_error("lloyd iteration increased the objective");
        prev_wcss = w;
    }
    return {labels, iterations};
}

// MacQueen as in R's kmeans: assign everything to the seed centers once,
// recompute centroids, then run online passes that move one point at a
// time and update the two affected centers immediately. The pure online
// form (running means from the very first assignment) cannot reach some
// optima at all; the batch warm start restores Lloyd-like basins.
RunOutcome run_macqueen(const std::vector<Point>& pts, int k, const std::vector<int>& seeds) {
    const std::size_t dim = pts[0].size();
    std::vector<Point> centers;
    centers.reserve(static_cast<std::size_t>(k));
    for (int s : seeds)
        centers.push_back(pts[static_cast<std::size_t>(s)]);

    std::vector<int> labels(pts.size());
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        labels[i] = nearest_center(pts[i], centers);
        ++sizes[static_cast<std::size_t>(labels[i])];
    }
    repair_empty(pts, labels, centers, sizes);

    std::vector<Point> sums(static_cast<std::size_t>(k), Point(dim, 0.0));
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        ++sizes[c];
        for (std::size_t d = 0; d < dim; ++d)
            sums[c][d] += pts[i][d];
    }
    auto refresh = [&](std::size_t c) {
        if (sizes[c] == 0)
            return; // keeps its last position until repaired
        for (std::size_t d = 0; d < dim; ++d)
            centers[c][d] = sums[c][d] / static_cast<double>(sizes[c]);
    };
    for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c)
        refresh(c);

    auto move = [&](std::size_t i, std::size_t to) {
        const auto old = static_cast<std::size_t>(labels[i]);
        --sizes[old];
        ++sizes[to];
        for (std::size_t d = 0; d < dim; ++d) {
            sums[old][d] -= pts[i][d];
            sums[to][d] += pts[i][d];
        }
        refresh(old);
        refresh(to);
        labels[i] = static_cast<int>(to);
    };
    // Reseed an empty cluster from the point farthest from its center,
    // drawing only from clusters that keep at least two members.
    auto reseed_empty = [&](std::size_t e) {
        int farthest = -1;
        double far_d = -1.0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const auto cj = static_cast<std::size_t>(labels[j]);
            if (sizes[cj] < 2)
                continue;
            const double dj = sq_dist(pts[j], centers[cj]);
            if (dj > far_d) {
                far_d = dj;
                farthest = static_cast<int>(j);
            }
        }
        if (farthest >= 0)
            move(static_cast<std::size_t>(farthest), e);
    };

    int passes = 0;
    bool moved = true;
    while (moved && passes < 10000) {
        moved = false;
        ++passes;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const int c = nearest_center(pts[i], centers);
            if (c == labels[i])
                continue;
            const auto old = static_cast<std::size_t>(labels[i]);
            if (sizes[old] == 1) {
                // moving the last member would empty the cluster; the
                // repair pass below handles genuine empties instead
                continue;
            }
            moved = true;
            move(i, static_cast<std::size_t>(c));
        }
        for (std::size_t e = 0; e < static_cast<std::size_t>(k); ++e) {
            if (sizes[e] == 0) {
                reseed_empty(e);
                moved = true;
            }
        }
    }
    return {labels, passes};
}

RunOutcome run_hartigan_wong(const std::vector<Point>& pts, int k,
                             const std::vector<int>& seeds) {
    const std::size_t dim = pts[0].size();
    std::vector<Point> centers;
    centers.reserve(static_cast<std::size_t>(k));
    for (int s : seeds)
        centers.push_back(pts[static_cast<std::size_t>(s)]);

    std::vector<int> labels(pts.size());
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        labels[i] = nearest_center(pts[i], centers);
        ++sizes[static_cast<std::size_t>(labels[i])];
    }
    repair_empty(pts, labels, centers, sizes);

    std::vector<Point> sums(static_cast<std::size_t>(k), Point(dim, 0.0));
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        ++sizes[c];
        for (std::size_t d = 0; d < dim; ++d)
            sums[c][d] += pts[i][d];
    }
    auto center_of = [&](std::size_t c) {
        Point ctr(dim);
        for (std::size_t d = 0; d < dim; ++d)
            ctr[d] = sums[c][d] / static_cast<double>(sizes[c]);
        return ctr;
    };

    // First-improvement single-point moves on the exact WCSS change:
    // moving x from cluster a (size na) to c (size nc) changes WCSS by
    // nc/(nc+1) * d2(x, mc) - na/(na-1) * d2(x, ma).
    int sweeps = 0;
    bool improved = true;
    while (improved && sweeps < 10000) {
        improved = false;
        ++sweeps;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto a = static_cast<std::size_t>(labels[i]);
            if (sizes[a] < 2)
                continue;
            const double na = static_cast<double>(sizes[a]);
            const double removal = na / (na - 1.0) * sq_dist(pts[i], center_of(a));
            for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
                if (c == a)
                    continue;
                const double nc = static_cast<double>(sizes[c]);
                const double delta =
                    nc / (nc + 1.0) * sq_dist(pts[i], center_of(c)) - removal;
                if (delta < -1e-12) {
                    --sizes[a];
                    ++sizes[c];
                    for (std::size_t d = 0; d < dim; ++d) {
                        sums[a][d] -= pts[i][d];
                        sums[c][d] += pts[i][d];
                    }
                    labels[i] = static_cast<int>(c);
                    improved = true;
                    break;
                }
            }
        }
    }
    return {labels, sweeps};
}

} // namespace

PointSet::PointSet(std::vector<std::vector<double>> points, std::vector<std::string> ids)
    : points_(std::move(points)), ids_(std::move(ids)) {
    if (points_.empty())
        throw EmptyInput("point set is empty");
    if (ids_.size() != points_.size())
        throw ValueError("ids and points differ in length");
    dim_ = points_[0].size();
    if (dim_ == 0)
        throw ValueError("points must have at least one dimension");
    for (const auto& p : points_) {
        if (p.size() != dim_)
            throw ValueError("points differ in dimension");
        for (double v : p)
            if (!std::isfinite(v))
                throw ValueError("non-finite coordinate");
    }
    std::unordered_set<std::string> seen;
    for (const auto& id : ids_)
        if (!seen.insert(id).second)
            throw DuplicateError("duplicate point id '" + id + "'");
}

const char* to_string(KMeansVariant variant) {
    switch (variant) {
    case KMeansVariant::Lloyd: return "lloyd";
    case KMeansVariant::MacQueen: return "macqueen";
    case KMeansVariant::HartiganWong: return "hartigan-wong";
    }
    return "?";
}

const char* to_string(Metric metric) {
    return metric == Metric::Euclidean ? "euclidean" : "manhattan";
}

double wcss_of(const PointSet& points, const std::vector<int>& labels, int k) {
    const auto centers = means_of(points.points(), labels, k, points.dim());
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        total += sq_dist(points.points()[i], centers[static_cast<std::size_t>(labels[i])]);
    return total;
}

double medoid_cost_of(const PointSet& points, const std::vector<int>& labels,
                      const std::vector<int>& medoid_indices, Metric metric) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto m = static_cast<std::size_t>(
            medoid_indices[static_cast<std::size_t>(labels[i])]);
        total += metric_dist(points.points()[i], points.points()[m], metric);
    }
    return total;
}

ClusterResult kmeans(const PointSet& points, int k, KMeansVariant variant,
                     std::uint64_t seed, int restarts) {
    if (k < 2)
        throw ValueError("k must be at least 2");
    if (static_cast<std::size_t>(k) > points.size())
        throw TooFewPoints("k = " + std::to_string(k) + " exceeds " +
                           std::to_string(points.size()) + " points");
    if (restarts < 1)
        throw ValueError("restarts must be at least 1");

    const auto& pts = points.points();
    SplitMix64 seed_stream(seed);
    std::vector<std::uint64_t> restart_seeds(static_cast<std::size_t>(restarts));
    for (auto& s : restart_seeds)
        s = seed_stream.next();

    bool best_valid = false;
    RunOutcome best;
    double best_wcss = std::numeric_limits<double>::infinity();
    bool any_duplicate_seeding = false;
    for (int r = 0; r < restarts; ++r) {
        SplitMix64 rng(restart_seeds[static_cast<std::size_t>(r)]);
        bool used_duplicates = false;
        const auto seeds = draw_seeds(pts, k, rng, used_duplicates);
        any_duplicate_seeding |= used_duplicates;

        RunOutcome outcome;
        switch (variant) {
        case KMeansVariant::Lloyd: outcome = run_lloyd(pts, k, seeds); break;
        case KMeansVariant::MacQueen: outcome = run_macqueen(pts, k, seeds); break;
        case KMeansVariant::HartiganWong: outcome = run_hartigan_wong(pts, k, seeds); break;
        }
        const double w = wcss_of(points, outcome.labels, k);
        // Ties keep the earlier restart, so the reduction order is fixed.
        if (!best_valid || w < best_wcss) {
            best_valid = true;
            best_wcss = w;
            best = std::move(outcome);
        }
    }

    ClusterResult result;
    result.labels = best.labels;
    for (std::size_t i = 0; i < points.size(); ++i)
        result.assignment[points.ids()[i]] = best.labels[i];
    result.centers = means_of(pts, best.labels, k, points.dim());
    result.objective = best_wcss;
    result.method = "kmeans";
    result.variant = to_string(variant);
    result.seed = seed;
    result.iterations = best.iterations;
    result.restarts = restarts;
    if (any_duplicate_seeding)
        result.warnings.push_back(
            "fewer distinct points than k: seeded with repeated values");
    return result;
}

ClusterResult kmedoids_pam(const PointSet& points, int k, Metric metric) {
    if (k < 2)
        throw ValueError("k must be at least 2");
    const std::size_t n = points.size();
    if (static_cast<std::size_t>(k) > n)
        throw TooFewPoints("k = " + std::to_string(k) + " exceeds " + std::to_string(n) +
                           " points");

    const auto& pts = points.points();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = metric_dist(pts[i], pts[j], metric);

    auto total_cost = [&](const std::vector<int>& medoids) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (int m : medoids)
                best = std::min(best, dist[i][static_cast<std::size_t>(m)]);
            total += best;
        }
        return total;
    };

    // BUILD: start from the 1-medoid optimum, then greedily add the point
    // that lowers total cost most (ties: lowest index).
    std::vector<int> medoids;
    {
        int first = 0;
        double first_cost = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n; ++c) {
            double cost = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                cost += dist[i][c];
            if (cost < first_cost) {
                first_cost = cost;
                first = static_cast<int>(c);
            }
        }
        medoids.push_back(first);
    }
    while (static_cast<int>(medoids.size()) < k) {
        int best_add = -1;
        double best_cost = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n; ++c) {
            if (std::find(medoids.begin(), medoids.end(), static_cast<int>(c)) !=
                medoids.end())
                continue;
            auto trial = medoids;
            trial.push_back(static_cast<int>(c));
            const double cost = total_cost(trial);
            if (cost < best_cost) {
                best_cost = cost;
                best_add = static_cast<int>(c);
            }
        }
        medoids.push_back(best_add);
    }

    // SWAP: best-improvement medoid/non-medoid exchanges until none helps.
    int swaps = 0;
    double current = total_cost(medoids);
    while (true) {
        int best_m = -1;
        int best_h = -1;
        double best_cost = current;
        for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
            for (std::size_t h = 0; h < n; ++h) {
                if (std::find(medoids.begin(), medoids.end(), static_cast<int>(h)) !=
                    medoids.end())
                    continue;
                auto trial = medoids;
                trial[mi] = static_cast<int>(h);
                const double cost = total_cost(trial);
                if (cost < best_cost - 1e-12) {
                    best_cost = cost;
                    best_m = static_cast<int>(mi);
                    best_h = static_cast<int>(h);
                }
            }
        }
        if (best_m < 0)
            break;
        medoids[static_cast<std::size_t>(best_m)] = best_h;
        current = best_cost;
        ++swaps;
    }

    ClusterResult result;
    result.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int best_c = 0;
        double best_d = dist[i][static_cast<std::size_t>(medoids[0])];
        for (int c = 1; c < k; ++c) {
            const double d = dist[i][static_cast<std::size_t>(medoids[static_cast<std::size_t>(c)])];
            if (d < best_d) {
                best_d = d;
                best_c = c;
            }
        }
        result.labels[i] = best_c;
        result.assignment[points.ids()[i]] = best_c;
    }
    result.medoid_indices = medoids;
    for (int m : medoids)
        result.medoids.push_back(points.ids()[static_cast<std::size_t>(m)]);
    result.objective = total_cost(medoids);
    result.method = "kmedoids";
    result.variant = to_string(metric);
    result.iterations = swaps;
    result.restarts = 0;
    return result;
}

ClusterResult partition_oracle(const PointSet& points, int k,
                               PartitionObjective objective, Metric metric) {
    const std::size_t n = points.size();
    if (n > 12)
        throw TooLarge("partition oracle is limited to 12 points, got " + std::to_string(n));
    if (k < 1)
        throw ValueError("k must be at least 1");
    if (static_cast<std::size_t>(k) > n)
        throw TooFewPoints("k = " + std::to_string(k) + " exceeds " + std::to_string(n) +
                           " points");

    std::vector<int> labels(n, 0);
    std::vector<int> best_labels;
    double best_obj = std::numeric_limits<double>::infinity();

    auto evaluate = [&]() {
        double obj;
        if (objective == PartitionObjective::Wcss) {
            obj = wcss_of(points, labels, k);
        } else {
            std::vector<int> medoids(static_cast<std::size_t>(k), -1);
            obj = 0.0;
            for (int b = 0; b < k; ++b) {
                double block_best = std::numeric_limits<double>::infinity();
                for (std::size_t m = 0; m < n; ++m) {
                    if (labels[m] != b)
                        continue;
                    double cost = 0.0;
                    for (std::size_t i = 0; i < n; ++i)
                        if (labels[i] == b)
                            cost += metric_dist(points.points()[i], points.points()[m],
                                                metric);
                    if (cost < block_best) {
                        block_best = cost;
                        medoids[static_cast<std::size_t>(b)] = static_cast<int>(m);
                    }
                }
                obj += block_best;
            }
        }
        if (obj < best_obj) {
            best_obj = obj;
            best_labels = labels;
        }
    };

    // Restricted growth strings with exactly k blocks. Point 0 is always
    // in block 0, so block numbering is canonical (by smallest member).
    auto rec = [&](auto&& self, std::size_t i, int used) -> void {
        if (i == n) {
            if (used == k)
                evaluate();
            return;
        }
        const int new_blocks_needed = k - used;
        if (static_cast<std::size_t>(new_blocks_needed) > n - i)
            return; // cannot open enough blocks with the remaining points
        const int limit = std::min(used, k - 1);
        for (int b = 0; b <= limit; ++b) {
            labels[i] = b;
            self(self, i + 1, std::max(used, b + 1));
        }
    };
    rec(rec, 1, 1);

    ClusterResult result;
    result.labels = best_labels;
    for (std::size_t i = 0; i < n; ++i)
        result.assignment[points.ids()[i]] = best_labels[i];
    result.objective = best_obj;
    result.method = "oracle";
    if (objective == PartitionObjective::Wcss) {
        result.centers = means_of(points.points(), best_labels, k, points.dim());
        result.variant = "wcss";
    } else {
        result.variant = std::string("medoid_cost/") + to_string(metric);
        std::vector<int> medoids(static_cast<std::size_t>(k), -1);
        for (int b = 0; b < k; ++b) {
            double block_best = std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < n; ++m) {
                if (best_labels[m] != b)
                    continue;
                double cost = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    if (best_labels[i] == b)
                        cost +=
                            metric_dist(points.points()[i], points.points()[m], metric);
                if (cost < block_best) {
                    block_best = cost;
                    medoids[static_cast<std::size_t>(b)] = static_cast<int>(m);
                }
            }
        }
        result.medoid_indices = medoids;
        for (int m : medoids)
            result.medoids.push_back(points.ids()[static_cast<std::size_t>(m)]);
    }
    return result;
}

std::vector<std::vector<std::string>> canonical_groups(const ClusterResult& result) {
    int k = 0;
    for (const auto& [id, c] : result.assignment)
        k = std::max(k, c + 1);
    std::vector<std::vector<std::string>> groups(static_cast<std::size_t>(k));
    for (const auto& [id, c] : result.assignment)
        groups[static_cast<std::size_t>(c)].push_back(id);
    for (auto& g : groups)
        std::sort(g.begin(), g.end());
    groups.erase(std::remove_if(groups.begin(), groups.end(),
                                [](const auto& g) { return g.empty(); }),
                 groups.end());
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return groups;
}

} // namespace qvord
