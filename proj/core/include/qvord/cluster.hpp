#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qvord {

/// Labeled points of a common dimension (1-D or 2-D in this project,
/// any d accepted).
class PointSet {
public:
    PointSet(std::vector<std::vector<double>> points, std::vector<std::string> ids);

    const std::vector<std::vector<double>>& points() const noexcept { return points_; }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dim() const noexcept { return dim_; }

private:
    std::vector<std::vector<double>> points_;
    std::vector<std::string> ids_;
    std::size_t dim_;
};

enum class KMeansVariant { Lloyd, MacQueen, HartiganWong };
enum class Metric { Euclidean, Manhattan };

const char* to_string(KMeansVariant variant);
const char* to_string(Metric metric);

struct ClusterResult {
    std::map<std::string, int> assignment;    // id -> cluster index
    std::vector<int> labels;                  // same, by point index
    std::vector<std::vector<double>> centers; // k-means: cluster means
    std::vector<std::string> medoids;         // k-medoids: medoid ids
    std::vector<int> medoid_indices;
    double objective = 0.0;
    std::string method;  // "kmeans" | "kmedoids" | "oracle"
    std::string variant; // algorithm variant or metric name
    std::uint64_t seed = 0;
    int iterations = 0;
    int restarts = 0;
    std::vector<std::string> warnings;
};

/// Best-of-`restarts` k-means. Each restart draws k distinct seed points
/// with a SplitMix64 stream derived from `seed`, runs the chosen variant
/// to a fixed point, and the lowest-WCSS result wins (ties: lowest
/// restart index). Deterministic for fixed inputs.
ClusterResult kmeans(const PointSet& points, int k, KMeansVariant variant,
                     std::uint64_t seed = 42, int restarts = 50);

/// PAM: greedy BUILD then best-improvement SWAP until no negative-cost
/// exchange remains. Fully deterministic; ties break on lowest index.
ClusterResult kmedoids_pam(const PointSet& points, int k, Metric metric);

enum class PartitionObjective { Wcss, MedoidCost };

/// Globally optimal partition by enumerating every split of the points
/// into k non-empty blocks. Guarded to at most 12 points.
ClusterResult partition_oracle(const PointSet& points, int k,
                               PartitionObjective objective,
                               Metric metric = Metric::Euclidean);

/// Clusters as sorted id lists, ordered by smallest member id: the
/// canonical form for comparing clusterings up to label permutation.
std::vector<std::vector<std::string>> canonical_groups(const ClusterResult& result);

/// Objective recomputation helpers (used to validate ClusterResult).
double wcss_of(const PointSet& points, const std::vector<int>& labels, int k);
double medoid_cost_of(const PointSet& points, const std::vector<int>& labels,
                      const std::vector<int>& medoid_indices, Metric metric);

} // namespace qvord
