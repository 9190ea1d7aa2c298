#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qvord/cluster.hpp"
#include "qvord/freqdata.hpp"
#include "qvord/indices.hpp"
#include "qvord/moments.hpp"

namespace qvord {

enum class CoordMode { Original, Modified, InventorySize };
enum class ClusterMethod { KMeans, KMedoids };

const char* to_string(CoordMode mode);
const char* to_string(ClusterMethod method);

/// Everything one pipeline run needs. `input_path` may be the pseudo-path
/// "bundled:table1" to use the compiled-in Table 1 asset.
struct RunConfig {
    std::string input_path;
    std::optional<TableFormat> format; // nullopt: sniff from the header
    CoordMode coords = CoordMode::Modified;
    ClusterMethod method = ClusterMethod::KMeans;
    KMeansVariant variant = KMeansVariant::Lloyd;
    Metric metric = Metric::Euclidean;
    int k = 3;
    std::uint64_t seed = 42;
    int restarts = 50;
    std::string json_path; // empty: skip
    std::string csv_path;
    std::string svg_path;
    bool overlay = false;
};

struct LanguageRecord {
    std::uint64_t n = 0;
    std::size_t inventory_size = 0; // K
    IndexSummary indices{};
    OrdPoint ord{};
    double i_m = 0.0;
    double s_m = 0.0;
};

struct Report {
    RunConfig config;
    std::map<std::string, LanguageRecord> languages;
    ClusterResult clusters;
    std::string version;
};

/// Ingest -> indices/moments -> coordinates -> clustering; writes the
/// configured JSON/CSV/SVG outputs. Errors carry the offending language
/// or file in their message; nothing is written on failure.
Report run(const RunConfig& config);

/// Pieces of run(), exposed for the CLI subcommands.
std::map<std::string, CategoryTable> load_input(const std::string& path,
                                                std::optional<TableFormat> format);
std::map<std::string, LanguageRecord> compute_records(
    const std::map<std::string, CategoryTable>& tables);
PointSet coordinate_points(const std::map<std::string, LanguageRecord>& records,
                           CoordMode mode);

/// Deterministic JSON: keys sorted, floats in %.17g round-trip form.
std::string report_to_json(const Report& report);
std::string records_to_json(const std::map<std::string, LanguageRecord>& records,
                            const std::string& what);
std::string report_to_csv(const Report& report);

/// Assignment parsed back from a report's JSON (for `plot --clusters`).
std::map<std::string, int> assignment_from_json(const std::string& json_text);

/// The bundled Table 1 TSV (matrix format), compiled into the library.
std::string_view bundled_table1();

} // namespace qvord
