// qvord: indices of qualitative variation and Ord-graph coordinates for
// categorical frequency data, with k-means/k-medoids clustering and SVG
// scatter output.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qvord/cluster.hpp"
#include "qvord/error.hpp"
#include "qvord/freqdata.hpp"
#include "qvord/indices.hpp"
#include "qvord/moments.hpp"
#include "qvord/pipeline.hpp"
#include "qvord/svg.hpp"
#include "qvord/theory.hpp"
#include "qvord/version.hpp"

namespace {

using namespace qvord;

std::optional<TableFormat> parse_format(const std::string& text) {
    if (text == "long")
        return TableFormat::Long;
    if (text == "matrix")
        return TableFormat::Matrix;
    return std::nullopt; // "auto"
}

CoordMode parse_coords(const std::string& text) {
    if (text == "original")
        return CoordMode::Original;
    if (text == "modified")
        return CoordMode::Modified;
    return CoordMode::InventorySize;
}

KMeansVariant parse_variant(const std::string& text) {
    if (text == "lloyd")
        return KMeansVariant::Lloyd;
    if (text == "macqueen")
        return KMeansVariant::MacQueen;
    return KMeansVariant::HartiganWong;
}

std::string group_line(const std::vector<std::vector<std::string>>& groups) {
    std::string line;
    for (const auto& group : groups) {
        if (!line.empty())
            line += ' ';
        line += '{';
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (i > 0)
                line += ',';
            line += group[i];
        }
        line += '}';
    }
    return line;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValueError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValueError("cannot open '" + path + "' for writing");
    out << content;
}

int cmd_indices(const std::string& input, const std::string& format,
                const std::string& output) {
    const auto tables = load_input(input, parse_format(format));
    const auto records = compute_records(tables);
    std::cout << std::left << std::setw(10) << "language" << std::right << std::setw(9)
              << "N" << std::setw(4) << "K" << std::setw(10) << "VA" << std::setw(10)
              << "SDA" << std::setw(10) << "RE" << std::setw(10) << "RR_norm"
              << std::setw(10) << "I_m" << std::setw(10) << "S_m" << '\n';
    std::cout << std::fixed << std::setprecision(6);
    for (const auto& [lang, rec] : records)
        std::cout << std::left << std::setw(10) << lang << std::right << std::setw(9)
                  << rec.n << std::setw(4) << rec.inventory_size << std::setw(10)
                  << rec.indices.va << std::setw(10) << rec.indices.sda << std::setw(10)
                  << rec.indices.re << std::setw(10) << rec.indices.rr_norm << std::setw(10)
                  << rec.i_m << std::setw(10) << rec.s_m << '\n';
    if (!output.empty())
        write_text_file(output, records_to_json(records, "indices"));
    return 0;
}

int cmd_ord(const std::string& input, const std::string& format, const std::string& output) {
    const auto tables = load_input(input, parse_format(format));
    const auto records = compute_records(tables);
    std::cout << std::left << std::setw(10) << "language" << std::right << std::setw(9)
              << "N" << std::setw(4) << "K" << std::setw(12) << "I" << std::setw(12) << "S"
              << '\n';
    std::cout << std::fixed << std::setprecision(6);
    for (const auto& [lang, rec] : records)
        std::cout << std::left << std::setw(10) << lang << std::right << std::setw(9)
                  << rec.n << std::setw(4) << rec.inventory_size << std::setw(12)
                  << rec.ord.i << std::setw(12) << rec.ord.s << '\n';
    if (!output.empty())
        write_text_file(output, records_to_json(records, "ord"));
    return 0;
}

int cmd_cluster(const RunConfig& config) {
    const Report report = run(config);
    std::cout << "method: " << report.clusters.method << '/' << report.clusters.variant
              << "  k=" << config.k;
    if (config.method == ClusterMethod::KMeans)
        std::cout << "  seed=" << config.seed << "  restarts=" << config.restarts;
    std::cout << '\n';
    std::cout << "objective: " << std::setprecision(12) << report.clusters.objective
              << '\n';
    std::cout << "clusters:\n";
    for (const auto& group : canonical_groups(report.clusters)) {
        std::cout << "  {";
        for (std::size_t i = 0; i < group.size(); ++i)
            std::cout << (i ? ", " : "") << group[i];
        std::cout << "}\n";
    }
    for (const auto& warning : report.clusters.warnings)
        std::cerr << "warning: " << warning << '\n';
    return 0;
}

int cmd_plot(const std::string& input, const std::string& format, const std::string& coords,
             const std::string& clusters_path, bool overlay, const std::string& output) {
    const auto tables = load_input(input, parse_format(format));
    const auto records = compute_records(tables);
    const PointSet points = coordinate_points(records, parse_coords(coords));

    std::string svg;
    if (!clusters_path.empty()) {
        ClusterResult clusters;
        clusters.assignment = assignment_from_json(read_text_file(clusters_path));
        svg = render_scatter(points, &clusters, overlay);
    } else {
        svg = render_scatter(points, nullptr, overlay);
    }
    write_text_file(output, svg);
    std::cout << "wrote " << output << " (" << points.size() << " points)\n";
    return 0;
}

int cmd_theory(const std::string& dist, const std::string& params, bool classify) {
    const DistSpec spec = DistSpec::parse(dist, params);
    const OrdPoint point = dist_point(spec);
    const MomentSummary moments = summation_moments(spec, 1e-12);
    std::cout << spec.describe() << '\n';
    std::cout << "mean = " << std::setprecision(17) << moments.mean << '\n';
    std::cout << "mu2  = " << moments.mu2 << '\n';
    std::cout << "mu3  = " << moments.mu3 << '\n';
    std::cout << "I    = " << point.i << '\n';
    std::cout << "S    = " << point.s << '\n';
    if (classify) {
        std::cout << "regions (tol=" << std::setprecision(6) << kClassifyTolCli << "):";
        for (RegionLabel label : classify_region(point, kClassifyTolCli))
            std::cout << ' ' << to_string(label);
        std::cout << '\n';
    }
    return 0;
}

int cmd_count(const std::string& text_path, const std::string& alphabet_path,
              bool fold_case, const std::string& output, std::string name) {
    std::ifstream alphabet_file(alphabet_path);
    if (!alphabet_file)
        throw ValueError("cannot open '" + alphabet_path + "'");
    const Alphabet alphabet = Alphabet::from_stream(alphabet_file, fold_case);
    const std::string text = read_text_file(text_path);
    const CategoryTable table = count_graphemes(text, alphabet);

    if (name.empty())
        name = std::filesystem::path(text_path).stem().string();
    std::map<std::string, CategoryTable> tables;
    tables.emplace(name, table);
    std::ostringstream out;
    save_tables(tables, out, TableFormat::Long);
    write_text_file(output, out.str());
    std::cout << "counted " << table.total() << " units over " << table.categories()
              << " categories -> " << output << '\n';
    return 0;
}

int cmd_reproduce(std::uint64_t seed, const std::string& output_dir) {
    RunConfig base;
    base.input_path = "bundled:table1";
    base.format = TableFormat::Matrix;
    base.k = 3;
    base.seed = seed;
    base.restarts = 50;

    std::cout << "qvord " << kVersion
              << " -- grapheme rank-frequency analysis, bundled 11-language data\n\n";

    struct Combo {
        const char* label;
        ClusterMethod method;
        KMeansVariant variant;
        Metric metric;
    };
    const Combo combos[] = {
        {"kmeans/lloyd        ", ClusterMethod::KMeans, KMeansVariant::Lloyd,
         Metric::Euclidean},
        {"kmeans/macqueen     ", ClusterMethod::KMeans, KMeansVariant::MacQueen,
         Metric::Euclidean},
        {"kmeans/hartigan-wong", ClusterMethod::KMeans, KMeansVariant::HartiganWong,
         Metric::Euclidean},
        {"kmedoids/euclidean  ", ClusterMethod::KMedoids, KMeansVariant::Lloyd,
         Metric::Euclidean},
        {"kmedoids/manhattan  ", ClusterMethod::KMedoids, KMeansVariant::Lloyd,
         Metric::Manhattan},
    };

    std::cout << "modified coordinates (I_m, S_m), k=3:\n";
    std::vector<std::vector<std::string>> first_groups;
    bool all_agree = true;
    Report modified_report;
    for (const Combo& combo : combos) {
        RunConfig config = base;
        config.coords = CoordMode::Modified;
        config.method = combo.method;
        config.variant = combo.variant;
        config.metric = combo.metric;
        const Report report = run(config);
        const auto groups = canonical_groups(report.clusters);
        std::cout << "  " << combo.label << " : " << group_line(groups) << '\n';
        if (first_groups.empty()) {
            first_groups = groups;
            modified_report = report;
        } else if (groups != first_groups) {
            all_agree = false;
        }
    }
    std::cout << (all_agree ? "  all five methods agree\n" : "  METHODS DISAGREE\n");

    RunConfig original_config = base;
    original_config.coords = CoordMode::Original;
    const Report original_report = run(original_config);
    const auto original_groups = canonical_groups(original_report.clusters);
    std::cout << "\noriginal coordinates (I, S), k=3:\n";
    std::cout << "  kmeans/lloyd         : " << group_line(original_groups) << '\n';

    RunConfig inventory_config = base;
    inventory_config.coords = CoordMode::InventorySize;
    const Report inventory_report = run(inventory_config);
    const auto inventory_groups = canonical_groups(inventory_report.clusters);
    const PointSet inventory_points =
        coordinate_points(inventory_report.languages, CoordMode::InventorySize);
    const auto oracle_groups = canonical_groups(
        partition_oracle(inventory_points, 3, PartitionObjective::Wcss));
    const auto medoid_groups =
        canonical_groups(kmedoids_pam(inventory_points, 3, Metric::Euclidean));
    std::cout << "\ninventory sizes (K), k=3:\n";
    std::cout << "  kmeans/lloyd         : " << group_line(inventory_groups) << '\n';
    std::cout << "  exhaustive oracle    : " << group_line(oracle_groups) << '\n';
    std::cout << "  kmedoids/euclidean   : " << group_line(medoid_groups) << '\n';
    std::cout << (original_groups == inventory_groups
                      ? "  original-coordinate clusters match the inventory-size clusters\n"
                      : "  original-coordinate clusters DIFFER from the inventory-size "
                        "clusters\n");

    if (!output_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(output_dir);
        const fs::path dir(output_dir);

        RunConfig config = base;
        config.coords = CoordMode::Modified;
        config.json_path = (dir / "report_modified.json").string();
        config.csv_path = (dir / "report_modified.csv").string();
        config.svg_path = (dir / "modified.svg").string();
        run(config);

        config = base;
        config.coords = CoordMode::Original;
        config.json_path = (dir / "report_original.json").string();
        config.svg_path = (dir / "original.svg").string();
        config.csv_path.clear();
        run(config);

        config = base;
        config.coords = CoordMode::InventorySize;
        config.json_path = (dir / "report_inventory.json").string();
        config.svg_path.clear();
        run(config);

        std::cout << "\nwrote report_modified.{json,csv}, report_original.json, "
                     "report_inventory.json, modified.svg, original.svg to "
                  << output_dir << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"indices of qualitative variation and Ord-graph coordinates for "
                 "categorical frequency data"};
    app.set_version_flag("--version", std::string("qvord ") + qvord::kVersion);
    app.require_subcommand(1);

    const std::vector<std::string> formats{"long", "matrix"};
    const std::vector<std::string> formats_auto{"long", "matrix", "auto"};

    auto* indices_cmd = app.add_subcommand("indices", "qualitative variation indices");
    std::string in_input, in_format, in_output;
    indices_cmd->add_option("--input", in_input, "input TSV path")->required();
    indices_cmd->add_option("--format", in_format, "input format")
        ->required()
        ->check(CLI::IsMember(formats));
    indices_cmd->add_option("--output", in_output, "write JSON here");

    auto* ord_cmd = app.add_subcommand("ord", "empirical Ord coordinates");
    std::string ord_input, ord_format, ord_output;
    ord_cmd->add_option("--input", ord_input, "input TSV path")->required();
    ord_cmd->add_option("--format", ord_format, "input format")
        ->required()
        ->check(CLI::IsMember(formats));
    ord_cmd->add_option("--output", ord_output, "write JSON here");

    auto* cluster_cmd = app.add_subcommand("cluster", "cluster coordinate points");
    std::string cl_input, cl_format = "auto", cl_coords, cl_method, cl_variant = "lloyd",
                cl_metric = "euclidean", cl_output;
    int cl_k = 3, cl_restarts = 50;
    std::uint64_t cl_seed = 42;
    cluster_cmd->add_option("--input", cl_input, "input TSV path")->required();
    cluster_cmd->add_option("--format", cl_format, "input format")
        ->check(CLI::IsMember(formats_auto));
    cluster_cmd->add_option("--coords", cl_coords, "coordinate mode")
        ->required()
        ->check(CLI::IsMember({"original", "modified", "inventory"}));
    cluster_cmd->add_option("--k", cl_k, "number of clusters")->required();
    cluster_cmd->add_option("--method", cl_method, "clustering method")
        ->required()
        ->check(CLI::IsMember({"kmeans", "kmedoids"}));
    cluster_cmd->add_option("--variant", cl_variant, "k-means variant")
        ->check(CLI::IsMember({"lloyd", "macqueen", "hartigan-wong"}));
    cluster_cmd->add_option("--metric", cl_metric, "k-medoids metric")
        ->check(CLI::IsMember({"euclidean", "manhattan"}));
    cluster_cmd->add_option("--seed", cl_seed, "k-means seed");
    cluster_cmd->add_option("--restarts", cl_restarts, "k-means restarts");
    cluster_cmd->add_option("--output", cl_output, "write report JSON here");

    auto* plot_cmd = app.add_subcommand("plot", "render an SVG scatter plot");
    std::string pl_input, pl_format = "auto", pl_coords, pl_clusters, pl_output;
    bool pl_overlay = false;
    plot_cmd->add_option("--input", pl_input, "input TSV path")->required();
    plot_cmd->add_option("--format", pl_format, "input format")
        ->check(CLI::IsMember(formats_auto));
    plot_cmd->add_option("--coords", pl_coords, "coordinate mode")
        ->required()
        ->check(CLI::IsMember({"original", "modified"}));
    plot_cmd->add_option("--clusters", pl_clusters, "cluster report JSON for hulls");
    plot_cmd->add_flag("--overlay", pl_overlay, "draw Ord-plane reference lines");
    plot_cmd->add_option("--output", pl_output, "output SVG path")->required();

    auto* theory_cmd = app.add_subcommand("theory", "theoretical distribution landmarks");
    std::string th_dist, th_params;
    bool th_classify = false;
    theory_cmd->add_option("--dist", th_dist, "distribution family")
        ->required()
        ->check(CLI::IsMember(
            {"binomial", "poisson", "negbinomial", "hypergeometric", "betabinomial"}));
    theory_cmd->add_option("--params", th_params, "comma-separated parameters")->required();
    theory_cmd->add_flag("--classify", th_classify, "report Ord-plane regions");

    auto* count_cmd = app.add_subcommand("count", "count graphemes in a text");
    std::string co_text, co_alphabet, co_output, co_name;
    bool co_fold = false;
    count_cmd->add_option("--text", co_text, "UTF-8 text path")->required();
    count_cmd->add_option("--alphabet", co_alphabet, "alphabet path (one unit per line)")
        ->required();
    count_cmd->add_flag("--fold-case", co_fold, "lowercase text and alphabet");
    count_cmd->add_option("--output", co_output, "output long TSV path")->required();
    count_cmd->add_option("--name", co_name, "language name (default: text file stem)");

    auto* reproduce_cmd =
        app.add_subcommand("reproduce", "run the bundled 11-language experiment");
    std::uint64_t rp_seed = 42;
    std::string rp_outdir;
    reproduce_cmd->add_option("--seed", rp_seed, "k-means seed");
    reproduce_cmd->add_option("--output-dir", rp_outdir, "write JSON/CSV/SVG reports here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (indices_cmd->parsed())
            return cmd_indices(in_input, in_format, in_output);
        if (ord_cmd->parsed())
            return cmd_ord(ord_input, ord_format, ord_output);
        if (cluster_cmd->parsed()) {
            qvord::RunConfig config;
            config.input_path = cl_input;
            config.format = parse_format(cl_format);
            config.coords = parse_coords(cl_coords);
            config.method =
                cl_method == "kmeans" ? ClusterMethod::KMeans : ClusterMethod::KMedoids;
            config.variant = parse_variant(cl_variant);
            config.metric =
                cl_metric == "euclidean" ? Metric::Euclidean : Metric::Manhattan;
            config.k = cl_k;
            config.seed = cl_seed;
            config.restarts = cl_restarts;
            config.json_path = cl_output;
            return cmd_cluster(config);
        }
        if (plot_cmd->parsed())
            return cmd_plot(pl_input, pl_format, pl_coords, pl_clusters, pl_overlay,
                            pl_output);
        if (theory_cmd->parsed())
            return cmd_theory(th_dist, th_params, th_classify);
        if (count_cmd->parsed())
            return cmd_count(co_text, co_alphabet, co_fold, co_output, co_name);
        if (reproduce_cmd->parsed())
            return cmd_reproduce(rp_seed, rp_outdir);
    } catch (const qvord::Error& e) {
        std::cerr << "qvord: error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "qvord: unexpected error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
