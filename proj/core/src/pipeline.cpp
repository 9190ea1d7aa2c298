#include "qvord/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qvord/error.hpp"
#include "qvord/svg.hpp"
#include "qvord/version.hpp"
#include "text_format.hpp"

namespace qvord {

namespace {

using detail::format_double;

void json_string(std::string& out, const std::string& value) {
    out += '"';
    for (char c : value) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

// Minimal JSON emitter. Callers list keys in sorted order; doubles go
// through the %.17g round-trip formatter so output is byte-stable.
struct JsonOut {
    std::string text;
    bool need_comma = false;

    void raw(const std::string& s) { text += s; }
    void sep() {
        if (need_comma)
            text += ',';
        need_comma = false;
    }
    void open_obj() { sep(); text += '{'; }
    void close_obj() { text += '}'; need_comma = true; }
    void open_arr() { sep(); text += '['; }
    void close_arr() { text += ']'; need_comma = true; }
    void key(const std::string& k) {
        sep();
        json_string(text, k);
        text += ':';
    }
    void value_str(const std::string& v) { sep(); json_string(text, v); need_comma = true; }
    void value_num(double v) { sep(); text += format_double(v); need_comma = true; }
    void value_int(long long v) { sep(); text += std::to_string(v); need_comma = true; }
    void value_uint(unsigned long long v) { sep(); text += std::to_string(v); need_comma = true; }
    void value_bool(bool v) { sep(); text += v ? "true" : "false"; need_comma = true; }
};

void emit_cluster_result(JsonOut& j, const ClusterResult& clusters) {
    j.open_obj();
    j.key("assignment");
    j.open_obj();
    for (const auto& [id, c] : clusters.assignment) { // std::map: sorted by id
        j.key(id);
        j.value_int(c);
    }
    j.close_obj();
    j.key("centers");
    j.open_arr();
    for (const auto& center : clusters.centers) {
        j.open_arr();
        for (double v : center)
            j.value_num(v);
        j.close_arr();
    }
    j.close_arr();
    j.key("groups");
    j.open_arr();
    for (const auto& group : canonical_groups(clusters)) {
        j.open_arr();
        for (const auto& id : group)
            j.value_str(id);
        j.close_arr();
    }
    j.close_arr();
    j.key("iterations");
    j.value_int(clusters.iterations);
    j.key("medoids");
    j.open_arr();
    for (const auto& id : clusters.medoids)
        j.value_str(id);
    j.close_arr();
    j.key("method");
    j.value_str(clusters.method);
    j.key("objective");
    j.value_num(clusters.objective);
    j.key("restarts");
    j.value_int(clusters.restarts);
    j.key("seed");
    j.value_uint(clusters.seed);
    j.key("variant");
    j.value_str(clusters.variant);
    j.key("warnings");
    j.open_arr();
    for (const auto& w : clusters.warnings)
        j.value_str(w);
    j.close_arr();
    j.close_obj();
}

void emit_languages(JsonOut& j, const std::map<std::string, LanguageRecord>& records) {
    j.open_obj();
    for (const auto& [lang, rec] : records) {
        j.key(lang);
        j.open_obj();
        j.key("i");
        j.value_num(rec.ord.i);
        j.key("i_m");
        j.value_num(rec.i_m);
        j.key("inventory_size");
        j.value_uint(rec.inventory_size);
        j.key("n");
        j.value_uint(rec.n);
        j.key("re");
        j.value_num(rec.indices.re);
        j.key("rr_norm");
        j.value_num(rec.indices.rr_norm);
        j.key("s");
        j.value_num(rec.ord.s);
        j.key("s_m");
        j.value_num(rec.s_m);
        j.key("sda");
        j.value_num(rec.indices.sda);
        j.key("va");
        j.value_num(rec.indices.va);
        j.close_obj();
    }
    j.close_obj();
}

TableFormat sniff_format(std::string_view content) {
    const std::size_t eol = content.find('\n');
    std::string_view header = content.substr(0, eol);
    if (header.starts_with("rank\t"))
        return TableFormat::Matrix;
    if (header.starts_with("language\t"))
        return TableFormat::Long;
    throw ParseError("cannot determine format: header starts neither with 'rank' nor "
                     "'language'",
                     1);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValueError("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw ValueError("failed writing '" + path + "'");
}

} // namespace

const char* to_string(CoordMode mode) {
    switch (mode) {
    case CoordMode::Original: return "original";
    case CoordMode::Modified: return "modified";
    case CoordMode::InventorySize: return "inventory_size";
    }
    return "?";
}

const char* to_string(ClusterMethod method) {
    return method == ClusterMethod::KMeans ? "kmeans" : "kmedoids";
}

std::map<std::string, CategoryTable> load_input(const std::string& path,
                                                std::optional<TableFormat> format) {
    if (path == "bundled:table1") {
        std::string content(bundled_table1());
        std::istringstream in(content);
        return load_tables(in, format.value_or(TableFormat::Matrix));
    }
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw ValueError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    const std::string content = buffer.str();
    const TableFormat f = format ? *format : sniff_format(content);
    std::istringstream in(content);
    return load_tables(in, f);
}

std::map<std::string, LanguageRecord> compute_records(
    const std::map<std::string, CategoryTable>& tables) {
    std::map<std::string, LanguageRecord> records;
    for (const auto& [lang, table] : tables) {
        try {
            LanguageRecord rec;
            rec.n = table.total();
            rec.inventory_size = table.categories();
            rec.indices = index_summary(table);
            rec.ord = ord_coords(empirical_moments(rank_frequencies(table)));
            const ModifiedPoint mod = modified_coords(table);
            rec.i_m = mod.i_m;
            rec.s_m = mod.s_m;
            records.emplace(lang, rec);
        } catch (const Error& e) {
            throw Error(e.kind(), lang + ": " + e.what());
        }
    }
    return records;
}

PointSet coordinate_points(const std::map<std::string, LanguageRecord>& records,
                           CoordMode mode) {
    std::vector<std::vector<double>> points;
    std::vector<std::string> ids;
    points.reserve(records.size());
    ids.reserve(records.size());
    for (const auto& [lang, rec] : records) {
        switch (mode) {
        case CoordMode::Original: points.push_back({rec.ord.i, rec.ord.s}); break;
        case CoordMode::Modified: points.push_back({rec.i_m, rec.s_m}); break;
        case CoordMode::InventorySize:
            points.push_back({static_cast<double>(rec.inventory_size)});
            break;
        }
        ids.push_back(lang);
    }
    return PointSet(std::move(points), std::move(ids));
}

std::string report_to_json(const Report& report) {
    JsonOut j;
    j.open_obj();
    j.key("clusters");
    emit_cluster_result(j, report.clusters);
    j.key("config");
    j.open_obj();
    j.key("coords");
    j.value_str(to_string(report.config.coords));
    j.key("format");
    j.value_str(report.config.format
                    ? (*report.config.format == TableFormat::Long ? "long" : "matrix")
                    : "auto");
    j.key("input");
    j.value_str(report.config.input_path);
    j.key("k");
    j.value_int(report.config.k);
    j.key("method");
    j.value_str(to_string(report.config.method));
    j.key("metric");
    j.value_str(to_string(report.config.metric));
    j.key("overlay");
    j.value_bool(report.config.overlay);
    j.key("restarts");
    j.value_int(report.config.restarts);
    j.key("seed");
    j.value_uint(report.config.seed);
    j.key("variant");
    j.value_str(to_string(report.config.variant));
    j.close_obj();
    j.key("languages");
    emit_languages(j, report.languages);
    j.key("version");
    j.value_str(report.version);
    j.close_obj();
    j.text += '\n';
    return j.text;
}

std::string records_to_json(const std::map<std::string, LanguageRecord>& records,
                            const std::string& what) {
    JsonOut j;
    j.open_obj();
    j.key("command");
    j.value_str(what);
    j.key("languages");
    emit_languages(j, records);
    j.key("version");
    j.value_str(kVersion);
    j.close_obj();
    j.text += '\n';
    return j.text;
}

std::string report_to_csv(const Report& report) {
    std::string csv = "language,n,inventory_size,va,sda,re,rr_norm,i,s,i_m,s_m,cluster\n";
    for (const auto& [lang, rec] : report.languages) {
        csv += lang;
        csv += ',' + std::to_string(rec.n);
        csv += ',' + std::to_string(rec.inventory_size);
        csv += ',' + format_double(rec.indices.va);
        csv += ',' + format_double(rec.indices.sda);
        csv += ',' + format_double(rec.indices.re);
        csv += ',' + format_double(rec.indices.rr_norm);
        csv += ',' + format_double(rec.ord.i);
        csv += ',' + format_double(rec.ord.s);
        csv += ',' + format_double(rec.i_m);
        csv += ',' + format_double(rec.s_m);
        csv += ',' + std::to_string(report.clusters.assignment.at(lang));
        csv += '\n';
    }
    return csv;
}

std::map<std::string, int> assignment_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad cluster JSON: ") + e.what(), 1);
    }
    if (!doc.contains("clusters") || !doc["clusters"].contains("assignment"))
        throw ValueError("cluster JSON lacks clusters.assignment");
    std::map<std::string, int> assignment;
    for (const auto& [id, c] : doc["clusters"]["assignment"].items()) {
        if (!c.is_number_integer())
            throw ValueError("assignment for '" + id + "' is not an integer");
        assignment[id] = c.get<int>();
    }
    if (assignment.empty())
        throw EmptyInput("cluster JSON has an empty assignment");
    return assignment;
}

Report run(const RunConfig& config) {
    if (config.k < 2)
        throw ValueError("k must be at least 2");
    const auto tables = load_input(config.input_path, config.format);
    Report report;
    report.config = config;
    report.version = kVersion;
    report.languages = compute_records(tables);

    const PointSet points = coordinate_points(report.languages, config.coords);
    if (config.method == ClusterMethod::KMeans)
        report.clusters = kmeans(points, config.k, config.variant, config.seed,
                                 config.restarts);
    else
        report.clusters = kmedoids_pam(points, config.k, config.metric);

    if (!config.json_path.empty())
        write_file(config.json_path, report_to_json(report));
    if (!config.csv_path.empty())
        write_file(config.csv_path, report_to_csv(report));
    if (!config.svg_path.empty())
        write_file(config.svg_path, render_scatter(points, &report.clusters, config.overlay));
    return report;
}

} // namespace qvord
