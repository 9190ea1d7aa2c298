#include "qvord/freqdata.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qvord/error.hpp"

namespace qvord {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return cells;
}

std::uint64_t parse_count(const std::string& cell, std::size_t line_no) {
    if (cell.empty())
        throw ParseError("empty count cell", line_no);
    std::size_t i = 0;
    bool negative = false;
    if (cell[0] == '-' || cell[0] == '+') {
        negative = cell[0] == '-';
        i = 1;
    }
    if (i == cell.size())
        throw ParseError("count '" + cell + "' is not an integer", line_no);
    std::uint64_t value = 0;
    for (; i < cell.size(); ++i) {
        char c = cell[i];
        if (c < '0' || c > '9')
            throw ParseError("count '" + cell + "' is not an integer", line_no);
        if (value > (UINT64_MAX - (c - '0')) / 10)
            throw ValueError("count '" + cell + "' out of range");
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (negative && value > 0)
        throw ValueError("negative count '" + cell + "' at line " +
                         std::to_string(line_no));
    return value;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return line;
}

std::map<std::string, CategoryTable> finish_tables(
    std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::uint64_t>>>&&
        raw) {
    if (raw.empty())
        throw EmptyInput("no data rows found");
    std::map<std::string, CategoryTable> tables;
    for (auto& [lang, lc] : raw) {
        try {
            tables.emplace(lang, CategoryTable(std::move(lc.first), std::move(lc.second)));
        } catch (const Error& e) {
            throw Error(e.kind(), lang + ": " + e.what());
        }
    }
    return tables;
}

std::map<std::string, CategoryTable> load_long(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw EmptyInput("empty stream");
    ++line_no;
    auto header = split_tabs(strip_cr(line));
    if (header.size() != 3 || header[0] != "language" || header[1] != "grapheme" ||
        header[2] != "count")
        throw ParseError("expected header 'language\\tgrapheme\\tcount'", line_no);

    std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::uint64_t>>>
        raw;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty())
            continue;
        auto cells = split_tabs(line);
        if (cells.size() != 3)
            throw ParseError("expected 3 tab-separated cells, got " +
                                 std::to_string(cells.size()),
                             line_no);
        const std::string& lang = cells[0];
        const std::string& label = cells[1];
        if (lang.empty() || label.empty())
            throw ParseError("empty language or grapheme cell", line_no);
        std::string key = lang + '\t' + label;
        if (!seen.insert(key).second)
            throw DuplicateError("duplicate entry (" + lang + ", " + label + ") at line " +
                                 std::to_string(line_no));
        std::uint64_t count = parse_count(cells[2], line_no);
        auto& entry = raw[lang];
        entry.first.push_back(label);
        entry.second.push_back(count);
    }
    return finish_tables(std::move(raw));
}

std::map<std::string, CategoryTable> load_matrix(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw EmptyInput("empty stream");
    ++line_no;
    auto header = split_tabs(strip_cr(line));
    if (header.size() < 2 || header[0] != "rank")
        throw ParseError("expected header 'rank\\t<lang>...'", line_no);
    std::vector<std::string> langs(header.begin() + 1, header.end());
    {
        std::unordered_set<std::string> names;
        for (const auto& lang : langs) {
            if (lang.empty())
                throw ParseError("empty language column name", line_no);
            if (!names.insert(lang).second)
                throw DuplicateError("duplicate language column '" + lang + "'");
        }
    }

    std::vector<std::vector<std::uint64_t>> columns(langs.size());
    std::vector<bool> column_closed(langs.size(), false);
    std::size_t expected_rank = 0;
    bool any_row = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty())
            continue;
        any_row = true;
        ++expected_rank;
        auto cells = split_tabs(line);
        if (cells.size() != langs.size() + 1)
            throw ParseError("expected " + std::to_string(langs.size() + 1) +
                                 " cells, got " + std::to_string(cells.size()),
                             line_no);
        std::uint64_t rank = parse_count(cells[0], line_no);
        if (rank != expected_rank) {
            if (rank < expected_rank)
                throw DuplicateError("duplicate rank row " + std::to_string(rank) +
                                     " at line " + std::to_string(line_no));
            throw ParseError("rank " + std::to_string(rank) + " out of sequence " +
                                 "(expected " + std::to_string(expected_rank) + ")",
                             line_no);
        }
        for (std::size_t c = 0; c < langs.size(); ++c) {
            const std::string& cell = cells[c + 1];
            if (cell.empty()) {
                column_closed[c] = true;
                continue;
            }
            if (column_closed[c])
                throw ParseError("gap in column '" + langs[c] + "': value after a blank cell",
                                 line_no);
            columns[c].push_back(parse_count(cell, line_no));
        }
    }
    if (!any_row)
        throw EmptyInput("matrix has a header but no data rows");

    std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::uint64_t>>>
        raw;
    for (std::size_t c = 0; c < langs.size(); ++c) {
        if (columns[c].empty())
            throw EmptyInput("column '" + langs[c] + "' has no values");
        std::vector<std::string> labels(columns[c].size());
        for (std::size_t r = 0; r < labels.size(); ++r)
            labels[r] = std::to_string(r + 1);
        raw[langs[c]] = {std::move(labels), std::move(columns[c])};
    }
    return finish_tables(std::move(raw));
}

// UTF-8 iteration: returns the byte length of the code point at `pos`
// (1 for malformed bytes, so parsing always advances).
std::size_t utf8_len(std::string_view s, std::size_t pos) {
    unsigned char b = static_cast<unsigned char>(s[pos]);
    std::size_t len = 1;
    if ((b & 0xe0) == 0xc0)
        len = 2;
    else if ((b & 0xf0) == 0xe0)
        len = 3;
    else if ((b & 0xf8) == 0xf0)
        len = 4;
    if (pos + len > s.size())
        return 1;
    for (std::size_t i = 1; i < len; ++i)
        if ((static_cast<unsigned char>(s[pos + i]) & 0xc0) != 0x80)
            return 1;
    return len;
}

char32_t decode_cp(std::string_view s, std::size_t pos, std::size_t len) {
    unsigned char b = static_cast<unsigned char>(s[pos]);
    char32_t cp = 0;
    switch (len) {
    case 1: return b;
    case 2: cp = b & 0x1f; break;
    case 3: cp = b & 0x0f; break;
    default: cp = b & 0x07; break;
    }
    for (std::size_t i = 1; i < len; ++i)
        cp = (cp << 6) | (static_cast<unsigned char>(s[pos + i]) & 0x3f);
    return cp;
}

void encode_cp(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

// Simple per-codepoint lowercase fold: ASCII, Latin-1, Latin Extended-A,
// Cyrillic. Enough for the Latin- and Cyrillic-script orthographies this
// project handles. Latin Extended-A alternates pairing parity around the
// unpaired code points U+0138 (kra) and U+0149.
char32_t fold_cp(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z')
        return cp + 0x20;
    if (cp >= 0xc0 && cp <= 0xde && cp != 0xd7) // Latin-1 uppercase, skip ×
        return cp + 0x20;
    if (cp >= 0x100 && cp <= 0x137) // Ā..ķ: even is uppercase
        return (cp & 1) == 0 ? cp + 1 : cp;
    if (cp >= 0x139 && cp <= 0x148) // Ĺ..ň: odd is uppercase
        return (cp & 1) == 1 ? cp + 1 : cp;
    if (cp >= 0x14a && cp <= 0x177) // Ŋ..ŵ: even is uppercase
        return (cp & 1) == 0 ? cp + 1 : cp;
    if (cp == 0x178) // Ÿ
        return 0xff;
    if (cp >= 0x179 && cp <= 0x17e) // Ź..ž: odd is uppercase
        return (cp & 1) == 1 ? cp + 1 : cp;
    if (cp == 0x17f) // long s
        return U's';
    if (cp >= 0x410 && cp <= 0x42f) // Cyrillic А..Я
        return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40f) // Cyrillic Ѐ..Џ
        return cp + 0x50;
    return cp;
}

} // namespace

std::string fold_case_utf8(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t len = utf8_len(text, pos);
        encode_cp(fold_cp(decode_cp(text, pos, len)), out);
        pos += len;
    }
    return out;
}

CategoryTable::CategoryTable(std::vector<std::string> labels,
                             std::vector<std::uint64_t> counts)
    : labels_(std::move(labels)), counts_(std::move(counts)) {
    if (labels_.size() != counts_.size())
        throw ValueError("labels and counts differ in length");
    if (counts_.size() < 2)
        throw DegenerateCategories("need at least 2 categories, got " +
                                   std::to_string(counts_.size()));
    std::unordered_set<std::string_view> seen;
    for (const auto& label : labels_)
        if (!seen.insert(label).second)
            throw DuplicateError("duplicate category label '" + label + "'");
    for (std::uint64_t c : counts_) {
        total_ += c;
        if (c > 0)
            ++nonzero_;
    }
    if (total_ == 0)
        throw EmptyInput("all counts are zero");
}

RankedTable::RankedTable(std::vector<std::uint64_t> counts, std::vector<std::string> labels)
    : counts_(std::move(counts)), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != counts_.size())
        throw ValueError("labels and counts differ in length");
    for (std::size_t i = 0; i + 1 < counts_.size(); ++i)
        if (counts_[i] < counts_[i + 1])
            throw ValueError("counts are not in non-increasing order");
    total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

Alphabet::Alphabet(std::vector<std::string> graphemes, bool fold_case)
    : fold_case_(fold_case) {
    if (graphemes.empty())
        throw EmptyInput("alphabet has no graphemes");
    graphemes_.reserve(graphemes.size());
    std::unordered_set<std::string> seen;
    for (auto& g : graphemes) {
        if (g.empty())
            throw ValueError("empty grapheme unit");
        std::string unit = fold_case_ ? fold_case_utf8(g) : std::move(g);
        if (!seen.insert(unit).second)
            throw DuplicateError("duplicate grapheme '" + unit + "' after case folding");
        graphemes_.push_back(std::move(unit));
    }
}

Alphabet Alphabet::from_stream(std::istream& in, bool fold_case) {
    std::vector<std::string> graphemes;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty() || line[0] == '#')
            continue;
        graphemes.push_back(line);
    }
    return Alphabet(std::move(graphemes), fold_case);
}

std::map<std::string, CategoryTable> load_tables(std::istream& in, TableFormat format) {
    return format == TableFormat::Long ? load_long(in) : load_matrix(in);
}

std::map<std::string, CategoryTable> load_tables_file(const std::string& path,
                                                      TableFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValueError("cannot open '" + path + "'");
    return load_tables(in, format);
}

void save_tables(const std::map<std::string, CategoryTable>& tables, std::ostream& out,
                 TableFormat format) {
    if (format == TableFormat::Long) {
        out << "language\tgrapheme\tcount\n";
        for (const auto& [lang, table] : tables)
            for (std::size_t i = 0; i < table.categories(); ++i)
                out << lang << '\t' << table.labels()[i] << '\t' << table.counts()[i]
                    << '\n';
        return;
    }
    out << "rank";
    std::size_t max_k = 0;
    for (const auto& [lang, table] : tables) {
        out << '\t' << lang;
        max_k = std::max(max_k, table.categories());
    }
    out << '\n';
    for (std::size_t r = 0; r < max_k; ++r) {
        out << r + 1;
        for (const auto& [lang, table] : tables) {
            out << '\t';
            if (r < table.categories())
                out << table.counts()[r];
        }
        out << '\n';
    }
}

CategoryTable count_graphemes(std::string_view text, const Alphabet& alphabet) {
    if (text.empty())
        throw EmptyInput("empty text");
    std::string folded;
    if (alphabet.fold_case()) {
        folded = fold_case_utf8(text);
        text = folded;
    }

    const auto& units = alphabet.graphemes();
    std::unordered_map<std::string_view, std::size_t> index;
    std::size_t max_len = 0;
    for (std::size_t i = 0; i < units.size(); ++i) {
        index.emplace(units[i], i);
        max_len = std::max(max_len, units[i].size());
    }

    std::vector<std::uint64_t> counts(units.size(), 0);
    std::size_t pos = 0;
    std::uint64_t consumed = 0;
    while (pos < text.size()) {
        std::size_t remaining = text.size() - pos;
        bool matched = false;
        for (std::size_t len = std::min(max_len, remaining); len >= 1; --len) {
            auto it = index.find(text.substr(pos, len));
            if (it != index.end()) {
                ++counts[it->second];
                ++consumed;
                pos += len;
                matched = true;
                break;
            }
        }
        if (!matched)
            pos += utf8_len(text, pos);
    }
    if (consumed == 0)
        throw EmptyInput("no alphabet unit matched the text");
    return CategoryTable(units, std::move(counts));
}

RankedTable rank_frequencies(const CategoryTable& table) {
    std::vector<std::size_t> order(table.categories());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (table.counts()[a] != table.counts()[b])
            return table.counts()[a] > table.counts()[b];
        return table.labels()[a] < table.labels()[b];
    });
    std::vector<std::uint64_t> counts(order.size());
    std::vector<std::string> labels(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        counts[i] = table.counts()[order[i]];
        labels[i] = table.labels()[order[i]];
    }
    return RankedTable(std::move(counts), std::move(labels));
}

} // namespace qvord
