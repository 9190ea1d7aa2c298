#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qvord {

/// Labeled non-negative counts over K >= 2 categories. Immutable after
/// construction; N = sum of counts must be at least 1. Zero-count
/// categories are legal and count toward K.
class CategoryTable {
public:
    CategoryTable(std::vector<std::string> labels, std::vector<std::uint64_t> counts);

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

    std::uint64_t total() const noexcept { return total_; }           // N
    std::size_t categories() const noexcept { return counts_.size(); } // K
    std::size_t nonzero_categories() const noexcept { return nonzero_; }

    double proportion(std::size_t i) const {
        return static_cast<double>(counts_[i]) / static_cast<double>(total_);
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    std::size_t nonzero_ = 0;
};

/// Counts in non-increasing order; position i holds rank i+1. Labels, when
/// present, carry the source categories permuted into rank order.
class RankedTable {
public:
    explicit RankedTable(std::vector<std::uint64_t> counts,
                         std::vector<std::string> labels = {});

    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    std::uint64_t total() const noexcept { return total_; }
    std::size_t ranks() const noexcept { return counts_.size(); }

private:
    std::vector<std::uint64_t> counts_;
    std::vector<std::string> labels_;
    std::uint64_t total_ = 0;
};

/// A grapheme inventory: ordered unique units (single characters or
/// multigraphs such as "ch"). With fold_case the units are stored and
/// matched in lowercase; folding covers ASCII, Latin-1, Latin Extended-A
/// and Cyrillic, which is sufficient for Slavic orthographies.
class Alphabet {
public:
    Alphabet(std::vector<std::string> graphemes, bool fold_case);

    /// One grapheme per line; blank lines and '#'-prefixed comments ignored.
    static Alphabet from_stream(std::istream& in, bool fold_case);

    const std::vector<std::string>& graphemes() const noexcept { return graphemes_; }
    bool fold_case() const noexcept { return fold_case_; }

private:
    std::vector<std::string> graphemes_;
    bool fold_case_;
};

enum class TableFormat { Long, Matrix };

/// Parse a long-format ("language<TAB>grapheme<TAB>count") or matrix-format
/// ("rank<TAB>lang1<TAB>lang2...") TSV stream into one table per language.
/// Matrix blank cells mean the category is absent; explicit "0" is a
/// zero-count category.
std::map<std::string, CategoryTable> load_tables(std::istream& in, TableFormat format);

std::map<std::string, CategoryTable> load_tables_file(const std::string& path,
                                                      TableFormat format);

/// Inverse of load_tables for round-tripping. Matrix output writes counts
/// positionally, so labels survive only for rank-labeled ("1".."K") tables.
void save_tables(const std::map<std::string, CategoryTable>& tables, std::ostream& out,
                 TableFormat format);

/// Greedy longest-match tokenization of UTF-8 text against the alphabet;
/// unmatched code points are skipped. Every alphabet unit becomes a
/// category, so K = |alphabet|.
CategoryTable count_graphemes(std::string_view text, const Alphabet& alphabet);

/// Sort categories by descending count, ties by ascending label.
RankedTable rank_frequencies(const CategoryTable& table);

/// Case folding used by Alphabet/count_graphemes, exposed for tests.
std::string fold_case_utf8(std::string_view text);

} // namespace qvord
