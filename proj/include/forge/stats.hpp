#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "forge/assemble.hpp"
#include "forge/caption.hpp"

namespace forge::stats {

// Whitespace token count (maximal non-whitespace runs). The corpus-level
// tokenizer is pluggable through CorpusStats::tokenizer_id; counts are only
// comparable within one tokenizer.
std::size_t token_count(std::string_view text);

struct LanguageStats {
    std::uint64_t documents = 0;
    std::uint64_t tokens = 0;
    std::uint64_t images = 0;

    double avg_tokens_per_doc() const {
        return documents == 0 ? 0.0
                              : static_cast<double>(tokens) / static_cast<double>(documents);
    }
    double avg_images_per_doc() const {
        return documents == 0 ? 0.0
                              : static_cast<double>(images) / static_cast<double>(documents);
    }

    bool operator==(const LanguageStats&) const = default;
};

struct CapLanguageStats {
    std::uint64_t pairs = 0;
    std::uint64_t tokens = 0;

    double avg_tokens() const {
        return pairs == 0 ? 0.0
                          : static_cast<double>(tokens) / static_cast<double>(pairs);
    }

    bool operator==(const CapLanguageStats&) const = default;
};

// Single-pass corpus aggregation. Memory is bounded by the number of
// distinct languages, domains, years and size buckets, not by document
// count. Instances from independent batches combine with merge().
struct CorpusStats {
    static constexpr int kSizeBucketPx = 64;

    std::string tokenizer_id = "whitespace";
    std::map<std::string, LanguageStats> per_language;
    std::map<std::string, CapLanguageStats> cap_per_language;
    std::map<std::string, std::uint64_t> domain_counts;
    std::map<std::uint64_t, std::uint64_t> image_count_histogram;  // images/doc -> docs
    std::map<int, std::uint64_t> year_histogram;
    std::map<std::pair<int, int>, std::uint64_t> image_size_histogram;  // 64px bins
    std::map<std::string, std::uint64_t> cap_resolution_counts;  // low/mid/high

    void add_document(const assemble::InterleavedDocument& doc);
    void add_pair(const caption::CaptionPair& pair);

    std::uint64_t total_documents() const;
    std::uint64_t total_pairs() const;

    // Fractions over classified pairs; sums to 1 when any exist.
    std::map<std::string, double> cap_resolution_shares() const;

    bool operator==(const CorpusStats&) const = default;
};

// Pointwise sum; averages are recomputed from the merged sums. Throws Error
// when tokenizer ids differ.
CorpusStats merge(const CorpusStats& a, const CorpusStats& b);

CorpusStats aggregate(const std::vector<assemble::InterleavedDocument>& docs,
                      const std::vector<caption::CaptionPair>& pairs);

std::string to_json(const CorpusStats& stats, bool pretty = true);
CorpusStats from_json(const std::string& json_text);

// CSV tables: language,documents,tokens,avg_tokens_per_doc,images,avg_images_per_doc
// and language,pairs,tokens,avg_tokens.
std::string to_language_csv(const CorpusStats& stats);
std::string to_cap_csv(const CorpusStats& stats);

// Rolls domain_counts up by theme using a "<hostname> <theme>" mapping
// file; hosts without an entry land in "unmapped".
std::map<std::string, std::uint64_t> theme_rollup(
    const CorpusStats& stats,
    const std::map<std::string, std::string>& host_theme);
std::map<std::string, std::string> load_domain_themes(const std::string& path);

}  // namespace forge::stats
