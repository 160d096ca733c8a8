#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "forge/assemble.hpp"

namespace forge::filter {

// Cutoffs for the node / paragraph / document filter hierarchy. Defaults
// are the shipped threshold ledger; everything is overridable from config.
struct Thresholds {
    int para_min_words = 4;
    int para_max_words = 1000;
    int doc_min_words = 10;
    int doc_max_words = 2000;
    double char_rep_max = 0.1;
    double word_rep_max_para = 0.1;
    double word_rep_max_doc = 0.2;
    double common_word_min = 0.1;
    int img_min_side_px = 150;
    double aspect_min = 0.2;
    double aspect_max = 5.0;
    int doc_min_images = 1;
    int doc_max_images = 30;
    int alt_min_words = 5;
    int line_min_words = 4;
    int char_ngram = 5;
    int word_ngram = 2;

    // The stricter main-text profile (--strict-8).
    void apply_strict8() { para_min_words = 8; }

    // Throws ConfigError on inconsistent bounds (min > max,
    // aspect_min != 1/aspect_max, ratios outside [0,1]).
    void validate() const;
};

enum class Reason {
    Ok,
    BadFormat,
    TooSmall,
    BadAspect,
    BlockedUrl,
    BlockedFilename,
    BlockedAltWord,
    Nsfw,
    TooFewWords,
    TooManyWords,
    CharRepetition,
    WordRepetition,
    LowCommonWords,
    NoImages,
    TooManyImages,
    NsfwDocument,
};

const char* reason_name(Reason r);
std::optional<Reason> reason_from_name(std::string_view name);

struct Verdict {
    bool accepted = false;
    Reason reason = Reason::Ok;

    static Verdict ok() { return {true, Reason::Ok}; }
    static Verdict reject(Reason r) { return {false, r}; }

    bool operator==(const Verdict&) const = default;
};

// All entries lowercase; matching is case-insensitive substring search.
struct Blocklists {
    std::vector<std::string> url_substrings;
    std::vector<std::string> filename_substrings;
    std::vector<std::string> alt_blockwords;
    std::vector<std::string> nsfw_substrings;
    std::vector<std::string> boilerplate_phrases;
    std::unordered_map<std::string, std::unordered_set<std::string>> stopwords;

    static Blocklists defaults();

    // Empty set when the language has no list; the common-word check is
    // then skipped rather than rejecting everything.
    const std::unordered_set<std::string>& stopwords_for(const std::string& lang) const;
};

// Node-level image filter. Format and dimension checks are skipped while
// unknown (pre-fetch) and re-applied once fetch+decode fills them in.
Verdict filter_image_node(const assemble::ImageRef& ref, const Thresholds& th,
                          const Blocklists& bl);

bool is_nsfw_image(const assemble::ImageRef& ref, const Blocklists& bl);

// Line-level cleaning: drops Latin-only / numeric-symbolic lines, lines
// under line_min_words, and lines carrying a boilerplate phrase. May
// return an empty string.
std::string clean_paragraph(std::string_view text, const Blocklists& bl,
                            const Thresholds& th);

// Paragraph-level verdict, checks in ledger order; first failure wins.
Verdict filter_paragraph(std::string_view text, const Thresholds& th,
                         const std::unordered_set<std::string>& stopwords);

struct DocumentResult {
    Verdict verdict;
    std::optional<assemble::InterleavedDocument> doc;  // set iff accepted
    std::vector<Verdict> dropped_images;  // audit trail of node rejects
    std::vector<Verdict> dropped_paragraphs;
    std::size_t dropped_unfetched = 0;  // fetch-stage drops without a verdict
};

// Full hierarchy: node-level image filtering, NSFW document rejection,
// paragraph cleaning + filtering, then document-level balance and
// coherence bounds. Surviving segments keep their original order.
DocumentResult filter_document(const assemble::InterleavedDocument& doc,
                               const Thresholds& th, const Blocklists& bl);

}  // namespace forge::filter
