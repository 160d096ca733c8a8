#include "forge/filters.hpp"

#include <algorithm>
#include <cmath>

#include "forge/error.hpp"
#include "forge/lang_id.hpp"
#include "forge/textstats.hpp"
#include "forge/unicode.hpp"

namespace forge::filter {

void Thresholds::validate() const {
    if (para_min_words > para_max_words)
        throw ConfigError("para_min_words > para_max_words");
    if (doc_min_words > doc_max_words)
        throw ConfigError("doc_min_words > doc_max_words");
    if (doc_min_images > doc_max_images)
        throw ConfigError("doc_min_images > doc_max_images");
    if (aspect_min <= 0 || aspect_max <= 0 ||
        std::abs(aspect_min * aspect_max - 1.0) > 1e-9)
        throw ConfigError("aspect_min must equal 1/aspect_max");
    for (double ratio : {char_rep_max, word_rep_max_para, word_rep_max_doc, common_word_min}) {
        if (ratio < 0.0 || ratio > 1.0)
            throw ConfigError("ratio threshold outside [0,1]");
    }
    if (img_min_side_px < 1 || alt_min_words < 0 || line_min_words < 0 ||
        char_ngram < 1 || word_ngram < 1)
        throw ConfigError("non-positive threshold");
}

const char* reason_name(Reason r) {
    switch (r) {
        case Reason::Ok: return "ok";
        case Reason::BadFormat: return "bad_format";
        case Reason::TooSmall: return "too_small";
        case Reason::BadAspect: return "bad_aspect";
        case Reason::BlockedUrl: return "blocked_url";
        case Reason::BlockedFilename: return "blocked_filename";
        case Reason::BlockedAltWord: return "blocked_alt_word";
        case Reason::Nsfw: return "nsfw";
        case Reason::TooFewWords: return "too_few_words";
        case Reason::TooManyWords: return "too_many_words";
        case Reason::CharRepetition: return "char_repetition";
        case Reason::WordRepetition: return "word_repetition";
        case Reason::LowCommonWords: return "low_common_words";
        case Reason::NoImages: return "no_images";
        case Reason::TooManyImages: return "too_many_images";
        case Reason::NsfwDocument: return "nsfw_document";
    }
    return "unknown";
}

std::optional<Reason> reason_from_name(std::string_view name) {
    for (int i = 0; i <= static_cast<int>(Reason::NsfwDocument); ++i) {
        const auto r = static_cast<Reason>(i);
        if (name == reason_name(r)) return r;
    }
    return std::nullopt;
}

Blocklists Blocklists::defaults() {
    Blocklists b;
    b.url_substrings = {"logo", "icon", "banner", "social", "widget"};
    b.filename_substrings = {"default", "placeholder"};
    b.alt_blockwords = {"download", "pdf", "mp4", "mp3", "chapter", "video", "audio"};
    b.nsfw_substrings = {"porn", "xxx", "sex", "nude", "naked", "fuck", "hentai"};
    b.boilerplate_phrases = {
        "continue reading", "read more",       "click here",
        "subscribe",        "sign up",         "share on facebook",
        "share on twitter", "share this",      "follow us",
        "about us",         "download our app", "also read",
        "advertisement",    "skip to content", "all rights reserved",
        "terms of use",     "privacy policy",  "next story",
        "view all comments",
    };
    return b;
}

const std::unordered_set<std::string>& Blocklists::stopwords_for(
    const std::string& lang) const {
    static const std::unordered_set<std::string> kEmpty;
    const auto it = stopwords.find(lang);
    return it == stopwords.end() ? kEmpty : it->second;
}

namespace {

bool any_substring(std::string_view haystack,
                   const std::vector<std::string>& needles) {
    for (const auto& needle : needles) {
        if (uni::contains_ci(haystack, needle)) return true;
    }
    return false;
}

}  // namespace

Verdict filter_image_node(const assemble::ImageRef& ref, const Thresholds& th,
                          const Blocklists& bl) {
    using assemble::ImageFormat;
    if (ref.format && *ref.format == ImageFormat::Other)
        return Verdict::reject(Reason::BadFormat);
    if (ref.width_px && ref.height_px) {
        const int w = *ref.width_px;
        const int h = *ref.height_px;
        if (std::min(w, h) < th.img_min_side_px)
            return Verdict::reject(Reason::TooSmall);
        const double aspect = static_cast<double>(w) / static_cast<double>(h);
        if (aspect < th.aspect_min || aspect > th.aspect_max)
            return Verdict::reject(Reason::BadAspect);
    }
    if (any_substring(ref.src_url, bl.url_substrings))
        return Verdict::reject(Reason::BlockedUrl);
    if (any_substring(ref.filename, bl.filename_substrings))
        return Verdict::reject(Reason::BlockedFilename);
    if (any_substring(ref.filename, bl.alt_blockwords) ||
        any_substring(ref.alt_text, bl.alt_blockwords))
        return Verdict::reject(Reason::BlockedAltWord);
    return Verdict::ok();
}

bool is_nsfw_image(const assemble::ImageRef& ref, const Blocklists& bl) {
    return any_substring(ref.filename, bl.nsfw_substrings) ||
           any_substring(ref.alt_text, bl.nsfw_substrings);
}

std::string clean_paragraph(std::string_view text, const Blocklists& bl,
                            const Thresholds& th) {
    std::string out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;

        const lang::ScriptClass cls = lang::classify_line_script(line);
        const bool keep =
            cls != lang::ScriptClass::LatinOnly &&
            cls != lang::ScriptClass::NumericSymbolic &&
            uni::token_count(line) >= static_cast<std::size_t>(th.line_min_words) &&
            !any_substring(line, bl.boilerplate_phrases);
        if (keep) {
            if (!out.empty()) out.push_back('\n');
            out.append(line);
        }
        if (eol == text.size()) break;
    }
    return out;
}

Verdict filter_paragraph(std::string_view text, const Thresholds& th,
                         const std::unordered_set<std::string>& stopwords) {
    const std::size_t words = uni::token_count(text);
    if (words < static_cast<std::size_t>(th.para_min_words))
        return Verdict::reject(Reason::TooFewWords);
    if (words > static_cast<std::size_t>(th.para_max_words))
        return Verdict::reject(Reason::TooManyWords);
    if (text::char_repetition_ratio(text, th.char_ngram) > th.char_rep_max)
        return Verdict::reject(Reason::CharRepetition);
    if (text::word_repetition_ratio(text, th.word_ngram) > th.word_rep_max_para)
        return Verdict::reject(Reason::WordRepetition);
    if (!stopwords.empty() &&
        text::common_word_ratio(text, stopwords) < th.common_word_min)
        return Verdict::reject(Reason::LowCommonWords);
    return Verdict::ok();
}

DocumentResult filter_document(const assemble::InterleavedDocument& doc,
                               const Thresholds& th, const Blocklists& bl) {
    DocumentResult result;
    const auto& stopwords = bl.stopwords_for(doc.language.language);

    std::vector<assemble::Segment> survivors;
    survivors.reserve(doc.segments.size());
    std::size_t image_count = 0;
    std::string doc_text;

    for (const auto& segment : doc.segments) {
        if (const auto* img = std::get_if<assemble::ImageSegment>(&segment)) {
            const Verdict v = filter_image_node(img->image, th, bl);
            if (!v.accepted) {
                result.dropped_images.push_back(v);
                continue;
            }
            survivors.push_back(segment);
            ++image_count;
        } else {
            survivors.push_back(segment);
        }
    }

    // An NSFW image among the surviving nodes sinks the whole document.
    for (const auto& segment : survivors) {
        if (const auto* img = std::get_if<assemble::ImageSegment>(&segment)) {
            if (is_nsfw_image(img->image, bl)) {
                result.verdict = Verdict::reject(Reason::NsfwDocument);
                return result;
            }
        }
    }

    std::vector<assemble::Segment> filtered;
    filtered.reserve(survivors.size());
    for (auto& segment : survivors) {
        if (auto* text = std::get_if<assemble::TextSegment>(&segment)) {
            const std::string cleaned = clean_paragraph(text->text, bl, th);
            if (cleaned.empty()) {
                result.dropped_paragraphs.push_back(
                    Verdict::reject(Reason::TooFewWords));
                continue;
            }
            const Verdict v = filter_paragraph(cleaned, th, stopwords);
            if (!v.accepted) {
                result.dropped_paragraphs.push_back(v);
                continue;
            }
            if (!doc_text.empty()) doc_text.push_back('\n');
            doc_text.append(cleaned);
            filtered.push_back(assemble::TextSegment{cleaned});
        } else {
            filtered.push_back(std::move(segment));
        }
    }

    if (image_count < static_cast<std::size_t>(th.doc_min_images)) {
        result.verdict = Verdict::reject(Reason::NoImages);
        return result;
    }
    if (image_count > static_cast<std::size_t>(th.doc_max_images)) {
        result.verdict = Verdict::reject(Reason::TooManyImages);
        return result;
    }
    const std::size_t words = uni::token_count(doc_text);
    if (words < static_cast<std::size_t>(th.doc_min_words)) {
        result.verdict = Verdict::reject(Reason::TooFewWords);
        return result;
    }
    if (words > static_cast<std::size_t>(th.doc_max_words)) {
        result.verdict = Verdict::reject(Reason::TooManyWords);
        return result;
    }
    if (text::char_repetition_ratio(doc_text, th.char_ngram) > th.char_rep_max) {
        result.verdict = Verdict::reject(Reason::CharRepetition);
        return result;
    }
    if (text::word_repetition_ratio(doc_text, th.word_ngram) > th.word_rep_max_doc) {
        result.verdict = Verdict::reject(Reason::WordRepetition);
        return result;
    }
    if (!stopwords.empty() &&
        text::common_word_ratio(doc_text, stopwords) < th.common_word_min) {
        result.verdict = Verdict::reject(Reason::LowCommonWords);
        return result;
    }

    assemble::InterleavedDocument out = doc;
    out.segments = std::move(filtered);
    result.verdict = Verdict::ok();
    result.doc = std::move(out);
    return result;
}

}  // namespace forge::filter
