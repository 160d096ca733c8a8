#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "forge/dom.hpp"
#include "forge/lang_id.hpp"
#include "forge/url.hpp"

namespace forge::assemble {

enum class ImageFormat { JPG, JPEG, PNG, WEBP, Other };

const char* format_name(ImageFormat f);
std::optional<ImageFormat> format_from_name(std::string_view name);

// Format implied by the URL filename extension; nullopt when there is no
// extension to judge by (the post-fetch header sniff then decides).
std::optional<ImageFormat> format_from_filename(std::string_view filename);

struct ImageRef {
    std::string src_url;   // absolute
    std::string alt_text;  // may be empty
    std::string filename;  // final path component, lowercased
    std::optional<std::string> figcaption;
    std::optional<int> width_px;   // set only after fetch + decode
    std::optional<int> height_px;
    std::optional<ImageFormat> format;

    bool operator==(const ImageRef&) const = default;
};

struct TextSegment {
    std::string text;
    bool operator==(const TextSegment&) const = default;
};

struct ImageSegment {
    ImageRef image;
    bool operator==(const ImageSegment&) const = default;
};

using Segment = std::variant<TextSegment, ImageSegment>;

struct InterleavedDocument {
    std::string doc_id;      // stable content hash (fnv1a128)
    std::string source_url;  // canonical
    std::string domain;      // host of source_url
    std::string crawl_date;  // "YYYY-MM-DD"
    lang::LanguageVerdict language;
    std::vector<Segment> segments;

    std::size_t image_count() const;
    bool operator==(const InterleavedDocument&) const = default;
};

struct RecordMeta {
    std::string source_url;  // canonical form expected
    std::string crawl_date;
    lang::LanguageVerdict language;
};

// In-order linearization of a pruned tree: block-level elements close the
// current text paragraph, every <img> becomes an image segment, figcaption
// text attaches to the nearest preceding image inside the same <figure>.
// Relative srcs resolve against base_url (src, then largest srcset
// candidate, then data-src). Throws Error("empty after assembly") when
// nothing is emitted.
InterleavedDocument linearize(const dom::DomNode& pruned, const Url& base_url,
                              const RecordMeta& meta);

// Recomputed the same way linearize derives it; exposed so filtered
// documents keep a consistent id scheme.
std::string compute_doc_id(const std::string& source_url,
                           const std::vector<Segment>& segments);

}  // namespace forge::assemble
