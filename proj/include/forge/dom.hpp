#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace forge::dom {

inline constexpr std::string_view kTextTag = "#text";
inline constexpr std::string_view kCommentTag = "#comment";

// Simplified DOM node. Element tags are lowercase; text and comment nodes
// use the sentinel tags above and carry their content in `text`.
struct DomNode {
    std::string tag;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<DomNode> children;
    std::string text;

    bool is_text() const { return tag == kTextTag; }
    bool is_comment() const { return tag == kCommentTag; }
    bool is_element() const { return !is_text() && !is_comment(); }

    const std::string* attr(std::string_view name) const;

    static DomNode text_node(std::string content);
    static DomNode element(std::string tag_name);

    bool operator==(const DomNode&) const = default;
};

// Decodes raw payload bytes to UTF-8. Understands utf-8 (validated, bad
// sequences replaced), latin-1/windows-1252; every other declared charset
// falls back to lossy UTF-8. When no hint is given the first 2 KiB are
// sniffed for a <meta charset>.
std::string decode_payload(std::string_view payload,
                           std::optional<std::string> charset_hint);

// Error-tolerant HTML parse: unclosed tags auto-closed, stray end tags
// dropped, void elements handled, script/style consumed as raw text. The
// returned root always has tag "html" with an optional "head" and a "body"
// child. Throws Error("empty document") for an empty payload.
DomNode parse_html(std::string_view payload,
                   std::optional<std::string> charset_hint = std::nullopt);

// Renders a tree back to HTML text; used to measure size reduction.
std::string serialize(const DomNode& root);

// In-order concatenation of all text node content.
std::string extract_text(const DomNode& node);

std::string decode_entities(std::string_view text);

}  // namespace forge::dom
