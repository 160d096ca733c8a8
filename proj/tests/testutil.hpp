#pragma once

// Shared fixture builders and independent oracles for the test suites. The
// oracles intentionally re-derive their answers from scratch instead of
// calling library helpers.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "forge/assemble.hpp"
#include "forge/dom.hpp"
#include "forge/unicode.hpp"

namespace testutil {

// --- minimal image byte builders (header-level fixtures) ---

inline void put_be32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>(v & 0xFF));
}

inline std::string make_png(int w, int h) {
    std::string out("\x89PNG\r\n\x1a\n", 8);
    put_be32(out, 13);
    out += "IHDR";
    put_be32(out, static_cast<std::uint32_t>(w));
    put_be32(out, static_cast<std::uint32_t>(h));
    out += std::string("\x08\x02\x00\x00\x00", 5);
    put_be32(out, 0);  // CRC ignored by the header sniffer
    return out;
}

inline std::string make_jpeg(int w, int h) {
    std::string out("\xFF\xD8\xFF\xE0", 4);
    out += std::string("\x00\x10JFIF\x00\x01\x01\x00\x00\x01\x00\x01\x00\x00", 16);
    out += std::string("\xFF\xC0", 2);
    out += std::string("\x00\x11\x08", 3);
    out.push_back(static_cast<char>((h >> 8) & 0xFF));
    out.push_back(static_cast<char>(h & 0xFF));
    out.push_back(static_cast<char>((w >> 8) & 0xFF));
    out.push_back(static_cast<char>(w & 0xFF));
    out += std::string("\x03\x01\x22\x00\x02\x11\x01\x03\x11\x01", 10);
    out += std::string("\xFF\xD9", 2);
    return out;
}

inline std::string make_webp_lossless(int w, int h) {
    std::string payload;
    payload.push_back(0x2F);
    const std::uint32_t bits = static_cast<std::uint32_t>(w - 1) |
                               (static_cast<std::uint32_t>(h - 1) << 14);
    for (int i = 0; i < 4; ++i)
        payload.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
    payload += std::string(8, '\0');
    std::string out = "RIFF";
    const std::uint32_t size = 4 + 8 + static_cast<std::uint32_t>(payload.size());
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((size >> (8 * i)) & 0xFF));
    out += "WEBPVP8L";
    const auto n = static_cast<std::uint32_t>(payload.size());
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((n >> (8 * i)) & 0xFF));
    return out + payload;
}

// --- independent ratio oracles ---

inline std::vector<std::string> oracle_tokens(const std::string& text) {
    // Bytes <= 0x20 and the common Unicode space code points, decoded
    // independently from the library path.
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    while (i < text.size()) {
        const unsigned char b = static_cast<unsigned char>(text[i]);
        std::size_t len = 1;
        std::uint32_t cp = b;
        if (b >= 0xF0) len = 4;
        else if (b >= 0xE0) len = 3;
        else if (b >= 0xC0) len = 2;
        if (len > 1 && i + len <= text.size()) {
            cp = b & (0xFF >> (len + 1));
            for (std::size_t k = 1; k < len; ++k)
                cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3F);
        }
        const bool space =
            cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == 0x0B ||
            cp == 0x0C || cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
            (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
            cp == 0x202F || cp == 0x205F || cp == 0x3000;
        if (space) {
            flush();
        } else {
            current.append(text, i, len);
        }
        i += len;
    }
    flush();
    return tokens;
}

inline std::vector<std::uint32_t> oracle_codepoints(const std::string& text) {
    std::vector<std::uint32_t> cps;
    std::size_t i = 0;
    while (i < text.size()) {
        const unsigned char b = static_cast<unsigned char>(text[i]);
        std::size_t len = 1;
        std::uint32_t cp = b;
        if (b >= 0xF0) len = 4;
        else if (b >= 0xE0) len = 3;
        else if (b >= 0xC0) len = 2;
        if (len > 1 && i + len <= text.size()) {
            cp = b & (0xFF >> (len + 1));
            for (std::size_t k = 1; k < len; ++k)
                cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3F);
        } else if (len > 1) {
            len = 1;
            cp = 0xFFFD;
        }
        cps.push_back(cp);
        i += len;
    }
    return cps;
}

inline double oracle_char_rep(const std::string& text, int n) {
    const auto cps = oracle_codepoints(text);
    if (cps.size() < static_cast<std::size_t>(n)) return 0.0;
    std::set<std::vector<std::uint32_t>> distinct;
    const std::size_t total = cps.size() - static_cast<std::size_t>(n) + 1;
    for (std::size_t i = 0; i < total; ++i)
        distinct.insert(std::vector<std::uint32_t>(
            cps.begin() + static_cast<long>(i),
            cps.begin() + static_cast<long>(i) + n));
    return 1.0 - static_cast<double>(distinct.size()) / static_cast<double>(total);
}

inline double oracle_word_rep(const std::string& text, int n) {
    const auto tokens = oracle_tokens(text);
    if (tokens.size() < static_cast<std::size_t>(n)) return 0.0;
    std::set<std::vector<std::string>> distinct;
    const std::size_t total = tokens.size() - static_cast<std::size_t>(n) + 1;
    for (std::size_t i = 0; i < total; ++i)
        distinct.insert(std::vector<std::string>(
            tokens.begin() + static_cast<long>(i),
            tokens.begin() + static_cast<long>(i) + n));
    return 1.0 - static_cast<double>(distinct.size()) / static_cast<double>(total);
}

// --- random content generators ---

inline std::string random_text(std::mt19937& rng, int max_len = 60) {
    static const std::vector<std::string> kAlphabet = {
        "a", "b", "z", "1", "!", " ", " ", "\n", "क", "ख", "ा", "म",
        "অ", "க", "మ", "ಠ", "·", "é", "😀", "\t",
    };
    std::uniform_int_distribution<int> len_dist(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, kAlphabet.size() - 1);
    std::string out;
    const int len = len_dist(rng);
    for (int i = 0; i < len; ++i) out += kAlphabet[pick(rng)];
    return out;
}

inline forge::dom::DomNode random_tree(std::mt19937& rng, int depth = 0) {
    static const std::vector<std::string> kTags = {
        "p",   "div",  "span", "ul",     "li",    "h2",   "figure",
        "img", "nav",  "footer", "script", "b",   "em",   "section",
        "br",  "table", "td",  "a",      "video", "form",
    };
    static const std::vector<std::string> kClasses = {
        "",        "content", "navbar-top", "menu-item", "more-link",
        "article", "footer-links", "story", "advert-box", "x",
    };
    std::uniform_int_distribution<int> tag_pick(0, static_cast<int>(kTags.size()) - 1);
    std::uniform_int_distribution<int> cls_pick(0, static_cast<int>(kClasses.size()) - 1);
    std::uniform_int_distribution<int> kid_count(0, depth >= 4 ? 0 : 4);
    std::uniform_int_distribution<int> kind(0, 9);

    if (depth > 0 && kind(rng) < 4) {
        return forge::dom::DomNode::text_node(random_text(rng));
    }
    forge::dom::DomNode node =
        forge::dom::DomNode::element(kTags[static_cast<std::size_t>(tag_pick(rng))]);
    const std::string cls = kClasses[static_cast<std::size_t>(cls_pick(rng))];
    if (!cls.empty()) node.attributes.emplace_back("class", cls);
    if (node.tag != "br" && node.tag != "img") {
        const int kids = kid_count(rng);
        for (int i = 0; i < kids; ++i)
            node.children.push_back(random_tree(rng, depth + 1));
    }
    return node;
}

inline forge::assemble::InterleavedDocument random_document(std::mt19937& rng) {
    using namespace forge::assemble;
    InterleavedDocument doc;
    std::uniform_int_distribution<int> seg_count(1, 8);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> dim(1, 2000);
    doc.source_url = "https://example.org/a/" + std::to_string(rng() % 100000);
    doc.domain = "example.org";
    doc.crawl_date = "2021-06-01";
    doc.language = {"hi", 0.5 + (rng() % 50) / 100.0};
    const int segments = seg_count(rng);
    bool last_text = false;
    for (int i = 0; i < segments; ++i) {
        if (coin(rng) == 0 && !last_text) {
            std::string text = random_text(rng, 40);
            while (forge::uni::trim(text).empty()) text = random_text(rng, 40) + "x";
            doc.segments.push_back(TextSegment{forge::uni::trim(text)});
            last_text = true;
        } else {
            ImageRef img;
            const std::string name = "img" + std::to_string(rng() % 10000);
            const int ext = static_cast<int>(rng() % 4);
            const char* exts[] = {".jpg", ".jpeg", ".png", ".webp"};
            img.src_url = "https://cdn.example.org/" + name + exts[ext];
            img.filename = name + exts[ext];
            img.format = format_from_filename(img.filename);
            if (coin(rng) == 0) {
                img.width_px = dim(rng);
                img.height_px = dim(rng);
            }
            if (coin(rng) == 0) img.alt_text = forge::uni::trim(random_text(rng, 20));
            if (coin(rng) == 0) img.figcaption = "caption " + std::to_string(rng() % 100);
            doc.segments.push_back(ImageSegment{img});
            last_text = false;
        }
    }
    doc.doc_id = compute_doc_id(doc.source_url, doc.segments);
    return doc;
}

}  // namespace testutil
