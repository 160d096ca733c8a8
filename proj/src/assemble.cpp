#include "forge/assemble.hpp"

#include <unordered_set>

#include "forge/error.hpp"
#include "forge/hash.hpp"
#include "forge/unicode.hpp"

namespace forge::assemble {

const char* format_name(ImageFormat f) {
    switch (f) {
        case ImageFormat::JPG: return "jpg";
        case ImageFormat::JPEG: return "jpeg";
        case ImageFormat::PNG: return "png";
        case ImageFormat::WEBP: return "webp";
        case ImageFormat::Other: default: return "other";
    }
}

std::optional<ImageFormat> format_from_name(std::string_view name) {
    if (name == "jpg") return ImageFormat::JPG;
    if (name == "jpeg") return ImageFormat::JPEG;
    if (name == "png") return ImageFormat::PNG;
    if (name == "webp") return ImageFormat::WEBP;
    if (name == "other") return ImageFormat::Other;
    return std::nullopt;
}

std::optional<ImageFormat> format_from_filename(std::string_view filename) {
    const auto dot = filename.find_last_of('.');
    if (dot == std::string_view::npos || dot + 1 == filename.size())
        return std::nullopt;
    const std::string ext = uni::ascii_lower(filename.substr(dot + 1));
    if (ext == "jpg") return ImageFormat::JPG;
    if (ext == "jpeg") return ImageFormat::JPEG;
    if (ext == "png") return ImageFormat::PNG;
    if (ext == "webp") return ImageFormat::WEBP;
    static const std::unordered_set<std::string> kKnownOther = {
        "gif", "svg", "bmp", "ico", "tif", "tiff", "avif", "apng", "heic",
    };
    if (kKnownOther.count(ext)) return ImageFormat::Other;
    return std::nullopt;  // not an image extension; decided post-fetch
}

std::size_t InterleavedDocument::image_count() const {
    std::size_t n = 0;
    for (const auto& s : segments)
        if (std::holds_alternative<ImageSegment>(s)) ++n;
    return n;
}

namespace {

bool is_block_tag(std::string_view tag) {
    static const std::unordered_set<std::string_view> kBlock = {
        "p",   "h1",   "h2",      "h3",     "h4",    "h5",     "h6",
        "div", "section", "article", "main", "ul",   "ol",     "li",
        "figure", "table", "tr",  "td",     "th",    "caption", "blockquote",
        "pre", "title", "dl",    "dt",      "dd",    "body",   "html",
        "head",
    };
    return kBlock.count(tag) > 0;
}

// Largest width candidate from a srcset attribute ("url 480w, url2 800w").
std::string largest_srcset_candidate(const std::string& srcset) {
    std::string best_url;
    long best_width = -1;
    std::size_t pos = 0;
    while (pos < srcset.size()) {
        auto comma = srcset.find(',', pos);
        if (comma == std::string::npos) comma = srcset.size();
        const std::string item = uni::trim(srcset.substr(pos, comma - pos));
        pos = comma + 1;
        if (item.empty()) continue;
        const auto space = item.find_first_of(" \t");
        std::string url = item.substr(0, space);
        long width = 0;
        if (space != std::string::npos) {
            const std::string desc = uni::trim(item.substr(space + 1));
            for (char c : desc) {
                if (c >= '0' && c <= '9') width = width * 10 + (c - '0');
                else break;
            }
        }
        if (width > best_width) {
            best_width = width;
            best_url = std::move(url);
        }
    }
    return best_url;
}

class Linearizer {
  public:
    Linearizer(const Url& base, const RecordMeta& meta) : base_(base), meta_(meta) {}

    InterleavedDocument run(const dom::DomNode& tree) {
        walk(tree, -1);
        flush_text();

        InterleavedDocument doc;
        doc.source_url = meta_.source_url;
        doc.domain = base_.host;
        doc.crawl_date = meta_.crawl_date;
        doc.language = meta_.language;
        doc.segments = std::move(segments_);
        if (doc.segments.empty()) throw Error("empty after assembly");
        doc.doc_id = compute_doc_id(doc.source_url, doc.segments);
        return doc;
    }

  private:
    void flush_text() {
        const std::string text = uni::trim(buffer_);
        buffer_.clear();
        if (!text.empty()) segments_.push_back(TextSegment{text});
    }

    void emit_image(const dom::DomNode& img, int figure_depth) {
        std::string src;
        if (const auto* s = img.attr("src"); s && !s->empty()) src = *s;
        if (src.empty()) {
            if (const auto* ss = img.attr("srcset"); ss && !ss->empty())
                src = largest_srcset_candidate(*ss);
        }
        if (src.empty()) {
            if (const auto* ds = img.attr("data-src"); ds && !ds->empty()) src = *ds;
        }
        if (src.empty()) return;
        auto resolved = resolve_url(base_, src);
        if (!resolved) return;

        flush_text();
        ImageRef ref;
        ref.src_url = std::move(*resolved);
        if (const auto* alt = img.attr("alt"))
            ref.alt_text = uni::trim(uni::collapse_whitespace(*alt));
        ref.filename = filename_of(ref.src_url);
        ref.format = format_from_filename(ref.filename);
        segments_.push_back(ImageSegment{std::move(ref)});
        if (figure_depth >= 0) last_figure_image_ = segments_.size() - 1;
    }

    void attach_figcaption(const dom::DomNode& node) {
        const std::string caption =
            uni::trim(uni::collapse_whitespace(dom::extract_text(node)));
        if (caption.empty()) return;
        if (last_figure_image_) {
            auto& seg = std::get<ImageSegment>(segments_[*last_figure_image_]);
            seg.image.figcaption = caption;
        } else {
            // No preceding image in this figure; keep the caption as text.
            flush_text();
            segments_.push_back(TextSegment{caption});
        }
    }

    void walk(const dom::DomNode& node, int figure_depth) {
        if (node.is_text()) {
            buffer_ += node.text;
            return;
        }
        if (node.is_comment()) return;
        if (node.tag == "img") {
            emit_image(node, figure_depth);
            return;
        }
        if (node.tag == "video" || node.tag == "audio") return;  // structural only
        if (node.tag == "figcaption" && figure_depth >= 0) {
            flush_text();
            attach_figcaption(node);
            return;
        }

        const bool block = is_block_tag(node.tag);
        const bool entering_figure = node.tag == "figure";
        if (block) flush_text();
        if (entering_figure) last_figure_image_.reset();

        const int child_depth = entering_figure
                                    ? (figure_depth < 0 ? 0 : figure_depth + 1)
                                    : figure_depth;
        for (const auto& child : node.children) walk(child, child_depth);

        if (block) flush_text();
        if (entering_figure) last_figure_image_.reset();
    }

    const Url& base_;
    const RecordMeta& meta_;
    std::vector<Segment> segments_;
    std::string buffer_;
    std::optional<std::size_t> last_figure_image_;
};

}  // namespace

std::string compute_doc_id(const std::string& source_url,
                           const std::vector<Segment>& segments) {
    Hash128 h;
    h.update(source_url);
    for (const auto& seg : segments) {
        if (const auto* text = std::get_if<TextSegment>(&seg)) {
            h.update("\x1ft");
            h.update(text->text);
        } else {
            const auto& img = std::get<ImageSegment>(seg).image;
            h.update("\x1fi");
            h.update(img.src_url);
            h.update("\x1f");
            h.update(img.alt_text);
        }
    }
    return h.hex();
}

InterleavedDocument linearize(const dom::DomNode& pruned, const Url& base_url,
                              const RecordMeta& meta) {
    Linearizer lin(base_url, meta);
    return lin.run(pruned);
}

}  // namespace forge::assemble
