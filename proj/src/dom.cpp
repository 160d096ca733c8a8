#include "forge/dom.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "forge/error.hpp"
#include "forge/unicode.hpp"

namespace forge::dom {

const std::string* DomNode::attr(std::string_view name) const {
    for (const auto& [k, v] : attributes) {
        if (k == name) return &v;
    }
    return nullptr;
}

DomNode DomNode::text_node(std::string content) {
    DomNode n;
    n.tag = kTextTag;
    n.text = std::move(content);
    return n;
}

DomNode DomNode::element(std::string tag_name) {
    DomNode n;
    n.tag = std::move(tag_name);
    return n;
}

namespace {

// windows-1252 0x80..0x9F, the rest maps 1:1 to Unicode.
constexpr std::array<char32_t, 32> kCp1252High = {
    0x20AC, 0x81,   0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0x8D,   0x017D, 0x8F,
    0x90,   0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0x9D,   0x017E, 0x0178,
};

std::string decode_cp1252(std::string_view payload) {
    std::string out;
    out.reserve(payload.size());
    for (unsigned char c : payload) {
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        } else if (c < 0xA0) {
            uni::append_utf8(out, kCp1252High[c - 0x80]);
        } else {
            uni::append_utf8(out, c);
        }
    }
    return out;
}

std::string normalize_charset(std::string_view cs) {
    std::string out;
    for (char c : cs) {
        if (c == '-' || c == '_' || c == ' ') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

std::string sniff_meta_charset(std::string_view payload) {
    const std::string head = uni::ascii_lower(payload.substr(0, 2048));
    const auto pos = head.find("charset=");
    if (pos == std::string::npos) return {};
    std::size_t begin = pos + 8;
    while (begin < head.size() && (head[begin] == '"' || head[begin] == '\'' || head[begin] == ' '))
        ++begin;
    std::size_t end = begin;
    while (end < head.size() && (std::isalnum(static_cast<unsigned char>(head[end])) ||
                                 head[end] == '-' || head[end] == '_'))
        ++end;
    return head.substr(begin, end - begin);
}

const std::unordered_map<std::string_view, char32_t>& named_entities() {
    static const std::unordered_map<std::string_view, char32_t> kEntities = {
        {"amp", U'&'},     {"lt", U'<'},      {"gt", U'>'},
        {"quot", U'"'},    {"apos", U'\''},   {"nbsp", 0xA0},
        {"copy", 0xA9},    {"reg", 0xAE},     {"trade", 0x2122},
        {"deg", 0xB0},     {"plusmn", 0xB1},  {"middot", 0xB7},
        {"laquo", 0xAB},   {"raquo", 0xBB},   {"times", 0xD7},
        {"divide", 0xF7},  {"ndash", 0x2013}, {"mdash", 0x2014},
        {"lsquo", 0x2018}, {"rsquo", 0x2019}, {"ldquo", 0x201C},
        {"rdquo", 0x201D}, {"bull", 0x2022},  {"hellip", 0x2026},
        {"prime", 0x2032}, {"frasl", 0x2044}, {"euro", 0x20AC},
        {"larr", 0x2190},  {"rarr", 0x2192},  {"minus", 0x2212},
        {"shy", 0xAD},     {"sect", 0xA7},    {"para", 0xB6},
        {"curren", 0xA4},  {"cent", 0xA2},    {"pound", 0xA3},
        {"yen", 0xA5},     {"frac12", 0xBD},  {"frac14", 0xBC},
        {"sup2", 0xB2},    {"sup3", 0xB3},    {"ordm", 0xBA},
    };
    return kEntities;
}

bool is_void_tag(std::string_view tag) {
    static const std::unordered_set<std::string_view> kVoid = {
        "area", "base",  "br",    "col",  "embed", "hr",
        "img",  "input", "link",  "meta", "param", "source",
        "track", "wbr",
    };
    return kVoid.count(tag) > 0;
}

bool is_raw_text_tag(std::string_view tag) {
    return tag == "script" || tag == "style";
}

bool is_rcdata_tag(std::string_view tag) {
    return tag == "title" || tag == "textarea";
}

// Tags whose start implicitly closes an open <p>.
bool closes_p(std::string_view tag) {
    static const std::unordered_set<std::string_view> kClosesP = {
        "p",      "div",     "ul",     "ol",         "li",     "h1",
        "h2",     "h3",      "h4",     "h5",         "h6",     "section",
        "figure", "figcaption", "table", "blockquote", "pre",  "address",
        "article", "aside",  "footer", "header",     "nav",    "main",
        "form",   "fieldset", "dl",    "dd",         "dt",     "details",
        "hr",
    };
    return kClosesP.count(tag) > 0;
}

bool is_heading(std::string_view tag) {
    return tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6';
}

bool is_head_content(std::string_view tag) {
    static const std::unordered_set<std::string_view> kHead = {
        "title", "meta", "link", "base", "style", "noscript",
    };
    return kHead.count(tag) > 0;
}

struct BuildNode {
    std::string tag;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::string text;
    std::vector<std::unique_ptr<BuildNode>> children;
    BuildNode* parent = nullptr;

    BuildNode* add_child(std::string tag_name) {
        auto node = std::make_unique<BuildNode>();
        node->tag = std::move(tag_name);
        node->parent = this;
        children.push_back(std::move(node));
        return children.back().get();
    }

    void add_text(std::string content) {
        auto node = std::make_unique<BuildNode>();
        node->tag = kTextTag;
        node->text = std::move(content);
        node->parent = this;
        children.push_back(std::move(node));
    }
};

DomNode materialize(BuildNode& b) {
    DomNode n;
    n.tag = std::move(b.tag);
    n.attributes = std::move(b.attributes);
    n.text = std::move(b.text);
    n.children.reserve(b.children.size());
    for (auto& child : b.children) n.children.push_back(materialize(*child));
    return n;
}

struct Tag {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    bool closing = false;
    bool self_closing = false;
};

class Parser {
  public:
    explicit Parser(std::string_view html) : html_(html) {}

    DomNode run() {
        root_ = std::make_unique<BuildNode>();
        root_->tag = "html";
        open_ = {root_.get()};

        while (pos_ < html_.size()) step();
        flush_text();
        return materialize(*root_);
    }

  private:
    BuildNode* current() { return open_.back(); }

    bool body_started() const { return body_ != nullptr; }

    BuildNode* ensure_head() {
        if (!head_) head_ = root_->add_child("head");
        return head_;
    }

    BuildNode* ensure_body() {
        if (!body_) {
            body_ = root_->add_child("body");
            open_ = {root_.get(), body_};
        }
        return body_;
    }

    void flush_text() {
        if (text_buffer_.empty()) return;
        std::string text = std::move(text_buffer_);
        text_buffer_.clear();
        if (!body_started()) {
            // Inter-head whitespace is structural noise; anything visible
            // opens the body.
            if (uni::trim(text).empty()) return;
            ensure_body();
        }
        current()->add_text(std::move(text));
    }

    void step() {
        const char c = html_[pos_];
        if (c != '<') {
            const auto lt = html_.find('<', pos_);
            const auto end = lt == std::string_view::npos ? html_.size() : lt;
            text_buffer_ += decode_entities(html_.substr(pos_, end - pos_));
            pos_ = end;
            return;
        }
        if (html_.compare(pos_, 4, "<!--") == 0) {
            handle_comment();
            return;
        }
        if (pos_ + 1 < html_.size() && (html_[pos_ + 1] == '!' || html_[pos_ + 1] == '?')) {
            const auto gt = html_.find('>', pos_);
            pos_ = gt == std::string_view::npos ? html_.size() : gt + 1;
            return;
        }
        auto tag = try_parse_tag();
        if (!tag) {  // stray '<' becomes literal text
            text_buffer_ += '<';
            ++pos_;
            return;
        }
        if (tag->closing) {
            handle_end_tag(tag->name);
        } else {
            handle_start_tag(*tag);
        }
    }

    void handle_comment() {
        const auto close = html_.find("-->", pos_ + 4);
        const auto end = close == std::string_view::npos ? html_.size() : close;
        flush_text();
        auto* node = body_started() ? current() : root_.get();
        auto comment = std::make_unique<BuildNode>();
        comment->tag = kCommentTag;
        comment->text = std::string(html_.substr(pos_ + 4, end - pos_ - 4));
        comment->parent = node;
        node->children.push_back(std::move(comment));
        pos_ = close == std::string_view::npos ? html_.size() : close + 3;
    }

    std::optional<Tag> try_parse_tag() {
        std::size_t p = pos_ + 1;
        Tag tag;
        if (p < html_.size() && html_[p] == '/') {
            tag.closing = true;
            ++p;
        }
        if (p >= html_.size() || !std::isalpha(static_cast<unsigned char>(html_[p])))
            return std::nullopt;
        const std::size_t name_start = p;
        while (p < html_.size() && (std::isalnum(static_cast<unsigned char>(html_[p])) ||
                                    html_[p] == '-' || html_[p] == ':'))
            ++p;
        tag.name = uni::ascii_lower(html_.substr(name_start, p - name_start));

        while (p < html_.size() && html_[p] != '>') {
            if (std::isspace(static_cast<unsigned char>(html_[p]))) {
                ++p;
                continue;
            }
            if (html_[p] == '/') {
                tag.self_closing = true;
                ++p;
                continue;
            }
            // attribute name
            const std::size_t attr_start = p;
            while (p < html_.size() && html_[p] != '=' && html_[p] != '>' && html_[p] != '/' &&
                   !std::isspace(static_cast<unsigned char>(html_[p])))
                ++p;
            std::string name = uni::ascii_lower(html_.substr(attr_start, p - attr_start));
            std::string value;
            while (p < html_.size() && std::isspace(static_cast<unsigned char>(html_[p]))) ++p;
            if (p < html_.size() && html_[p] == '=') {
                ++p;
                while (p < html_.size() && std::isspace(static_cast<unsigned char>(html_[p]))) ++p;
                if (p < html_.size() && (html_[p] == '"' || html_[p] == '\'')) {
                    const char quote = html_[p++];
                    const auto close = html_.find(quote, p);
                    const auto end = close == std::string_view::npos ? html_.size() : close;
                    value = decode_entities(html_.substr(p, end - p));
                    p = close == std::string_view::npos ? html_.size() : close + 1;
                } else {
                    const std::size_t vstart = p;
                    while (p < html_.size() && html_[p] != '>' &&
                           !std::isspace(static_cast<unsigned char>(html_[p])))
                        ++p;
                    value = decode_entities(html_.substr(vstart, p - vstart));
                }
            }
            if (!name.empty()) tag.attributes.emplace_back(std::move(name), std::move(value));
        }
        pos_ = p < html_.size() ? p + 1 : html_.size();
        return tag;
    }

    void handle_start_tag(Tag& tag) {
        flush_text();
        if (tag.name == "html") {
            for (auto& attr : tag.attributes) {
                if (!root_->attributes.empty()) break;
                root_->attributes.push_back(std::move(attr));
            }
            return;
        }
        if (tag.name == "head") {
            ensure_head();
            return;
        }
        if (tag.name == "body") {
            auto* body = ensure_body();
            if (body->attributes.empty()) body->attributes = std::move(tag.attributes);
            return;
        }
        if (!body_started() && is_head_content(tag.name)) {
            insert_into(ensure_head(), tag);
            return;
        }
        if (!body_started() && tag.name == "script") {
            insert_into(ensure_head(), tag);
            return;
        }
        ensure_body();

        if (closes_p(tag.name)) close_if_open("p");
        if (is_heading(tag.name) && is_heading(current()->tag)) pop();
        if (tag.name == "li") close_if_open("li", {"ul", "ol"});
        if (tag.name == "dt" || tag.name == "dd") {
            close_if_open("dt", {"dl"});
            close_if_open("dd", {"dl"});
        }
        if (tag.name == "tr") close_if_open("tr", {"table"});
        if (tag.name == "td" || tag.name == "th") {
            close_if_open("td", {"tr", "table"});
            close_if_open("th", {"tr", "table"});
        }
        if (tag.name == "option") close_if_open("option", {"select"});

        insert_into(current(), tag);
    }

    void insert_into(BuildNode* parent, Tag& tag) {
        BuildNode* node = parent->add_child(tag.name);
        node->attributes = std::move(tag.attributes);
        if (is_raw_text_tag(tag.name) || is_rcdata_tag(tag.name)) {
            consume_raw_text(node, tag.name, is_rcdata_tag(tag.name));
            return;
        }
        if (tag.self_closing || is_void_tag(tag.name)) return;
        open_.push_back(node);
    }

    void consume_raw_text(BuildNode* node, std::string_view tag, bool decode) {
        const std::string close = "</" + std::string(tag);
        const std::string_view rest = html_.substr(pos_);
        const auto it = std::search(
            rest.begin(), rest.end(), close.begin(), close.end(),
            [](char a, char b) {
                return std::tolower(static_cast<unsigned char>(a)) ==
                       std::tolower(static_cast<unsigned char>(b));
            });
        const bool found = it != rest.end();
        const std::size_t end = pos_ + static_cast<std::size_t>(it - rest.begin());
        std::string content(html_.substr(pos_, end - pos_));
        if (!content.empty())
            node->add_text(decode ? decode_entities(content) : content);
        if (!found) {
            pos_ = html_.size();
            return;
        }
        const auto gt = html_.find('>', end);
        pos_ = gt == std::string_view::npos ? html_.size() : gt + 1;
    }

    void pop() {
        if (open_.size() > (body_ ? 2u : 1u)) open_.pop_back();
    }

    // Closes `tag` if it is open below the nearest of the `scopes` tags.
    void close_if_open(std::string_view tag,
                       std::initializer_list<std::string_view> scopes = {}) {
        for (std::size_t i = open_.size(); i-- > 0;) {
            const std::string& t = open_[i]->tag;
            if (t == tag) {
                open_.resize(i);
                if (open_.empty()) open_ = {root_.get()};
                return;
            }
            for (std::string_view scope : scopes) {
                if (t == scope) return;
            }
            if (t == "body" || t == "html") return;
        }
    }

    void handle_end_tag(const std::string& name) {
        flush_text();
        if (name == "html") return;
        if (name == "head") return;
        if (name == "body") {
            if (body_) open_ = {root_.get(), body_};
            return;
        }
        for (std::size_t i = open_.size(); i-- > 0;) {
            if (open_[i]->tag == name) {
                open_.resize(std::max<std::size_t>(i, 1));
                if (body_ && open_.size() < 2) open_ = {root_.get(), body_};
                return;
            }
        }
        // stray end tag: dropped
    }

    std::string_view html_;
    std::size_t pos_ = 0;
    std::string text_buffer_;
    std::unique_ptr<BuildNode> root_;
    BuildNode* head_ = nullptr;
    BuildNode* body_ = nullptr;
    std::vector<BuildNode*> open_;
};

}  // namespace

std::string decode_entities(std::string_view text) {
    if (text.find('&') == std::string_view::npos) return std::string(text);
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c != '&') {
            out.push_back(c);
            ++pos;
            continue;
        }
        const auto semi = text.find(';', pos + 1);
        if (semi == std::string_view::npos || semi - pos > 12) {
            out.push_back('&');
            ++pos;
            continue;
        }
        const std::string_view body = text.substr(pos + 1, semi - pos - 1);
        if (!body.empty() && body[0] == '#') {
            char32_t cp = 0;
            bool ok = body.size() > 1;
            if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
                for (std::size_t i = 2; i < body.size() && ok; ++i) {
                    const char h = body[i];
                    if (h >= '0' && h <= '9') cp = cp * 16 + static_cast<char32_t>(h - '0');
                    else if (h >= 'a' && h <= 'f') cp = cp * 16 + static_cast<char32_t>(h - 'a' + 10);
                    else if (h >= 'A' && h <= 'F') cp = cp * 16 + static_cast<char32_t>(h - 'A' + 10);
                    else ok = false;
                }
            } else {
                for (std::size_t i = 1; i < body.size() && ok; ++i) {
                    if (body[i] < '0' || body[i] > '9') ok = false;
                    else cp = cp * 10 + static_cast<char32_t>(body[i] - '0');
                }
            }
            if (ok && cp > 0) {
                uni::append_utf8(out, cp);
                pos = semi + 1;
                continue;
            }
        } else {
            const auto it = named_entities().find(body);
            if (it != named_entities().end()) {
                uni::append_utf8(out, it->second);
                pos = semi + 1;
                continue;
            }
        }
        out.push_back('&');
        ++pos;
    }
    return out;
}

std::string decode_payload(std::string_view payload,
                           std::optional<std::string> charset_hint) {
    std::string charset = charset_hint ? normalize_charset(*charset_hint) : "";
    if (charset.empty()) charset = normalize_charset(sniff_meta_charset(payload));
    if (charset == "iso88591" || charset == "latin1" || charset == "windows1252" ||
        charset == "cp1252") {
        return decode_cp1252(payload);
    }
    // utf-8 and everything unknown: validate, replacing bad sequences.
    return uni::encode(uni::decode(payload));
}

DomNode parse_html(std::string_view payload,
                   std::optional<std::string> charset_hint) {
    const std::string decoded = decode_payload(payload, std::move(charset_hint));
    if (decoded.empty()) throw Error("empty document");
    Parser parser(decoded);
    return parser.run();
}

namespace {

void serialize_node(const DomNode& node, std::string& out) {
    if (node.is_text()) {
        for (char c : node.text) {
            switch (c) {
                case '&': out += "&amp;"; break;
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                default: out.push_back(c);
            }
        }
        return;
    }
    if (node.is_comment()) {
        out += "<!--";
        out += node.text;
        out += "-->";
        return;
    }
    out += '<';
    out += node.tag;
    for (const auto& [k, v] : node.attributes) {
        out += ' ';
        out += k;
        out += "=\"";
        for (char c : v) {
            if (c == '"') out += "&quot;";
            else if (c == '&') out += "&amp;";
            else out.push_back(c);
        }
        out += '"';
    }
    if (is_void_tag(node.tag) && node.children.empty()) {
        out += "/>";
        return;
    }
    out += '>';
    for (const auto& child : node.children) serialize_node(child, out);
    out += "</";
    out += node.tag;
    out += '>';
}

}  // namespace

std::string serialize(const DomNode& root) {
    std::string out;
    serialize_node(root, out);
    return out;
}

std::string extract_text(const DomNode& node) {
    if (node.is_text()) return node.text;
    if (node.is_comment()) return {};
    std::string out;
    for (const auto& child : node.children) out += extract_text(child);
    return out;
}

}  // namespace forge::dom
