#include "forge/prune.hpp"

#include <fstream>

#include "forge/error.hpp"
#include "forge/unicode.hpp"

namespace forge::dom {

PruneRules PruneRules::defaults() {
    PruneRules r;
    r.structural_allowlist = {
        "p",  "h1", "h2",      "h3",         "h4",    "h5",    "h6",
        "section", "title",    "img",        "video", "figure", "figcaption",
        "ul", "ol", "li",      "br",         "div",   "article", "main",
        "blockquote", "pre",   "table",      "tr",    "td",    "th",
        "caption", "dl",       "dt",         "dd",    "body",  "html",
    };
    r.blocklist_tags = {
        "script", "style",  "nav",      "header", "footer", "form",
        "iframe", "noscript", "svg",    "canvas", "select", "option",
        "button", "input",  "textarea", "object", "embed",  "applet",
        "meta",   "link",   "base",     "aside",
    };
    r.blocklist_class_id_substrings = {
        "footer",  "navbar", "menu",    "advert",  "sidebar",
        "comment", "share",  "social",  "widget",  "breadcrumb",
        "cookie",  "popup",  "related", "promo",   "banner",
    };
    r.unwrap_tags = {
        "i",    "span", "b",     "em",   "strong", "u",   "font",
        "small", "big", "mark",  "abbr", "sub",    "sup", "a",
        "ins",  "s",    "strike", "tt",  "cite",   "q",   "time",
    };
    return r;
}

void PruneRules::validate() const {
    for (const auto& tag : structural_allowlist) {
        if (blocklist_tags.count(tag))
            throw ConfigError("tag both allowlisted and blocklisted: " + tag);
    }
}

PruneRules PruneRules::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open rules file: " + path);
    PruneRules rules = defaults();
    std::unordered_set<std::string> replaced;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string trimmed = uni::trim(line);
        if (trimmed.empty()) continue;
        const auto colon = trimmed.find(':');
        if (colon == std::string::npos)
            throw ConfigError("bad rules line (want 'SECTION: value'): " + trimmed);
        const std::string section = uni::ascii_lower(uni::trim(trimmed.substr(0, colon)));
        const std::string value = uni::ascii_lower(uni::trim(trimmed.substr(colon + 1)));
        if (value.empty()) continue;
        if (replaced.insert(section).second) {
            if (section == "allow") rules.structural_allowlist.clear();
            else if (section == "block") rules.blocklist_tags.clear();
            else if (section == "unwrap") rules.unwrap_tags.clear();
            else if (section == "block_substring") rules.blocklist_class_id_substrings.clear();
        }
        if (section == "allow") rules.structural_allowlist.insert(value);
        else if (section == "block") rules.blocklist_tags.insert(value);
        else if (section == "unwrap") rules.unwrap_tags.insert(value);
        else if (section == "block_substring") rules.blocklist_class_id_substrings.push_back(value);
        else if (section == "more_link") rules.more_link_class = value;
        else if (section == "placeholder") rules.placeholder_token = uni::trim(trimmed.substr(colon + 1));
        else throw ConfigError("unknown rules section: " + section);
    }
    rules.validate();
    return rules;
}

namespace {

bool matches_block_substring(const DomNode& node, const PruneRules& rules) {
    const std::string* cls = node.attr("class");
    const std::string* id = node.attr("id");
    if (!cls && !id) return false;
    for (const auto& needle : rules.blocklist_class_id_substrings) {
        if (cls && uni::contains_ci(*cls, needle)) return true;
        if (id && uni::contains_ci(*id, needle)) return true;
    }
    return false;
}

// Merge adjacent text nodes, collapse whitespace, drop empty leftovers.
std::vector<DomNode> finalize_children(std::vector<DomNode>&& kids) {
    std::vector<DomNode> out;
    out.reserve(kids.size());
    std::string pending;
    bool have_text = false;
    auto flush = [&] {
        if (!have_text) return;
        std::string collapsed = uni::collapse_whitespace(pending);
        if (!collapsed.empty())
            out.push_back(DomNode::text_node(std::move(collapsed)));
        pending.clear();
        have_text = false;
    };
    for (auto& kid : kids) {
        if (kid.is_text()) {
            pending += kid.text;
            have_text = true;
        } else {
            flush();
            out.push_back(std::move(kid));
        }
    }
    flush();
    return out;
}

std::vector<DomNode> prune_node(const DomNode& node, const PruneRules& rules) {
    if (node.is_comment()) return {};
    if (node.is_text()) return {DomNode::text_node(node.text)};

    if (node.tag == "br") return {DomNode::text_node("\n")};
    if (rules.blocklist_tags.count(node.tag)) return {};
    const std::string* cls = node.attr("class");
    if (cls && uni::contains_ci(*cls, rules.more_link_class))
        return {DomNode::text_node(rules.placeholder_token)};
    if (matches_block_substring(node, rules)) return {};

    std::vector<DomNode> kids;
    for (const auto& child : node.children) {
        auto pruned = prune_node(child, rules);
        for (auto& p : pruned) kids.push_back(std::move(p));
    }
    if (rules.unwrap_tags.count(node.tag)) return kids;  // parent finalizes

    DomNode out = DomNode::element(node.tag);
    out.attributes = node.attributes;
    out.children = finalize_children(std::move(kids));
    return {std::move(out)};
}

void collect_essential(const DomNode& node, const PruneRules& rules,
                       bool under_allowlisted, std::string& out) {
    if (node.is_text()) {
        if (under_allowlisted) out += node.text;
        return;
    }
    if (node.is_comment()) return;
    const bool under =
        under_allowlisted || rules.structural_allowlist.count(node.tag) > 0;
    for (const auto& child : node.children)
        collect_essential(child, rules, under, out);
}

std::size_t non_whitespace_chars(const std::string& text) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (!uni::is_space(uni::decode_next(text, pos))) ++count;
    }
    return count;
}

}  // namespace

DomNode prune(const DomNode& tree, const PruneRules& rules) {
    auto pruned = prune_node(tree, rules);
    if (pruned.empty()) return DomNode::element("html");
    if (pruned.size() == 1 && pruned[0].is_element()) return std::move(pruned[0]);
    // Root was unwrapped or replaced; wrap survivors to keep a valid tree.
    DomNode root = DomNode::element("html");
    root.children = finalize_children(std::move(pruned));
    return root;
}

std::string essential_text(const DomNode& tree, const PruneRules& rules) {
    std::string out;
    collect_essential(tree, rules, false, out);
    return out;
}

ReductionStats reduction_stats(std::size_t before_bytes,
                               const std::string& before_essential,
                               std::size_t after_bytes,
                               const std::string& after_essential) {
    if (before_bytes == 0) throw Error("reduction_stats: before size is zero");
    ReductionStats stats;
    stats.size_ratio =
        static_cast<double>(after_bytes) / static_cast<double>(before_bytes);
    const std::size_t before_chars = non_whitespace_chars(before_essential);
    const std::size_t after_chars = non_whitespace_chars(after_essential);
    stats.text_retention =
        before_chars == 0
            ? 1.0
            : static_cast<double>(after_chars) / static_cast<double>(before_chars);
    return stats;
}

}  // namespace forge::dom
