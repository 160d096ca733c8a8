#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "../testutil.hpp"
#include "forge/dom.hpp"
#include "forge/error.hpp"
#include "forge/prune.hpp"
#include "forge/unicode.hpp"

using namespace forge::dom;

namespace {

bool tree_clean(const DomNode& node, const PruneRules& rules) {
    if (node.is_comment()) return false;
    if (node.is_element()) {
        if (rules.blocklist_tags.count(node.tag)) return false;
        for (const char* attr : {"class", "id"}) {
            if (const auto* v = node.attr(attr)) {
                for (const auto& needle : rules.blocklist_class_id_substrings) {
                    if (forge::uni::contains_ci(*v, needle)) return false;
                }
            }
        }
        if (node.tag == "br") return false;
    }
    for (const auto& c : node.children) {
        if (!tree_clean(c, rules)) return false;
    }
    return true;
}

std::string visible_text(const DomNode& node) { return extract_text(node); }

}  // namespace

TEST_CASE("blocklisted subtrees vanish") {
    const auto rules = PruneRules::defaults();
    const DomNode tree = parse_html(
        "<div class=\"navbar-top\"><ul><li>Home</li></ul></div><p>keep</p>");
    const DomNode out = prune(tree, rules);
    CHECK(visible_text(out) == "keep");
    CHECK(tree_clean(out, rules));
}

TEST_CASE("unwrap merges inline text into one node") {
    const auto rules = PruneRules::defaults();
    const DomNode tree = parse_html("<p>a<span>b</span>c</p>");
    const DomNode out = prune(tree, rules);
    const auto& body = out.children[0];
    const auto& p = body.children[0];
    REQUIRE(p.children.size() == 1);
    CHECK(p.children[0].is_text());
    CHECK(p.children[0].text == "abc");
}

TEST_CASE("more-link elements become the placeholder token") {
    const auto rules = PruneRules::defaults();
    const DomNode tree = parse_html("<a class=\"more-link\">Read more</a>");
    const DomNode out = prune(tree, rules);
    CHECK(visible_text(out) == "END_OF_DOCUMENT_TOKEN_TO_BE_REPLACED");
}

TEST_CASE("br becomes a newline, comments disappear") {
    const auto rules = PruneRules::defaults();
    const DomNode tree = parse_html("<p>a<br>b<!-- gone --></p>");
    const DomNode out = prune(tree, rules);
    CHECK(visible_text(out) == "a\nb");
}

TEST_CASE("whitespace collapses to single spaces, newline runs to two max") {
    const auto rules = PruneRules::defaults();
    const DomNode tree =
        parse_html("<p>a   b\t\tc<br><br><br>d</p>");
    const DomNode out = prune(tree, rules);
    CHECK(visible_text(out) == "a b c\n\nd");
}

TEST_CASE("class and id substring matching is case-insensitive") {
    const auto rules = PruneRules::defaults();
    const DomNode t1 = parse_html("<div class=\"NavBar-Top\">x</div><p>y</p>");
    CHECK(visible_text(prune(t1, rules)) == "y");
    const DomNode t2 = parse_html("<div id=\"page-FOOTER\">x</div><p>y</p>");
    CHECK(visible_text(prune(t2, rules)) == "y");
}

TEST_CASE("reduction stats on the stated examples") {
    CHECK(reduction_stats(100, "abc", 100, "abc").size_ratio ==
          doctest::Approx(1.0));
    CHECK(reduction_stats(100, "abc", 100, "abc").text_retention ==
          doctest::Approx(1.0));
    CHECK(reduction_stats(10000, "x", 1000, "x").size_ratio ==
          doctest::Approx(0.10));
    CHECK_THROWS_AS(reduction_stats(0, "", 0, ""), forge::Error);
}

TEST_CASE("boilerplate-heavy page: size drops, essential text intact") {
    const auto rules = PruneRules::defaults();
    std::string boiler;
    for (int i = 0; i < 60; ++i)
        boiler += "<script>var a" + std::to_string(i) +
                  "='padding padding padding padding';</script>";
    const std::string html = "<html><head>" + boiler +
                             "</head><body><nav><ul><li>Home</li></ul></nav>"
                             "<p>असली सामग्री यहाँ है</p></body></html>";
    const DomNode tree = parse_html(html);
    const DomNode out = prune(tree, rules);
    const std::string serialized = serialize(out);
    const auto stats =
        reduction_stats(html.size(), essential_text(tree, rules),
                        serialized.size(), essential_text(out, rules));
    CHECK(stats.size_ratio <= 0.2);
    CHECK(stats.text_retention == doctest::Approx(1.0));
}

TEST_CASE("prune is idempotent and output is clean on random trees") {
    const auto rules = PruneRules::defaults();
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 120; ++trial) {
        const DomNode tree = testutil::random_tree(rng);
        const DomNode once = prune(tree, rules);
        CHECK(tree_clean(once, rules));
        const DomNode twice = prune(once, rules);
        CHECK(once == twice);
    }
}

TEST_CASE("surviving text keeps source order") {
    const auto rules = PruneRules::defaults();
    const DomNode tree = parse_html(
        "<p>one</p><div class=\"advert-box\">noise</div><p>two</p>"
        "<span>three</span>");
    const std::string text = visible_text(prune(tree, rules));
    const auto p1 = text.find("one");
    const auto p2 = text.find("two");
    const auto p3 = text.find("three");
    REQUIRE(p1 != std::string::npos);
    REQUIRE(p2 != std::string::npos);
    REQUIRE(p3 != std::string::npos);
    CHECK(p1 < p2);
    CHECK(p2 < p3);
    CHECK(text.find("noise") == std::string::npos);
}

TEST_CASE("rules file sections replace defaults") {
    const auto path = std::string(FIXTURES_DIR) + "/tmp_rules.txt";
    {
        std::ofstream f(path);
        f << "BLOCK: marquee\nBLOCK_SUBSTRING: spammy\n";
    }
    const auto rules = PruneRules::from_file(path);
    CHECK(rules.blocklist_tags == std::unordered_set<std::string>{"marquee"});
    CHECK(rules.blocklist_class_id_substrings ==
          std::vector<std::string>{"spammy"});
    // untouched sections keep their defaults
    CHECK(rules.unwrap_tags.count("span") == 1);
    std::remove(path.c_str());
}

TEST_CASE("overlapping allow/block lists fail validation") {
    PruneRules rules = PruneRules::defaults();
    rules.blocklist_tags.insert("p");
    CHECK_THROWS_AS(rules.validate(), forge::ConfigError);
}
