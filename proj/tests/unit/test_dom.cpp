#include <doctest.h>

#include "forge/dom.hpp"
#include "forge/error.hpp"

using namespace forge::dom;

namespace {

const DomNode* child_element(const DomNode& node, std::string_view tag) {
    for (const auto& c : node.children) {
        if (c.tag == tag) return &c;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("minimal document builds html -> body -> p -> #text") {
    const DomNode root = parse_html("<p>hi</p>");
    CHECK(root.tag == "html");
    const auto* body = child_element(root, "body");
    REQUIRE(body != nullptr);
    REQUIRE(body->children.size() == 1);
    const auto& p = body->children[0];
    CHECK(p.tag == "p");
    REQUIRE(p.children.size() == 1);
    CHECK(p.children[0].is_text());
    CHECK(p.children[0].text == "hi");
}

TEST_CASE("unclosed paragraphs become siblings") {
    const DomNode root = parse_html("<p>a<p>b");
    const auto* body = child_element(root, "body");
    REQUIRE(body != nullptr);
    REQUIRE(body->children.size() == 2);
    CHECK(body->children[0].tag == "p");
    CHECK(body->children[0].children[0].text == "a");
    CHECK(body->children[1].tag == "p");
    CHECK(body->children[1].children[0].text == "b");
}

TEST_CASE("empty payload is an error") {
    CHECK_THROWS_WITH_AS(parse_html(""), "empty document", forge::Error);
}

TEST_CASE("stray end tags are dropped, unclosed elements auto-close") {
    const DomNode root = parse_html("<div><p>x</div></span>");
    const auto* body = child_element(root, "body");
    REQUIRE(body != nullptr);
    REQUIRE(body->children.size() == 1);
    CHECK(body->children[0].tag == "div");
    CHECK(body->children[0].children[0].tag == "p");
}

TEST_CASE("head content lands in head, body content in body") {
    const DomNode root =
        parse_html("<title>T</title><meta charset=\"utf-8\"><p>b</p>");
    const auto* head = child_element(root, "head");
    REQUIRE(head != nullptr);
    CHECK(child_element(*head, "title") != nullptr);
    CHECK(child_element(*head, "meta") != nullptr);
    const auto* body = child_element(root, "body");
    REQUIRE(body != nullptr);
    CHECK(body->children.size() == 1);
}

TEST_CASE("attributes parse quoted, single-quoted and bare") {
    const DomNode root = parse_html(
        "<p><img src=\"a.png\" alt='the alt' width=300 data-x></p>");
    const auto* body = child_element(root, "body");
    const auto& img = body->children[0].children[0];
    CHECK(img.tag == "img");
    CHECK(*img.attr("src") == "a.png");
    CHECK(*img.attr("alt") == "the alt");
    CHECK(*img.attr("width") == "300");
    CHECK(img.attr("data-x") != nullptr);
    CHECK(img.attr("missing") == nullptr);
}

TEST_CASE("script and style content is raw text, never markup") {
    const DomNode root = parse_html(
        "<script>if (a<b) x();</script><p>real</p>");
    const auto* head = child_element(root, "head");
    REQUIRE(head != nullptr);
    const auto* script = child_element(*head, "script");
    REQUIRE(script != nullptr);
    CHECK(script->children[0].text == "if (a<b) x();");
    const auto* body = child_element(root, "body");
    REQUIRE(body != nullptr);
    CHECK(body->children[0].tag == "p");
}

TEST_CASE("comments are kept as comment nodes for the pruner") {
    const DomNode root = parse_html("<p>a<!-- hidden -->b</p>");
    const auto* body = child_element(root, "body");
    const auto& p = body->children[0];
    REQUIRE(p.children.size() == 3);
    CHECK(p.children[1].is_comment());
    CHECK(p.children[1].text == " hidden ");
}

TEST_CASE("entities decode in text and attributes") {
    const DomNode root =
        parse_html("<p title=\"A &amp; B\">x &lt; y &#38; z &#x41;</p>");
    const auto* body = child_element(root, "body");
    const auto& p = body->children[0];
    CHECK(*p.attr("title") == "A & B");
    CHECK(p.children[0].text == "x < y & z A");
    // unknown entity left alone
    CHECK(decode_entities("&notanentity; &amp;") == "&notanentity; &");
}

TEST_CASE("payload decodes per charset hint with lossy fallback") {
    // 0xE9 is e-acute in latin-1 but an invalid UTF-8 lead byte.
    const std::string latin1 = "caf\xE9";
    CHECK(decode_payload(latin1, "ISO-8859-1") == "caf\xC3\xA9");
    CHECK(decode_payload(latin1, "utf-8") == "caf\xEF\xBF\xBD");
    CHECK(decode_payload(latin1, "x-unknown-charset") == "caf\xEF\xBF\xBD");
    // meta sniffing picks up the charset when no hint is given
    const std::string page =
        "<html><head><meta charset=\"windows-1252\"></head><body>caf\xE9</body>";
    CHECK(decode_payload(page, std::nullopt).find("caf\xC3\xA9") !=
          std::string::npos);
}

TEST_CASE("void elements never swallow siblings") {
    const DomNode root = parse_html("<p>a<br>b<img src=\"x.png\">c</p>");
    const auto* body = child_element(root, "body");
    const auto& p = body->children[0];
    REQUIRE(p.children.size() == 5);
    CHECK(p.children[1].tag == "br");
    CHECK(p.children[3].tag == "img");
}

TEST_CASE("list items close one another") {
    const DomNode root = parse_html("<ul><li>one<li>two<li>three</ul>");
    const auto* body = child_element(root, "body");
    const auto& ul = body->children[0];
    REQUIRE(ul.children.size() == 3);
    for (const auto& li : ul.children) CHECK(li.tag == "li");
}

TEST_CASE("serialize emits parseable HTML") {
    const DomNode root = parse_html("<div class=\"x\"><p>a &amp; b</p></div>");
    const std::string html = serialize(root);
    CHECK(html.find("<div class=\"x\">") != std::string::npos);
    CHECK(html.find("a &amp; b") != std::string::npos);
    const DomNode reparsed = parse_html(html);
    CHECK(extract_text(reparsed) == extract_text(root));
}
