#include <doctest.h>

#include <random>

#include "forge/error.hpp"
#include "forge/url.hpp"

using namespace forge;

TEST_CASE("canonicalize lowercases scheme and host, strips fragment and port") {
    CHECK(canonicalize_url("HTTP://Example.com:80/a#frag") == "http://example.com/a");
    CHECK(canonicalize_url("https://E.com:443/x") == "https://e.com/x");
    CHECK(canonicalize_url("https://e.com:8443/x") == "https://e.com:8443/x");
}

TEST_CASE("canonicalize preserves non-empty query, strips empty query") {
    CHECK(canonicalize_url("https://hindi.news18.com/news/x?id=1") ==
          "https://hindi.news18.com/news/x?id=1");
    CHECK(canonicalize_url("https://e.com/a?") == "https://e.com/a");
    // path bytes stay untouched
    CHECK(canonicalize_url("https://e.com/A%2fB/C") == "https://e.com/A%2fB/C");
}

TEST_CASE("canonicalize is idempotent") {
    const char* inputs[] = {
        "HTTP://Example.com:80/a#frag",
        "https://hindi.news18.com/news/x?id=1",
        "http://a.b.c/d/e/f?q=1&r=2",
        "https://user@host.com:9999/p?x#y",
    };
    for (const auto* input : inputs) {
        const std::string once = canonicalize_url(input);
        CHECK(canonicalize_url(once) == once);
    }
}

TEST_CASE("canonicalize rejects non-absolute URLs naming the input") {
    CHECK_THROWS_WITH_AS(canonicalize_url("not a url"),
                         doctest::Contains("not a url"), Error);
    CHECK_THROWS_AS(canonicalize_url("/relative/path"), Error);
    CHECK_THROWS_AS(canonicalize_url(""), Error);
}

TEST_CASE("parse_url components") {
    const auto u = parse_url("https://User@Host.Example.com:8080/p/q?a=b#frag");
    REQUIRE(u.has_value());
    CHECK(u->scheme == "https");
    CHECK(u->userinfo == "User");
    CHECK(u->host == "host.example.com");
    CHECK(u->port == 8080);
    CHECK(u->path == "/p/q");
    CHECK(*u->query == "a=b");
    CHECK(*u->fragment == "frag");
    CHECK_FALSE(parse_url("mailto:x@y").has_value());
    CHECK_FALSE(parse_url("//nope.com/x").has_value());
}

TEST_CASE("resolve_url handles the href/src forms") {
    const auto base = *parse_url("https://e.com/a/b/page.html?q=1");
    CHECK(*resolve_url(base, "img.png") == "https://e.com/a/b/img.png");
    CHECK(*resolve_url(base, "/x.png") == "https://e.com/x.png");
    CHECK(*resolve_url(base, "../up.png") == "https://e.com/a/up.png");
    CHECK(*resolve_url(base, "//cdn.e.com/y.png") == "https://cdn.e.com/y.png");
    CHECK(*resolve_url(base, "http://other.com/z") == "http://other.com/z");
    CHECK(*resolve_url(base, "?id=2") == "https://e.com/a/b/page.html?id=2");
    CHECK_FALSE(resolve_url(base, "javascript:void(0)").has_value());
    CHECK_FALSE(resolve_url(base, "data:image/png;base64,xyz").has_value());
    CHECK_FALSE(resolve_url(base, "").has_value());
    CHECK_FALSE(resolve_url(base, "#top").has_value());
}

TEST_CASE("filename_of takes the lowercased final component, query stripped") {
    CHECK(filename_of("https://a.com/img/Default_Photo.JPG?v=2") ==
          "default_photo.jpg");
    CHECK(filename_of("https://a.com/") == "");
    CHECK(filename_of("https://a.com/a/b/logo-small.webp") == "logo-small.webp");
}

TEST_CASE("registered_domain lowercases host and strips port") {
    CHECK(registered_domain("https://hindi.news18.com/a/b") == "hindi.news18.com");
    CHECK(registered_domain("http://EXAMPLE.com:8080/") == "example.com");
    CHECK_THROWS_AS(registered_domain("mailto:x@y"), Error);
}

TEST_CASE("dedup property: canonical equality is an equivalence over variants") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const std::string host = (rng() % 2 ? "A.COM" : "a.com");
        const std::string port = (rng() % 2 ? ":80" : "");
        const std::string frag = (rng() % 2 ? "#x" : "");
        const std::string url = "http://" + host + port + "/p" + frag;
        CHECK(canonicalize_url(url) == "http://a.com/p");
    }
}
