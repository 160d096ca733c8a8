#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "forge/error.hpp"
#include "forge/warc.hpp"

using namespace forge::warc;

namespace {

std::string archive_with(const std::vector<std::string>& pages, bool gzip) {
    std::ostringstream out;
    int i = 0;
    for (const auto& html : pages) {
        write_response_record(out, "http://site.test/p" + std::to_string(i++),
                              "2020-03-0" + std::to_string(1 + i % 9) +
                                  "T00:00:00Z",
                              200, "text/html; charset=utf-8", html, gzip);
    }
    return out.str();
}

}  // namespace

TEST_CASE("empty stream yields empty sequence") {
    std::istringstream in("");
    WarcReader reader(in);
    CHECK_FALSE(reader.next().has_value());
    CHECK(reader.counters().records_scanned == 0);
}

TEST_CASE("only HTML 2xx responses are yielded") {
    for (const bool gzip : {false, true}) {
        std::ostringstream out;
        write_response_record(out, "http://a.test/1", "2019-01-01T00:00:00Z", 200,
                              "text/html", "<p>one</p>", gzip);
        write_request_record(out, "http://a.test/1", "2019-01-01T00:00:00Z", gzip);
        write_response_record(out, "http://a.test/2", "2019-01-01T00:00:00Z", 404,
                              "text/html", "<p>gone</p>", gzip);
        write_response_record(out, "http://a.test/3", "2019-01-01T00:00:00Z", 200,
                              "image/png", "xxxx", gzip);
        write_response_record(out, "http://a.test/4", "2019-01-01T00:00:00Z", 200,
                              "text/html; charset=utf-8", "<p>four</p>", gzip);
        write_response_record(out, "http://a.test/5", "2019-01-01T00:00:00Z", 206,
                              "text/html", "<p>partial</p>", gzip);

        std::istringstream in(out.str());
        WarcReader reader(in);
        std::vector<std::string> urls;
        while (auto rec = reader.next()) {
            urls.push_back(rec->target_url);
            CHECK(rec->http_status >= 200);
            CHECK(rec->http_status <= 299);
        }
        // 206 is a 2xx response and HTML: both /1, /4 and /5 qualify.
        CHECK(urls == std::vector<std::string>{"http://a.test/1", "http://a.test/4",
                                               "http://a.test/5"});
        CHECK(reader.counters().records_scanned == 6);
        CHECK(reader.counters().skipped_non_html == 3);
        CHECK(reader.counters().skipped_malformed == 0);
    }
}

TEST_CASE("record payload carries the HTTP body and metadata") {
    std::ostringstream out;
    write_response_record(out, "http://a.test/x", "2013-06-15T12:30:00Z", 200,
                          "text/html; charset=ISO-8859-1", "<p>body</p>", false);
    std::istringstream in(out.str());
    WarcReader reader(in);
    const auto rec = reader.next();
    REQUIRE(rec.has_value());
    CHECK(rec->payload == "<p>body</p>");
    CHECK(rec->content_type == "text/html");
    CHECK(rec->declared_charset == "iso-8859-1");
    CHECK(rec->capture_date() == "2013-06-15");
    CHECK(rec->capture_year() == 2013);
    CHECK_FALSE(rec->truncated);
}

TEST_CASE("length mismatch skips the record, keeps the rest") {
    for (const bool gzip : {false, true}) {
        std::ostringstream out;
        write_response_record(out, "http://a.test/ok1", "2020-01-01T00:00:00Z",
                              200, "text/html", "<p>first</p>", gzip);
        {
            // Declared length 20 bytes short of the actual block.
            const std::string body =
                "HTTP/1.1 200 OK\r\nContent-Type: text/html\r\n\r\n<p>corrupt "
                "payload here</p>";
            std::ostringstream rec;
            rec << "WARC/1.0\r\nWARC-Type: response\r\n"
                << "WARC-Target-URI: http://a.test/bad\r\n"
                << "WARC-Date: 2020-01-01T00:00:00Z\r\n"
                << "Content-Length: " << body.size() - 20 << "\r\n\r\n"
                << body << "\r\n\r\n";
            if (gzip) {
                const std::string gz = gzip_compress(rec.str());
                out.write(gz.data(), static_cast<std::streamsize>(gz.size()));
            } else {
                out << rec.str();
            }
        }
        write_response_record(out, "http://a.test/ok2", "2020-01-01T00:00:00Z",
                              200, "text/html", "<p>second</p>", gzip);

        std::istringstream in(out.str());
        WarcReader reader(in);
        std::vector<std::string> urls;
        while (auto rec = reader.next()) urls.push_back(rec->target_url);
        CHECK(urls == std::vector<std::string>{"http://a.test/ok1",
                                               "http://a.test/ok2"});
        CHECK(reader.counters().skipped_malformed == 1);
    }
}

TEST_CASE("corrupt gzip member resynchronizes at the next member") {
    std::ostringstream out;
    write_response_record(out, "http://a.test/1", "2020-01-01T00:00:00Z", 200,
                          "text/html", "<p>one</p>", true);
    std::string middle;
    {
        std::ostringstream mid;
        write_response_record(mid, "http://a.test/2", "2020-01-01T00:00:00Z", 200,
                              "text/html", "<p>two</p>", true);
        middle = mid.str();
        // Trash deflate bytes in the middle of the member.
        for (std::size_t i = middle.size() / 2; i < middle.size() / 2 + 8; ++i)
            middle[i] = static_cast<char>(~middle[i]);
    }
    out << middle;
    write_response_record(out, "http://a.test/3", "2020-01-01T00:00:00Z", 200,
                          "text/html", "<p>three</p>", true);

    std::istringstream in(out.str());
    WarcReader reader(in);
    std::vector<std::string> urls;
    while (auto rec = reader.next()) urls.push_back(rec->target_url);
    CHECK(urls.front() == "http://a.test/1");
    CHECK(urls.back() == "http://a.test/3");
    CHECK(reader.counters().gzip_resyncs >= 1);
}

TEST_CASE("non-WARC stream is a fatal format error") {
    std::istringstream in("GIF89a this is not a warc file\nmore bytes\n");
    WarcReader reader(in);
    CHECK_THROWS_AS(reader.next(), forge::FormatError);
}

TEST_CASE("dedup keeps first occurrence per canonical URL") {
    WarcRecord a1{"http://E.com/a#x", "", 200, "text/html", "", "pay1", false};
    WarcRecord a2{"http://e.com:80/a", "", 200, "text/html", "", "pay2", false};
    WarcRecord b{"http://e.com/b", "", 200, "text/html", "", "pay3", false};
    Deduplicator dedup(true, false);
    CHECK(dedup.admit(a1));
    CHECK_FALSE(dedup.admit(a2));
    CHECK(dedup.admit(b));
    CHECK(dedup.dropped() == 1);
}

TEST_CASE("dedup against a brute-force canonical set oracle") {
    std::mt19937 rng(99);
    std::vector<WarcRecord> records;
    for (int i = 0; i < 10; ++i) {
        const int which = static_cast<int>(rng() % 3);
        const std::string url = "http://HOST" + std::to_string(which) +
                                ".test:80/page" + (rng() % 2 ? "#f" : "");
        records.push_back({url, "", 200, "text/html", "", "", false});
    }
    Deduplicator dedup(true, false);
    std::set<std::string> oracle;
    std::size_t kept = 0;
    for (const auto& rec : records) {
        const bool fresh = oracle.insert(forge::canonicalize_url(rec.target_url)).second;
        CHECK(dedup.admit(rec) == fresh);
        if (fresh) ++kept;
    }
    CHECK(kept == oracle.size());
    CHECK(oracle.size() == 3);
}

TEST_CASE("content-hash dedup drops byte-identical payloads") {
    WarcRecord a{"http://e.com/a", "", 200, "text/html", "", "same-bytes", false};
    WarcRecord b{"http://e.com/b", "", 200, "text/html", "", "same-bytes", false};
    Deduplicator plain(true, false);
    CHECK(plain.admit(a));
    CHECK(plain.admit(b));
    Deduplicator hashed(true, true);
    CHECK(hashed.admit(a));
    CHECK_FALSE(hashed.admit(b));
}

TEST_CASE("chunked transfer bodies are de-chunked") {
    std::ostringstream http;
    http << "HTTP/1.1 200 OK\r\nContent-Type: text/html\r\n"
         << "Transfer-Encoding: chunked\r\n\r\n"
         << "5\r\n<p>ab\r\n4\r\ncd</\r\n2\r\np>\r\n0\r\n\r\n";
    const std::string block = http.str();
    std::ostringstream out;
    out << "WARC/1.0\r\nWARC-Type: response\r\n"
        << "WARC-Target-URI: http://a.test/chunk\r\n"
        << "WARC-Date: 2020-01-01T00:00:00Z\r\n"
        << "Content-Length: " << block.size() << "\r\n\r\n"
        << block << "\r\n\r\n";
    std::istringstream in(out.str());
    WarcReader reader(in);
    const auto rec = reader.next();
    REQUIRE(rec.has_value());
    CHECK(rec->payload == "<p>abcd</p>");
}

TEST_CASE("large archives stream in record order") {
    const std::string archive = archive_with(
        std::vector<std::string>(500, "<p>page content here</p>"), true);
    std::istringstream in(archive);
    WarcReader reader(in);
    int count = 0;
    while (auto rec = reader.next()) {
        CHECK(rec->target_url == "http://site.test/p" + std::to_string(count));
        ++count;
    }
    CHECK(count == 500);
}
