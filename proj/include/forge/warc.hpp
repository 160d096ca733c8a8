#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace forge::warc {

// One archived HTTP response. `payload` holds the decoded HTTP body bytes;
// headers of the inner HTTP block are already consumed.
struct WarcRecord {
    std::string target_url;
    std::string capture_time;  // WARC-Date, ISO 8601 UTC
    int http_status = 0;
    std::string content_type;      // lowercased mime, parameters stripped
    std::string declared_charset;  // charset= parameter if present
    std::string payload;
    bool truncated = false;

    // "YYYY-MM-DD" prefix of capture_time, empty when unparseable.
    std::string capture_date() const;
    int capture_year() const;  // 0 when unknown
};

struct IngestCounters {
    std::uint64_t records_scanned = 0;   // every WARC record seen
    std::uint64_t yielded = 0;           // HTML 2xx responses handed out
    std::uint64_t skipped_non_html = 0;  // wrong type/status/content-type
    std::uint64_t skipped_malformed = 0;
    std::uint64_t gzip_resyncs = 0;
    std::uint64_t dedup_dropped = 0;
};

namespace detail {
class ByteSource;
}

// Streams WARC 1.0/1.1 records, plain or gzip-per-record, yielding only
// WARC-Type: response records with 2xx status and an HTML content type.
// Memory stays bounded by the largest single record.
class WarcReader {
  public:
    explicit WarcReader(std::istream& in);
    ~WarcReader();
    WarcReader(WarcReader&&) noexcept;
    WarcReader& operator=(WarcReader&&) noexcept;

    // Next qualifying record, nullopt at end of stream. Throws FormatError
    // when the stream does not start with a WARC record at all.
    std::optional<WarcRecord> next();

    const IngestCounters& counters() const { return counters_; }

  private:
    struct RawRecord {
        std::vector<std::pair<std::string, std::string>> headers;
        std::string block;
    };

    enum class ReadStatus { Ok, Eof, Malformed };
    ReadStatus read_raw(RawRecord& out);
    bool read_line(std::string& line);
    bool resync_to_version();

    std::unique_ptr<detail::ByteSource> source_;
    IngestCounters counters_;
    bool first_record_ = true;
    bool line_overflow_ = false;
    std::optional<std::string> pending_version_;
};

// First occurrence per canonical URL wins; survivor order preserved. With
// `content_hash` enabled, records whose payload hashes to an already-seen
// value are dropped too.
class Deduplicator {
  public:
    explicit Deduplicator(bool canonical = true, bool content_hash = false)
        : canonical_(canonical), content_hash_(content_hash) {}

    bool admit(const WarcRecord& record);

    std::uint64_t dropped() const { return dropped_; }

  private:
    bool canonical_;
    bool content_hash_;
    std::unordered_set<std::string> seen_urls_;
    std::unordered_set<std::string> seen_hashes_;
    std::uint64_t dropped_ = 0;
};

// Test/fixture support: append one response record (optionally its own gzip
// member) to `out`.
void write_response_record(std::ostream& out, const std::string& url,
                           const std::string& date, int status,
                           const std::string& content_type,
                           const std::string& body, bool gzip_member);

void write_request_record(std::ostream& out, const std::string& url,
                          const std::string& date, bool gzip_member);

std::string gzip_compress(std::string_view data);

}  // namespace forge::warc
