#include "forge/warc.hpp"

#include <zlib.h>

#include <cctype>
#include <cstring>
#include <sstream>

#include "forge/error.hpp"
#include "forge/hash.hpp"
#include "forge/unicode.hpp"
#include "forge/url.hpp"

namespace forge::warc {

namespace detail {

// Pull-based byte source over an istream, transparently inflating gzip
// members. A corrupt member is abandoned and the stream resynchronizes at
// the next gzip magic.
class ByteSource {
  public:
    explicit ByteSource(std::istream& in) : in_(in) {
        in_.read(reinterpret_cast<char*>(peek_), 2);
        peeked_ = static_cast<std::size_t>(in_.gcount());
        gzip_ = peeked_ == 2 && peek_[0] == 0x1F && peek_[1] == 0x8B;
        if (gzip_) init_inflate();
    }

    ~ByteSource() {
        if (zstate_ == ZState::Live) inflateEnd(&strm_);
    }

    ByteSource(const ByteSource&) = delete;
    ByteSource& operator=(const ByteSource&) = delete;

    // Returns bytes read, 0 at end of data.
    std::size_t read(char* dst, std::size_t want) {
        return gzip_ ? read_inflated(dst, want) : read_plain(dst, want);
    }

    std::uint64_t resyncs() const { return resyncs_; }

  private:
    enum class ZState { Dead, Live };

    void init_inflate() {
        std::memset(&strm_, 0, sizeof(strm_));
        if (inflateInit2(&strm_, 15 + 16) != Z_OK)
            throw Error("zlib inflateInit failed");
        zstate_ = ZState::Live;
    }

    std::size_t read_plain(char* dst, std::size_t want) {
        std::size_t got = 0;
        while (got < want && peeked_ > 0) {
            dst[got++] = static_cast<char>(peek_[2 - peeked_]);
            --peeked_;
        }
        if (got < want) {
            in_.read(dst + got, static_cast<std::streamsize>(want - got));
            got += static_cast<std::size_t>(in_.gcount());
        }
        return got;
    }

    bool fill_input() {
        if (in_avail_ > 0) return true;
        std::size_t got = 0;
        while (got < sizeof(inbuf_) && peeked_ > 0) {
            inbuf_[got++] = peek_[2 - peeked_];
            --peeked_;
        }
        if (got < sizeof(inbuf_)) {
            in_.read(reinterpret_cast<char*>(inbuf_) + got,
                     static_cast<std::streamsize>(sizeof(inbuf_) - got));
            got += static_cast<std::size_t>(in_.gcount());
        }
        in_avail_ = got;
        in_pos_ = 0;
        return got > 0;
    }

    // Skip forward in the compressed input until the next gzip magic.
    bool resync() {
        ++resyncs_;
        while (true) {
            for (; in_pos_ + 1 < in_avail_; ++in_pos_) {
                if (inbuf_[in_pos_] == 0x1F && inbuf_[in_pos_ + 1] == 0x8B) {
                    inflateReset(&strm_);
                    return true;
                }
            }
            // keep the last byte, it may be the first half of the magic
            if (in_avail_ > 0 && inbuf_[in_avail_ - 1] == 0x1F) {
                inbuf_[0] = 0x1F;
                in_avail_ = 1;
                in_pos_ = 0;
                std::size_t got = 0;
                in_.read(reinterpret_cast<char*>(inbuf_) + 1,
                         sizeof(inbuf_) - 1);
                got = static_cast<std::size_t>(in_.gcount());
                if (got == 0) return false;
                in_avail_ = 1 + got;
            } else {
                in_avail_ = 0;
                in_pos_ = 0;
                if (!fill_input()) return false;
            }
        }
    }

    std::size_t read_inflated(char* dst, std::size_t want) {
        std::size_t produced = 0;
        while (produced < want) {
            if (!fill_input()) break;
            strm_.next_in = inbuf_ + in_pos_;
            strm_.avail_in = static_cast<uInt>(in_avail_ - in_pos_);
            strm_.next_out = reinterpret_cast<Bytef*>(dst + produced);
            strm_.avail_out = static_cast<uInt>(want - produced);
            const int rc = inflate(&strm_, Z_NO_FLUSH);
            const std::size_t consumed =
                (in_avail_ - in_pos_) - strm_.avail_in;
            in_pos_ += consumed;
            produced = want - strm_.avail_out;
            if (rc == Z_STREAM_END) {
                inflateReset(&strm_);
            } else if (rc != Z_OK && rc != Z_BUF_ERROR) {
                if (!resync()) break;
            } else if (rc == Z_BUF_ERROR && strm_.avail_in == 0 &&
                       in_pos_ >= in_avail_) {
                in_avail_ = 0;
                in_pos_ = 0;
            }
        }
        return produced;
    }

    std::istream& in_;
    bool gzip_ = false;
    unsigned char peek_[2] = {0, 0};
    std::size_t peeked_ = 0;
    z_stream strm_{};
    ZState zstate_ = ZState::Dead;
    unsigned char inbuf_[1 << 16];
    std::size_t in_avail_ = 0;
    std::size_t in_pos_ = 0;
    std::uint64_t resyncs_ = 0;
};

}  // namespace detail

namespace {

std::string header_value(
    const std::vector<std::pair<std::string, std::string>>& headers,
    std::string_view name) {
    for (const auto& [k, v] : headers) {
        if (k.size() == name.size() &&
            uni::ascii_lower(k) == uni::ascii_lower(name))
            return v;
    }
    return {};
}

bool is_html_type(std::string_view mime) {
    return mime == "text/html" || mime == "application/xhtml+xml";
}

// Splits "text/html; charset=UTF-8" into mime + charset.
void split_content_type(const std::string& raw, std::string& mime,
                        std::string& charset) {
    const auto semi = raw.find(';');
    mime = uni::ascii_lower(uni::trim(raw.substr(0, semi)));
    charset.clear();
    if (semi == std::string::npos) return;
    std::string params = uni::ascii_lower(raw.substr(semi + 1));
    const auto key = params.find("charset=");
    if (key == std::string::npos) return;
    std::size_t begin = key + 8;
    while (begin < params.size() && (params[begin] == ' ' || params[begin] == '"'))
        ++begin;
    std::size_t end = begin;
    while (end < params.size() && params[end] != ';' && params[end] != ' ' &&
           params[end] != '"')
        ++end;
    charset = params.substr(begin, end - begin);
}

std::string dechunk(std::string_view body) {
    std::string out;
    std::size_t pos = 0;
    while (pos < body.size()) {
        const auto eol = body.find("\r\n", pos);
        if (eol == std::string_view::npos) break;
        std::size_t len = 0;
        bool any = false;
        for (std::size_t i = pos; i < eol; ++i) {
            const char c = body[i];
            int digit;
            if (c >= '0' && c <= '9') digit = c - '0';
            else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
            else break;
            len = len * 16 + static_cast<std::size_t>(digit);
            any = true;
        }
        if (!any) break;
        if (len == 0) break;
        pos = eol + 2;
        if (pos + len > body.size()) {
            out.append(body.substr(pos));
            break;
        }
        out.append(body.substr(pos, len));
        pos += len + 2;  // skip chunk CRLF
    }
    return out;
}

// Parses the HTTP response block stored in a WARC response record.
bool parse_http_response(const std::string& block, WarcRecord& rec) {
    const auto line_end = block.find("\r\n");
    if (line_end == std::string::npos) return false;
    const std::string status_line = block.substr(0, line_end);
    if (status_line.rfind("HTTP/", 0) != 0) return false;
    const auto sp = status_line.find(' ');
    if (sp == std::string::npos || sp + 4 > status_line.size()) return false;
    int status = 0;
    for (int i = 0; i < 3; ++i) {
        const char c = status_line[sp + 1 + static_cast<std::size_t>(i)];
        if (c < '0' || c > '9') return false;
        status = status * 10 + (c - '0');
    }
    rec.http_status = status;

    const auto headers_end = block.find("\r\n\r\n", line_end);
    if (headers_end == std::string::npos) {
        rec.payload.clear();
        return true;
    }
    std::string content_type;
    bool chunked = false;
    std::size_t pos = line_end + 2;
    while (pos < headers_end) {
        auto eol = block.find("\r\n", pos);
        if (eol == std::string::npos || eol > headers_end) eol = headers_end;
        const std::string line = block.substr(pos, eol - pos);
        const auto colon = line.find(':');
        if (colon != std::string::npos) {
            const std::string key = uni::ascii_lower(uni::trim(line.substr(0, colon)));
            const std::string value = uni::trim(line.substr(colon + 1));
            if (key == "content-type") content_type = value;
            if (key == "transfer-encoding" &&
                uni::ascii_lower(value).find("chunked") != std::string::npos)
                chunked = true;
        }
        pos = eol + 2;
    }
    split_content_type(content_type, rec.content_type, rec.declared_charset);
    std::string body = block.substr(headers_end + 4);
    rec.payload = chunked ? dechunk(body) : std::move(body);
    return true;
}

}  // namespace

std::string WarcRecord::capture_date() const {
    if (capture_time.size() < 10) return {};
    for (int i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (!std::isdigit(static_cast<unsigned char>(capture_time[static_cast<std::size_t>(i)])))
            return {};
    }
    if (capture_time[4] != '-' || capture_time[7] != '-') return {};
    return capture_time.substr(0, 10);
}

int WarcRecord::capture_year() const {
    const std::string date = capture_date();
    return date.empty() ? 0 : std::stoi(date.substr(0, 4));
}

WarcReader::WarcReader(std::istream& in)
    : source_(std::make_unique<detail::ByteSource>(in)) {}

WarcReader::~WarcReader() = default;
WarcReader::WarcReader(WarcReader&&) noexcept = default;
WarcReader& WarcReader::operator=(WarcReader&&) noexcept = default;

bool WarcReader::read_line(std::string& line) {
    line.clear();
    line_overflow_ = false;
    char c;
    while (source_->read(&c, 1) == 1) {
        if (c == '\n') {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return true;
        }
        line.push_back(c);
        if (line.size() > (1 << 20)) {  // header line runaway
            line_overflow_ = true;
            return false;
        }
    }
    return false;
}

// Scans the raw stream for the next "\nWARC/" and captures the rest of that
// version line, so one bad record does not take the archive down with it.
bool WarcReader::resync_to_version() {
    static constexpr char pattern[] = "\nWARC/";
    std::size_t matched = 0;
    char c;
    while (source_->read(&c, 1) == 1) {
        if (c == pattern[matched]) {
            if (++matched == sizeof(pattern) - 1) {
                std::string rest;
                if (!read_line(rest)) return false;
                pending_version_ = "WARC/" + rest;
                return true;
            }
        } else {
            matched = c == '\n' ? 1 : 0;
        }
    }
    return false;
}

WarcReader::ReadStatus WarcReader::read_raw(RawRecord& out) {
    out.headers.clear();
    out.block.clear();

    std::string line;
    if (pending_version_) {
        line = std::move(*pending_version_);
        pending_version_.reset();
    } else {
        // Tolerate stray blank lines between records.
        do {
            if (!read_line(line)) {
                if (first_record_ && (line_overflow_ || !line.empty()))
                    throw FormatError("input is not a WARC stream");
                return ReadStatus::Eof;
            }
        } while (line.empty());
    }

    if (line.rfind("WARC/", 0) != 0) {
        if (first_record_) throw FormatError("input is not a WARC stream");
        resync_to_version();
        return ReadStatus::Malformed;
    }
    first_record_ = false;

    while (true) {
        if (!read_line(line)) return ReadStatus::Malformed;
        if (line.empty()) break;
        const auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        out.headers.emplace_back(uni::trim(line.substr(0, colon)),
                                 uni::trim(line.substr(colon + 1)));
    }

    const std::string length_str = header_value(out.headers, "Content-Length");
    if (length_str.empty()) {
        resync_to_version();
        return ReadStatus::Malformed;
    }
    std::size_t length = 0;
    for (char c : length_str) {
        if (c < '0' || c > '9') return ReadStatus::Malformed;
        length = length * 10 + static_cast<std::size_t>(c - '0');
        if (length > (std::size_t{1} << 33)) return ReadStatus::Malformed;
    }

    out.block.resize(length);
    std::size_t got = 0;
    while (got < length) {
        const std::size_t n = source_->read(out.block.data() + got, length - got);
        if (n == 0) {
            out.block.resize(got);
            return ReadStatus::Malformed;  // truncated stream
        }
        got += n;
    }
    // The standard puts CRLF CRLF after the block. Anything else means the
    // declared length disagreed with the payload; skip and resync.
    char sep[4];
    const std::size_t n = source_->read(sep, 4);
    if (n == 4 && std::memcmp(sep, "\r\n\r\n", 4) != 0) {
        resync_to_version();
        return ReadStatus::Malformed;
    }
    return ReadStatus::Ok;
}

std::optional<WarcRecord> WarcReader::next() {
    RawRecord raw;
    while (true) {
        const ReadStatus status = read_raw(raw);
        counters_.gzip_resyncs = source_->resyncs();
        if (status == ReadStatus::Eof) return std::nullopt;
        ++counters_.records_scanned;
        if (status == ReadStatus::Malformed) {
            ++counters_.skipped_malformed;
            continue;
        }

        const std::string type =
            uni::ascii_lower(header_value(raw.headers, "WARC-Type"));
        if (type != "response") {
            ++counters_.skipped_non_html;
            continue;
        }
        WarcRecord rec;
        rec.target_url = header_value(raw.headers, "WARC-Target-URI");
        rec.capture_time = header_value(raw.headers, "WARC-Date");
        rec.truncated = !header_value(raw.headers, "WARC-Truncated").empty();
        if (rec.target_url.empty() || !parse_http_response(raw.block, rec)) {
            ++counters_.skipped_malformed;
            continue;
        }
        if (rec.http_status < 200 || rec.http_status > 299 ||
            !is_html_type(rec.content_type)) {
            ++counters_.skipped_non_html;
            continue;
        }
        ++counters_.yielded;
        return rec;
    }
}

bool Deduplicator::admit(const WarcRecord& record) {
    std::string key;
    if (canonical_) {
        try {
            key = canonicalize_url(record.target_url);
        } catch (const Error&) {
            key = record.target_url;
        }
    } else {
        key = record.target_url;
    }
    if (!seen_urls_.insert(std::move(key)).second) {
        ++dropped_;
        return false;
    }
    if (content_hash_ &&
        !seen_hashes_.insert(fnv1a128_hex(record.payload)).second) {
        ++dropped_;
        return false;
    }
    return true;
}

std::string gzip_compress(std::string_view data) {
    z_stream strm;
    std::memset(&strm, 0, sizeof(strm));
    if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                     Z_DEFAULT_STRATEGY) != Z_OK)
        throw Error("zlib deflateInit failed");
    std::string out;
    out.resize(deflateBound(&strm, static_cast<uLong>(data.size())));
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    strm.avail_in = static_cast<uInt>(data.size());
    strm.next_out = reinterpret_cast<Bytef*>(out.data());
    strm.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&strm, Z_FINISH);
    deflateEnd(&strm);
    if (rc != Z_STREAM_END) throw Error("gzip compression failed");
    out.resize(out.size() - strm.avail_out);
    return out;
}

namespace {

std::string build_record(const std::string& type, const std::string& url,
                         const std::string& date, const std::string& block) {
    std::ostringstream rec;
    rec << "WARC/1.0\r\n"
        << "WARC-Type: " << type << "\r\n"
        << "WARC-Target-URI: " << url << "\r\n"
        << "WARC-Date: " << date << "\r\n"
        << "WARC-Record-ID: <urn:uuid:" << fnv1a128_hex(type + url + date)
        << ">\r\n"
        << "Content-Type: application/http; msgtype=" << type << "\r\n"
        << "Content-Length: " << block.size() << "\r\n\r\n"
        << block << "\r\n\r\n";
    return rec.str();
}

}  // namespace

void write_response_record(std::ostream& out, const std::string& url,
                           const std::string& date, int status,
                           const std::string& content_type,
                           const std::string& body, bool gzip_member) {
    std::ostringstream http;
    http << "HTTP/1.1 " << status << (status == 200 ? " OK" : " X") << "\r\n"
         << "Content-Type: " << content_type << "\r\n"
         << "Content-Length: " << body.size() << "\r\n\r\n"
         << body;
    const std::string record = build_record("response", url, date, http.str());
    if (gzip_member) {
        const std::string gz = gzip_compress(record);
        out.write(gz.data(), static_cast<std::streamsize>(gz.size()));
    } else {
        out.write(record.data(), static_cast<std::streamsize>(record.size()));
    }
}

void write_request_record(std::ostream& out, const std::string& url,
                          const std::string& date, bool gzip_member) {
    const std::string http = "GET / HTTP/1.1\r\nHost: x\r\n\r\n";
    const std::string record = build_record("request", url, date, http);
    if (gzip_member) {
        const std::string gz = gzip_compress(record);
        out.write(gz.data(), static_cast<std::streamsize>(gz.size()));
    } else {
        out.write(record.data(), static_cast<std::streamsize>(record.size()));
    }
}

}  // namespace forge::warc
