#include "forge/fetch.hpp"

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "forge/hash.hpp"
#include "forge/url.hpp"

namespace forge::fetch {

namespace fs = std::filesystem;

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Ok: return "ok";
        case Outcome::HttpError: return "http_error";
        case Outcome::Timeout: return "timeout";
        case Outcome::DecodeError: return "decode_error";
        case Outcome::TooLarge: return "too_large";
    }
    return "unknown";
}

namespace {

// Limits concurrent requests per host without holding a global lock during
// the request itself.
class HostGate {
  public:
    explicit HostGate(int limit) : limit_(limit) {}

    void acquire(const std::string& host) {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return active_[host] < limit_; });
        ++active_[host];
    }

    void release(const std::string& host) {
        {
            std::lock_guard lock(mutex_);
            --active_[host];
        }
        cv_.notify_all();
    }

  private:
    int limit_;
    std::mutex mutex_;
    std::condition_variable cv_;
    std::unordered_map<std::string, int> active_;
};

fs::path cache_path(const std::string& cache_dir, const std::string& url) {
    const std::string key = fnv1a128_hex(url);
    return fs::path(cache_dir) / key.substr(0, 2) / key;
}

std::optional<std::string> cache_read(const std::string& cache_dir,
                                      const std::string& url) {
    if (cache_dir.empty()) return std::nullopt;
    std::ifstream in(cache_path(cache_dir, url), std::ios::binary);
    if (!in) return std::nullopt;
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return bytes;
}

void cache_write(const std::string& cache_dir, const std::string& url,
                 const std::string& bytes) {
    if (cache_dir.empty()) return;
    const fs::path path = cache_path(cache_dir, url);
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    const fs::path tmp = path.string() + ".tmp" + std::to_string(
        std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) return;
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    fs::rename(tmp, path, ec);
    if (ec) fs::remove(tmp, ec);
}

struct HttpOutcome {
    Outcome outcome = Outcome::Timeout;
    int status = 0;
    std::string body;
    bool retryable = false;
};

HttpOutcome http_get(const Url& url, const FetchOptions& opt) {
    HttpOutcome out;
    const bool https = url.scheme == "https";
    if (url.scheme != "http" && !https) {
        out.outcome = Outcome::HttpError;
        return out;
    }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (https) {
        out.outcome = Outcome::HttpError;
        return out;
    }
#endif
    const int port = url.port >= 0 ? url.port : (https ? 443 : 80);
    httplib::Client client(url.host, port);
    client.set_connection_timeout(opt.timeout_ms / 1000,
                                  (opt.timeout_ms % 1000) * 1000);
    client.set_read_timeout(opt.timeout_ms / 1000,
                            (opt.timeout_ms % 1000) * 1000);
    client.set_follow_location(true);
    client.set_default_headers({{"User-Agent", opt.user_agent}});

    std::string path = url.path.empty() ? "/" : url.path;
    if (url.query) path += "?" + *url.query;

    std::string body;
    bool too_large = false;
    auto res = client.Get(path, [&](const char* data, std::size_t len) {
        body.append(data, len);
        if (body.size() > opt.max_bytes) {
            too_large = true;
            return false;
        }
        return true;
    });

    if (too_large) {
        out.outcome = Outcome::TooLarge;
        return out;
    }
    if (!res) {
        out.outcome = Outcome::Timeout;
        out.retryable = true;
        return out;
    }
    out.status = res->status;
    if (res->status >= 200 && res->status < 300) {
        out.outcome = Outcome::Ok;
        out.body = std::move(body);
    } else {
        out.outcome = Outcome::HttpError;
        out.retryable = res->status >= 500;
    }
    return out;
}

FetchResult fetch_one(const FetchTask& task, const FetchOptions& opt,
                      HostGate& gate) {
    FetchResult result;
    result.task = task;

    if (auto cached = cache_read(opt.cache_dir, task.src_url)) {
        if (auto meta = decode_meta(*cached)) {
            result.outcome = Outcome::Ok;
            result.meta = meta;
            result.bytes = std::move(cached);
        } else {
            result.outcome = Outcome::DecodeError;
        }
        return result;
    }
    if (opt.offline_only) {
        result.outcome = Outcome::Timeout;  // never attempted
        return result;
    }

    auto parsed = parse_url(task.src_url);
    if (!parsed) {
        result.outcome = Outcome::HttpError;
        return result;
    }

    gate.acquire(parsed->host);
    HttpOutcome http;
    for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(
                opt.backoff_base_ms * (1 << (attempt - 1))));
        }
        http = http_get(*parsed, opt);
        if (!http.retryable) break;
    }
    gate.release(parsed->host);

    result.http_status = http.status;
    if (http.outcome != Outcome::Ok) {
        result.outcome = http.outcome;
        return result;
    }
    cache_write(opt.cache_dir, task.src_url, http.body);
    if (auto meta = decode_meta(http.body)) {
        result.outcome = Outcome::Ok;
        result.meta = meta;
        result.bytes = std::move(http.body);
    } else {
        result.outcome = Outcome::DecodeError;
    }
    return result;
}

}  // namespace

BatchReport fetch_batch(const std::vector<FetchTask>& tasks,
                        const FetchOptions& options) {
    BatchReport report;
    report.results.resize(tasks.size());
    if (tasks.empty()) return report;

    const int workers = std::max(
        1, std::min<int>(options.parallelism, static_cast<int>(tasks.size())));
    HostGate gate(std::max(1, options.per_host_limit));
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> ok_count{0};

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            report.results[i] = fetch_one(tasks[i], options, gate);
            if (report.results[i].outcome == Outcome::Ok) ++ok_count;
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    report.ok_count = ok_count.load();
    report.success_rate =
        static_cast<double>(report.ok_count) / static_cast<double>(tasks.size());
    return report;
}

filter::DocumentResult revalidate(const assemble::InterleavedDocument& doc,
                                  const std::vector<FetchResult>& results,
                                  const filter::Thresholds& th,
                                  bool drop_unfetched) {
    std::unordered_map<int, const FetchResult*> by_index;
    for (const auto& r : results) {
        if (r.task.doc_id == doc.doc_id) by_index[r.task.segment_index] = &r;
    }

    filter::DocumentResult out;
    assemble::InterleavedDocument updated = doc;
    std::vector<assemble::Segment> survivors;
    survivors.reserve(updated.segments.size());
    std::size_t images = 0;

    const filter::Blocklists no_lists;  // node re-check is dimensions/format only
    for (std::size_t i = 0; i < updated.segments.size(); ++i) {
        auto& segment = updated.segments[i];
        auto* img = std::get_if<assemble::ImageSegment>(&segment);
        if (!img) {
            survivors.push_back(std::move(segment));
            continue;
        }
        const auto it = by_index.find(static_cast<int>(i));
        const FetchResult* res = it == by_index.end() ? nullptr : it->second;
        if (!res || res->outcome != Outcome::Ok) {
            if (drop_unfetched) {
                ++out.dropped_unfetched;
                continue;
            }
            survivors.push_back(std::move(segment));
            ++images;
            continue;
        }
        img->image.width_px = res->meta->width_px;
        img->image.height_px = res->meta->height_px;
        img->image.format = res->meta->format;
        const filter::Verdict v =
            filter::filter_image_node(img->image, th, no_lists);
        if (!v.accepted) {
            out.dropped_images.push_back(v);
            continue;
        }
        survivors.push_back(std::move(segment));
        ++images;
    }

    if (images < static_cast<std::size_t>(th.doc_min_images)) {
        out.verdict = filter::Verdict::reject(filter::Reason::NoImages);
        return out;
    }
    if (images > static_cast<std::size_t>(th.doc_max_images)) {
        out.verdict = filter::Verdict::reject(filter::Reason::TooManyImages);
        return out;
    }
    updated.segments = std::move(survivors);
    out.verdict = filter::Verdict::ok();
    out.doc = std::move(updated);
    return out;
}

}  // namespace forge::fetch
