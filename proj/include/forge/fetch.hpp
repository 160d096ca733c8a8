#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "forge/assemble.hpp"
#include "forge/filters.hpp"
#include "forge/imagemeta.hpp"

namespace forge::fetch {

struct FetchTask {
    std::string src_url;
    std::string doc_id;
    int segment_index = 0;
};

enum class Outcome { Ok, HttpError, Timeout, DecodeError, TooLarge };

const char* outcome_name(Outcome o);

struct FetchResult {
    FetchTask task;
    Outcome outcome = Outcome::Timeout;
    int http_status = 0;  // set for HttpError
    std::optional<std::string> bytes;  // present iff Ok
    std::optional<ImageMeta> meta;     // present iff Ok
};

struct FetchOptions {
    int parallelism = 40;
    int per_host_limit = 4;
    int timeout_ms = 10000;
    int max_retries = 2;
    int backoff_base_ms = 500;
    std::size_t max_bytes = std::size_t{20} << 20;
    std::string cache_dir;      // empty disables the cache
    bool offline_only = false;  // cache hits only; misses become Timeout
    std::string user_agent = "forge/0.1 (+warc pipeline)";
};

struct BatchReport {
    std::vector<FetchResult> results;  // always in task order
    std::size_t ok_count = 0;
    double success_rate = 0.0;  // ok/total, 0.0 for an empty batch
};

// Bounded-parallelism download of a task batch. At most `parallelism`
// requests are in flight at any instant (and at most per_host_limit per
// host); transient failures (connect errors, timeouts, 5xx) retry with
// exponential backoff. Results come back in task order regardless of
// completion order.
BatchReport fetch_batch(const std::vector<FetchTask>& tasks,
                        const FetchOptions& options);

// Re-applies the node-level image filter now that fetched dimensions and
// formats are known, enriching surviving segments with width/height.
// `results` must cover the document's image segments by segment index.
// Unfetched images are kept unless drop_unfetched is set.
filter::DocumentResult revalidate(const assemble::InterleavedDocument& doc,
                                  const std::vector<FetchResult>& results,
                                  const filter::Thresholds& th,
                                  bool drop_unfetched = false);

}  // namespace forge::fetch
