#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "forge/config.hpp"
#include "forge/stats.hpp"

namespace forge::pipeline {

struct BatchCounters {
    std::uint64_t records_in = 0;  // HTML responses entering the batch
    std::uint64_t dedup_dropped = 0;
    std::uint64_t parse_failed = 0;
    std::uint64_t lid_rejected = 0;
    std::uint64_t assemble_empty = 0;
    std::map<std::string, std::uint64_t> filter_rejects;  // reason -> count
    std::uint64_t revalidate_rejected = 0;
    std::uint64_t docs_out = 0;
    std::uint64_t pairs_out = 0;

    std::uint64_t rejects_total() const;
    // records_in == docs_out + rejects_total()
    bool reconciles() const;

    void add(const BatchCounters& other);
};

struct BatchManifest {
    std::string batch_id;  // "<shard-stem>.b<NNNN>"
    std::string shard;
    std::uint64_t first_record = 0;  // offset among yielded HTML records
    std::uint64_t record_count = 0;
    bool completed = false;
    BatchCounters counters;
    stats::CorpusStats batch_stats;
    std::vector<std::string> outputs;  // paths relative to output_dir

    std::string to_json() const;
    static BatchManifest from_json(const std::string& text);
};

struct RunSummary {
    int exit_code = 0;
    std::uint64_t batches = 0;
    std::uint64_t batches_skipped = 0;  // resumed from manifests
    std::uint64_t shards_failed = 0;
    std::uint64_t warc_records_scanned = 0;
    std::uint64_t warc_skipped_non_html = 0;
    std::uint64_t warc_skipped_malformed = 0;
    BatchCounters totals;
};

// Full pipeline: ingest -> lang-route -> refine -> assemble -> filter ->
// fetch -> revalidate -> cap-extract -> stats, batched with resumable
// manifests. A re-run with completed manifests does no redundant work and
// reproduces byte-identical outputs.
RunSummary run_pipeline(const config::PipelineConfig& cfg);

// Stage subcommands (file-to-file transforms under cfg.output_dir).
int cmd_ingest(const config::PipelineConfig& cfg);
int cmd_refine(const config::PipelineConfig& cfg);
int cmd_filter(const config::PipelineConfig& cfg);
int cmd_fetch(const config::PipelineConfig& cfg);
int cmd_cap(const config::PipelineConfig& cfg);
int cmd_stats(const config::PipelineConfig& cfg);
// Prints line-delimited key=value counts for the given archives.
int cmd_warc_stats(const std::vector<std::string>& archives, std::ostream& out);

// Shell-style glob expansion ('*' and '?' in the final path component),
// results sorted for deterministic processing order.
std::vector<std::string> expand_globs(const std::vector<std::string>& globs);

}  // namespace forge::pipeline
