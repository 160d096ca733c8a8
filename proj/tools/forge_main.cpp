#include <CLI11.hpp>

#include <iostream>

#include "forge/config.hpp"
#include "forge/error.hpp"
#include "forge/pipeline.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string rules_path;
    bool strict8 = false;
    int parallelism = 0;
    int timeout_ms = 0;
    int retries = -1;
    std::string cache_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Pipeline config file")
        ->required();
    cmd->add_option("--rules", args.rules_path, "Prune rules file override");
    cmd->add_flag("--strict-8", args.strict8,
                  "Use the 8-word paragraph minimum profile");
    cmd->add_option("--parallelism", args.parallelism,
                    "Fetch parallelism override");
    cmd->add_option("--timeout-ms", args.timeout_ms, "Fetch timeout override");
    cmd->add_option("--retries", args.retries, "Fetch retry count override");
    cmd->add_option("--cache-dir", args.cache_dir, "Image cache directory");
}

forge::config::PipelineConfig load_config(const CommonArgs& args) {
    auto cfg = forge::config::PipelineConfig::load(args.config_path);
    if (!args.rules_path.empty())
        cfg.prune_rules = forge::dom::PruneRules::from_file(args.rules_path);
    if (args.strict8) {
        cfg.strict8 = true;
        cfg.thresholds.apply_strict8();
    }
    if (args.parallelism > 0) cfg.fetch.parallelism = args.parallelism;
    if (args.timeout_ms > 0) cfg.fetch.timeout_ms = args.timeout_ms;
    if (args.retries >= 0) cfg.fetch.max_retries = args.retries;
    if (!args.cache_dir.empty()) cfg.fetch.cache_dir = args.cache_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forge: WARC captures -> interleaved image-text documents "
                 "and caption pairs"};
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<std::string> warc_paths;

    auto* run = app.add_subcommand("run", "Run the full pipeline");
    add_common(run, args);
    auto* ingest = app.add_subcommand(
        "ingest", "WARC shards -> deduplicated record stream (records/)");
    add_common(ingest, args);
    auto* refine = app.add_subcommand(
        "refine", "records/ -> pruned, assembled documents (docs/)");
    add_common(refine, args);
    auto* filter = app.add_subcommand(
        "filter", "docs/ -> filtered interleaved documents (il/)");
    add_common(filter, args);
    auto* fetch = app.add_subcommand(
        "fetch", "download images for il/ and re-apply dimension filters");
    add_common(fetch, args);
    auto* cap = app.add_subcommand(
        "cap", "il/ -> image/alt-text caption pairs (cap/)");
    add_common(cap, args);
    auto* stats = app.add_subcommand(
        "stats", "il/ + cap/ -> stats.json and CSV tables");
    add_common(stats, args);
    auto* warc_stats = app.add_subcommand(
        "warc-stats", "print key=value record counts for WARC archives");
    warc_stats->add_option("archives", warc_paths, "WARC files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (warc_stats->parsed())
            return forge::pipeline::cmd_warc_stats(warc_paths, std::cout);

        const auto cfg = load_config(args);
        if (run->parsed()) {
            const auto summary = forge::pipeline::run_pipeline(cfg);
            std::cout << "batches=" << summary.batches
                      << "\nbatches_resumed=" << summary.batches_skipped
                      << "\ndocs_out=" << summary.totals.docs_out
                      << "\npairs_out=" << summary.totals.pairs_out
                      << "\nrejects=" << summary.totals.rejects_total()
                      << "\naccounting_ok=" << (summary.totals.reconciles() ? 1 : 0)
                      << "\n";
            return summary.exit_code;
        }
        if (ingest->parsed()) return forge::pipeline::cmd_ingest(cfg);
        if (refine->parsed()) return forge::pipeline::cmd_refine(cfg);
        if (filter->parsed()) return forge::pipeline::cmd_filter(cfg);
        if (fetch->parsed()) return forge::pipeline::cmd_fetch(cfg);
        if (cap->parsed()) return forge::pipeline::cmd_cap(cfg);
        if (stats->parsed()) return forge::pipeline::cmd_stats(cfg);
    } catch (const forge::ConfigError& e) {
        std::cerr << "forge: config error: " << e.what() << "\n";
        return 2;
    } catch (const forge::Error& e) {
        std::cerr << "forge: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
