#include "forge/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "forge/assemble.hpp"
#include "forge/caption.hpp"
#include "forge/error.hpp"
#include "forge/fetch.hpp"
#include "forge/filters.hpp"
#include "forge/hash.hpp"
#include "forge/lang_id.hpp"
#include "forge/serialize.hpp"
#include "forge/warc.hpp"

namespace forge::pipeline {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::uint64_t BatchCounters::rejects_total() const {
    std::uint64_t filtered = 0;
    for (const auto& [_, n] : filter_rejects) filtered += n;
    return dedup_dropped + parse_failed + lid_rejected + assemble_empty +
           filtered + revalidate_rejected;
}

bool BatchCounters::reconciles() const {
    return records_in == docs_out + rejects_total();
}

void BatchCounters::add(const BatchCounters& other) {
    records_in += other.records_in;
    dedup_dropped += other.dedup_dropped;
    parse_failed += other.parse_failed;
    lid_rejected += other.lid_rejected;
    assemble_empty += other.assemble_empty;
    for (const auto& [reason, n] : other.filter_rejects) filter_rejects[reason] += n;
    revalidate_rejected += other.revalidate_rejected;
    docs_out += other.docs_out;
    pairs_out += other.pairs_out;
}

namespace {

ordered_json counters_to_json(const BatchCounters& c) {
    ordered_json j;
    j["records_in"] = c.records_in;
    j["dedup_dropped"] = c.dedup_dropped;
    j["parse_failed"] = c.parse_failed;
    j["lid_rejected"] = c.lid_rejected;
    j["assemble_empty"] = c.assemble_empty;
    ordered_json rejects = ordered_json::object();
    for (const auto& [reason, n] : c.filter_rejects) rejects[reason] = n;
    j["filter_rejects"] = std::move(rejects);
    j["revalidate_rejected"] = c.revalidate_rejected;
    j["docs_out"] = c.docs_out;
    j["pairs_out"] = c.pairs_out;
    return j;
}

BatchCounters counters_from_json(const nlohmann::json& j) {
    BatchCounters c;
    c.records_in = j.at("records_in").get<std::uint64_t>();
    c.dedup_dropped = j.at("dedup_dropped").get<std::uint64_t>();
    c.parse_failed = j.at("parse_failed").get<std::uint64_t>();
    c.lid_rejected = j.at("lid_rejected").get<std::uint64_t>();
    c.assemble_empty = j.at("assemble_empty").get<std::uint64_t>();
    for (const auto& [reason, n] : j.at("filter_rejects").items())
        c.filter_rejects[reason] = n.get<std::uint64_t>();
    c.revalidate_rejected = j.at("revalidate_rejected").get<std::uint64_t>();
    c.docs_out = j.at("docs_out").get<std::uint64_t>();
    c.pairs_out = j.at("pairs_out").get<std::uint64_t>();
    return c;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot finalize " + path.string());
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

// Reject ledger line; doc_id is empty until assembly has produced one.
std::string reject_line(const std::string& doc_id, const std::string& url,
                        const std::string& stage, const std::string& reason) {
    ordered_json j;
    j["doc_id"] = doc_id;
    j["stage"] = stage;
    j["reason"] = reason;
    j["url"] = url;
    return j.dump();
}

struct StageContext {
    const config::PipelineConfig& cfg;
    lang::ScriptClassifier classifier;

    explicit StageContext(const config::PipelineConfig& c)
        : cfg(c),
          classifier(c.script_langs_file.empty()
                         ? lang::ScriptClassifier()
                         : lang::ScriptClassifier::from_file(c.script_langs_file)) {}
};

struct RefineOutcome {
    std::optional<assemble::InterleavedDocument> doc;
    std::string stage;   // set on rejection
    std::string reason;  // set on rejection
};

// parse -> prune -> language-route -> assemble
RefineOutcome refine_record(const warc::WarcRecord& record, const StageContext& ctx) {
    RefineOutcome out;
    std::string canonical;
    try {
        canonical = canonicalize_url(record.target_url);
    } catch (const Error&) {
        out.stage = "parse";
        out.reason = "bad_url";
        return out;
    }
    dom::DomNode tree;
    try {
        tree = dom::parse_html(record.payload,
                               record.declared_charset.empty()
                                   ? std::nullopt
                                   : std::make_optional(record.declared_charset));
    } catch (const Error&) {
        out.stage = "parse";
        out.reason = "empty_document";
        return out;
    }
    const dom::DomNode pruned = dom::prune(tree, ctx.cfg.prune_rules);

    lang::LanguageVerdict verdict;
    try {
        verdict = ctx.classifier.classify(dom::extract_text(pruned));
    } catch (const Error&) {
        out.stage = "lid";
        out.reason = "empty_text";
        return out;
    }
    if (!ctx.cfg.is_target_language(verdict.language)) {
        out.stage = "lid";
        out.reason = "non_target_language";
        return out;
    }
    if (verdict.confidence < ctx.cfg.lid_threshold) {
        out.stage = "lid";
        out.reason = "low_confidence";
        return out;
    }

    const auto base = parse_url(canonical);
    if (!base) {
        out.stage = "parse";
        out.reason = "bad_url";
        return out;
    }
    assemble::RecordMeta meta{canonical, record.capture_date(), verdict};
    try {
        out.doc = assemble::linearize(pruned, *base, meta);
    } catch (const Error&) {
        out.stage = "assemble";
        out.reason = "empty_after_assembly";
    }
    return out;
}

std::vector<fetch::FetchTask> fetch_tasks_for(
    const std::vector<assemble::InterleavedDocument>& docs) {
    std::vector<fetch::FetchTask> tasks;
    for (const auto& doc : docs) {
        for (std::size_t i = 0; i < doc.segments.size(); ++i) {
            if (const auto* img =
                    std::get_if<assemble::ImageSegment>(&doc.segments[i])) {
                tasks.push_back(fetch::FetchTask{img->image.src_url, doc.doc_id,
                                                 static_cast<int>(i)});
            }
        }
    }
    return tasks;
}

struct BatchOutput {
    std::string il_lines;
    std::string cap_lines;
    std::string reject_lines;
};

// One batch through filter -> fetch -> revalidate -> cap -> stats.
void finish_batch(std::vector<assemble::InterleavedDocument>&& docs,
                  std::vector<std::pair<std::string, std::string>>&& early_rejects,
                  const StageContext& ctx, BatchManifest& manifest,
                  BatchOutput& output, caption::PairDeduper* pair_dedup) {
    const auto& cfg = ctx.cfg;
    for (auto& [url, stage_reason] : early_rejects) {
        const auto colon = stage_reason.find(':');
        output.reject_lines += reject_line("", url, stage_reason.substr(0, colon),
                                           stage_reason.substr(colon + 1));
        output.reject_lines += '\n';
    }

    std::vector<assemble::InterleavedDocument> accepted;
    accepted.reserve(docs.size());
    for (auto& doc : docs) {
        auto result = filter::filter_document(doc, cfg.thresholds, cfg.blocklists);
        if (!result.verdict.accepted) {
            const std::string reason = filter::reason_name(result.verdict.reason);
            ++manifest.counters.filter_rejects[reason];
            output.reject_lines +=
                reject_line(doc.doc_id, doc.source_url, "filter", reason);
            output.reject_lines += '\n';
            continue;
        }
        accepted.push_back(std::move(*result.doc));
    }

    if (cfg.fetch_enabled && !accepted.empty()) {
        const auto tasks = fetch_tasks_for(accepted);
        const auto report = fetch::fetch_batch(tasks, cfg.fetch);
        std::vector<assemble::InterleavedDocument> revalidated;
        revalidated.reserve(accepted.size());
        for (auto& doc : accepted) {
            auto result = fetch::revalidate(doc, report.results, cfg.thresholds,
                                            cfg.drop_unfetched);
            if (!result.verdict.accepted) {
                ++manifest.counters.revalidate_rejected;
                output.reject_lines +=
                    reject_line(doc.doc_id, doc.source_url, "revalidate",
                                filter::reason_name(result.verdict.reason));
                output.reject_lines += '\n';
                continue;
            }
            revalidated.push_back(std::move(*result.doc));
        }
        accepted = std::move(revalidated);
    }

    for (const auto& doc : accepted) {
        output.il_lines += wire::serialize_document(doc);
        output.il_lines += '\n';
        ++manifest.counters.docs_out;
        manifest.batch_stats.add_document(doc);

        auto pairs = caption::extract_pairs(doc, cfg.thresholds, ctx.classifier);
        for (const auto& pair : pairs) {
            if (pair_dedup && !pair_dedup->admit(pair.image_url)) continue;
            output.cap_lines += wire::serialize_pair(pair);
            output.cap_lines += '\n';
            ++manifest.counters.pairs_out;
            manifest.batch_stats.add_pair(pair);
        }
    }
    manifest.batch_stats.tokenizer_id = cfg.tokenizer_id;
}

}  // namespace

std::string BatchManifest::to_json() const {
    ordered_json j;
    j["batch_id"] = batch_id;
    j["shard"] = shard;
    j["first_record"] = first_record;
    j["record_count"] = record_count;
    j["completed"] = completed;
    j["counters"] = counters_to_json(counters);
    j["stats"] = nlohmann::ordered_json::parse(stats::to_json(batch_stats, false));
    j["outputs"] = outputs;
    j["hash_algorithm"] = hash_algorithm_id();
    return j.dump(2);
}

BatchManifest BatchManifest::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    BatchManifest m;
    m.batch_id = j.at("batch_id").get<std::string>();
    m.shard = j.at("shard").get<std::string>();
    m.first_record = j.at("first_record").get<std::uint64_t>();
    m.record_count = j.at("record_count").get<std::uint64_t>();
    m.completed = j.at("completed").get<bool>();
    m.counters = counters_from_json(j.at("counters"));
    m.batch_stats = stats::from_json(j.at("stats").dump());
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
}

std::vector<std::string> expand_globs(const std::vector<std::string>& globs) {
    std::vector<std::string> out;
    for (const auto& glob : globs) {
        const fs::path pattern_path(glob);
        const std::string pattern = pattern_path.filename().string();
        if (pattern.find('*') == std::string::npos &&
            pattern.find('?') == std::string::npos) {
            out.push_back(glob);
            continue;
        }
        const fs::path dir = pattern_path.parent_path().empty()
                                 ? fs::path(".")
                                 : pattern_path.parent_path();
        if (!fs::is_directory(dir)) continue;

        // Greedy wildcard match over the filename only.
        auto matches = [](const std::string& name, const std::string& pat) {
            std::size_t n = 0, p = 0, star = std::string::npos, mark = 0;
            while (n < name.size()) {
                if (p < pat.size() && (pat[p] == '?' || pat[p] == name[n])) {
                    ++n;
                    ++p;
                } else if (p < pat.size() && pat[p] == '*') {
                    star = p++;
                    mark = n;
                } else if (star != std::string::npos) {
                    p = star + 1;
                    n = ++mark;
                } else {
                    return false;
                }
            }
            while (p < pat.size() && pat[p] == '*') ++p;
            return p == pat.size();
        };
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (!entry.is_regular_file()) continue;
            if (matches(entry.path().filename().string(), pattern))
                out.push_back(entry.path().string());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RunSummary run_pipeline(const config::PipelineConfig& cfg) {
    StageContext ctx(cfg);
    RunSummary summary;
    const fs::path out_dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(out_dir / "il", ec);
    fs::create_directories(out_dir / "cap", ec);
    fs::create_directories(out_dir / "rejects", ec);
    fs::create_directories(out_dir / "manifests", ec);

    const auto shards = expand_globs(cfg.input_globs);
    warc::Deduplicator dedup(cfg.canonical_dedup, cfg.content_hash_dedup);
    caption::PairDeduper pair_dedup;

    std::vector<BatchManifest> manifests;

    for (const auto& shard : shards) {
        std::ifstream in(shard, std::ios::binary);
        if (!in) {
            std::cerr << "forge: cannot open shard: " << shard << "\n";
            ++summary.shards_failed;
            continue;
        }
        const std::string stem = fs::path(shard).stem().string();

        try {
            warc::WarcReader reader(in);
            std::uint64_t yielded = 0;
            bool shard_done = false;
            for (std::uint64_t batch_index = 0; !shard_done; ++batch_index) {
                char batch_suffix[16];
                std::snprintf(batch_suffix, sizeof(batch_suffix), ".b%04llu",
                              static_cast<unsigned long long>(batch_index));
                const std::string batch_id = stem + batch_suffix;
                const fs::path manifest_path =
                    out_dir / "manifests" / (batch_id + ".json");
                const fs::path il_path = out_dir / "il" / (batch_id + ".jsonl");
                const fs::path cap_path = out_dir / "cap" / (batch_id + ".jsonl");
                const fs::path rejects_path =
                    out_dir / "rejects" / (batch_id + ".jsonl");

                bool resumed = false;
                if (fs::exists(manifest_path)) {
                    auto existing =
                        BatchManifest::from_json(read_file(manifest_path));
                    if (existing.completed && fs::exists(il_path) &&
                        fs::exists(cap_path) && fs::exists(rejects_path)) {
                        // Skip the work but replay the records through dedup so
                        // later batches see the same seen-set.
                        std::uint64_t replayed = 0;
                        while (replayed < existing.record_count) {
                            auto record = reader.next();
                            if (!record) break;
                            ++yielded;
                            ++replayed;
                            dedup.admit(*record);
                        }
                        if (cfg.cap_dedup_urls) {
                            std::ifstream cap_in(cap_path);
                            std::string line;
                            while (std::getline(cap_in, line)) {
                                if (line.empty()) continue;
                                pair_dedup.admit(wire::parse_pair(line).image_url);
                            }
                        }
                        shard_done = replayed < existing.record_count ||
                                     existing.record_count < cfg.batch_size;
                        manifests.push_back(std::move(existing));
                        ++summary.batches;
                        ++summary.batches_skipped;
                        resumed = true;
                    }
                }
                if (resumed) continue;

                BatchManifest manifest;
                manifest.batch_id = batch_id;
                manifest.shard = shard;
                manifest.first_record = yielded;

                std::vector<assemble::InterleavedDocument> docs;
                std::vector<std::pair<std::string, std::string>> early_rejects;
                while (manifest.record_count < cfg.batch_size) {
                    auto record = reader.next();
                    if (!record) {
                        shard_done = true;
                        break;
                    }
                    ++yielded;
                    ++manifest.record_count;
                    ++manifest.counters.records_in;
                    if (!dedup.admit(*record)) {
                        ++manifest.counters.dedup_dropped;
                        early_rejects.emplace_back(record->target_url,
                                                   "dedup:duplicate_url");
                        continue;
                    }
                    auto outcome = refine_record(*record, ctx);
                    if (!outcome.doc) {
                        if (outcome.stage == "parse") ++manifest.counters.parse_failed;
                        else if (outcome.stage == "lid") ++manifest.counters.lid_rejected;
                        else ++manifest.counters.assemble_empty;
                        early_rejects.emplace_back(
                            record->target_url, outcome.stage + ":" + outcome.reason);
                        continue;
                    }
                    docs.push_back(std::move(*outcome.doc));
                }
                if (manifest.record_count == 0 && batch_index > 0) break;

                BatchOutput output;
                finish_batch(std::move(docs), std::move(early_rejects), ctx,
                             manifest, output,
                             cfg.cap_dedup_urls ? &pair_dedup : nullptr);

                write_file_atomic(il_path, output.il_lines);
                write_file_atomic(cap_path, output.cap_lines);
                write_file_atomic(rejects_path,
                                  cfg.log_rejects ? output.reject_lines : "");
                manifest.completed = true;
                manifest.outputs = {"il/" + batch_id + ".jsonl",
                                    "cap/" + batch_id + ".jsonl",
                                    "rejects/" + batch_id + ".jsonl"};
                write_file_atomic(manifest_path, manifest.to_json());
                if (manifest.record_count < cfg.batch_size) shard_done = true;
                manifests.push_back(std::move(manifest));
                ++summary.batches;
            }
            const auto& counters = reader.counters();
            summary.warc_records_scanned += counters.records_scanned;
            summary.warc_skipped_non_html += counters.skipped_non_html;
            summary.warc_skipped_malformed += counters.skipped_malformed;
        } catch (const FormatError& e) {
            std::cerr << "forge: shard failed: " << shard << ": " << e.what() << "\n";
            ++summary.shards_failed;
            continue;
        }
    }

    // Final artifacts: merged stats, concatenated reject ledger.
    stats::CorpusStats total_stats;
    total_stats.tokenizer_id = cfg.tokenizer_id;
    std::string all_rejects;
    for (const auto& manifest : manifests) {
        total_stats = stats::merge(total_stats, manifest.batch_stats);
        summary.totals.add(manifest.counters);
        const fs::path batch_rejects =
            out_dir / "rejects" / (manifest.batch_id + ".jsonl");
        if (fs::exists(batch_rejects)) all_rejects += read_file(batch_rejects);
    }
    std::string stats_json = stats::to_json(total_stats, true);
    if (!cfg.domain_themes_file.empty()) {
        const auto themes = stats::theme_rollup(
            total_stats, stats::load_domain_themes(cfg.domain_themes_file));
        auto j = ordered_json::parse(stats_json);
        ordered_json tj = ordered_json::object();
        for (const auto& [theme, n] : themes) tj[theme] = n;
        j["domain_theme_counts"] = std::move(tj);
        stats_json = j.dump(2);
    }
    write_file_atomic(out_dir / "stats.json", stats_json);
    write_file_atomic(out_dir / "stats_languages.csv",
                      stats::to_language_csv(total_stats));
    write_file_atomic(out_dir / "stats_cap.csv", stats::to_cap_csv(total_stats));
    write_file_atomic(out_dir / "rejects.jsonl", all_rejects);

    ordered_json run_json;
    run_json["batches"] = summary.batches;
    run_json["batches_resumed"] = summary.batches_skipped;
    run_json["shards_failed"] = summary.shards_failed;
    run_json["records_scanned"] = summary.warc_records_scanned;
    run_json["skipped_non_html"] = summary.warc_skipped_non_html;
    run_json["skipped_malformed"] = summary.warc_skipped_malformed;
    run_json["counters"] = counters_to_json(summary.totals);
    run_json["accounting_ok"] = summary.totals.reconciles();
    run_json["hash_algorithm"] = hash_algorithm_id();
    run_json["tokenizer"] = cfg.tokenizer_id;
    write_file_atomic(out_dir / "manifests" / "run.json", run_json.dump(2));

    summary.exit_code = summary.shards_failed > 0 ? 1 : 0;
    return summary;
}

}  // namespace forge::pipeline
