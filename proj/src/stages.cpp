#include <nlohmann/json.hpp>

#include <array>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include "forge/assemble.hpp"
#include "forge/caption.hpp"
#include "forge/error.hpp"
#include "forge/fetch.hpp"
#include "forge/filters.hpp"
#include "forge/lang_id.hpp"
#include "forge/pipeline.hpp"
#include "forge/serialize.hpp"
#include "forge/warc.hpp"

// File-to-file stage commands: each reads the previous stage's directory
// under output_dir and writes its own, so the pipeline can be driven one
// step at a time.

namespace forge::pipeline {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

const char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(std::string_view data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 2 < data.size()) {
        const unsigned v = (static_cast<unsigned char>(data[i]) << 16) |
                           (static_cast<unsigned char>(data[i + 1]) << 8) |
                           static_cast<unsigned char>(data[i + 2]);
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(kB64Alphabet[(v >> 6) & 63]);
        out.push_back(kB64Alphabet[v & 63]);
        i += 3;
    }
    const std::size_t rest = data.size() - i;
    if (rest == 1) {
        const unsigned v = static_cast<unsigned char>(data[i]) << 16;
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out += "==";
    } else if (rest == 2) {
        const unsigned v = (static_cast<unsigned char>(data[i]) << 16) |
                           (static_cast<unsigned char>(data[i + 1]) << 8);
        out.push_back(kB64Alphabet[(v >> 18) & 63]);
        out.push_back(kB64Alphabet[(v >> 12) & 63]);
        out.push_back(kB64Alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

std::string base64_decode(std::string_view text) {
    static const auto value_of = [] {
        std::array<int, 256> table;
        table.fill(-1);
        for (int i = 0; i < 64; ++i)
            table[static_cast<unsigned char>(kB64Alphabet[i])] = i;
        return table;
    }();
    std::string out;
    out.reserve(text.size() / 4 * 3);
    unsigned buffer = 0;
    int bits = 0;
    for (char c : text) {
        if (c == '=' || c == '\n' || c == '\r') continue;
        const int v = value_of[static_cast<unsigned char>(c)];
        if (v < 0) throw Error("bad base64 input");
        buffer = (buffer << 6) | static_cast<unsigned>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<char>((buffer >> bits) & 0xFF));
        }
    }
    return out;
}

void write_atomic(const fs::path& path, const std::string& content) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
    }
    fs::rename(tmp, path, ec);
    if (ec) throw Error("cannot finalize " + path.string());
}

std::vector<fs::path> jsonl_files(const fs::path& dir) {
    std::vector<fs::path> files;
    if (!fs::is_directory(dir)) return files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

void for_each_line(const fs::path& file,
                   const std::function<void(const std::string&)>& fn) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot read " + file.string());
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) fn(line);
    }
}

std::string record_to_line(const warc::WarcRecord& r) {
    ordered_json j;
    j["url"] = r.target_url;
    j["date"] = r.capture_time;
    j["status"] = r.http_status;
    j["content_type"] = r.content_type;
    j["charset"] = r.declared_charset;
    j["truncated"] = r.truncated;
    j["payload_b64"] = base64_encode(r.payload);
    return j.dump();
}

warc::WarcRecord record_from_line(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    warc::WarcRecord r;
    r.target_url = j.at("url").get<std::string>();
    r.capture_time = j.at("date").get<std::string>();
    r.http_status = j.at("status").get<int>();
    r.content_type = j.at("content_type").get<std::string>();
    r.declared_charset = j.at("charset").get<std::string>();
    r.truncated = j.at("truncated").get<bool>();
    r.payload = base64_decode(j.at("payload_b64").get<std::string>());
    return r;
}

}  // namespace

int cmd_ingest(const config::PipelineConfig& cfg) {
    const auto shards = expand_globs(cfg.input_globs);
    const fs::path out_dir = fs::path(cfg.output_dir) / "records";
    warc::Deduplicator dedup(cfg.canonical_dedup, cfg.content_hash_dedup);
    int rc = 0;
    std::uint64_t kept = 0, dropped = 0;
    for (const auto& shard : shards) {
        std::ifstream in(shard, std::ios::binary);
        if (!in) {
            std::cerr << "forge ingest: cannot open " << shard << "\n";
            rc = 1;
            continue;
        }
        std::string lines;
        try {
            warc::WarcReader reader(in);
            while (auto record = reader.next()) {
                if (!dedup.admit(*record)) {
                    ++dropped;
                    continue;
                }
                ++kept;
                lines += record_to_line(*record);
                lines += '\n';
            }
        } catch (const FormatError& e) {
            std::cerr << "forge ingest: " << shard << ": " << e.what() << "\n";
            rc = 1;
            continue;
        }
        write_atomic(out_dir / (fs::path(shard).stem().string() + ".jsonl"), lines);
    }
    std::cout << "records_kept=" << kept << "\nrecords_deduped=" << dropped << "\n";
    return rc;
}

int cmd_refine(const config::PipelineConfig& cfg) {
    const fs::path in_dir = fs::path(cfg.output_dir) / "records";
    const fs::path out_dir = fs::path(cfg.output_dir) / "docs";
    const lang::ScriptClassifier classifier =
        cfg.script_langs_file.empty()
            ? lang::ScriptClassifier()
            : lang::ScriptClassifier::from_file(cfg.script_langs_file);

    std::uint64_t docs = 0, rejected = 0;
    for (const auto& file : jsonl_files(in_dir)) {
        std::string lines;
        for_each_line(file, [&](const std::string& line) {
            const warc::WarcRecord record = record_from_line(line);
            std::string canonical;
            try {
                canonical = canonicalize_url(record.target_url);
            } catch (const Error&) {
                ++rejected;
                return;
            }
            dom::DomNode tree;
            try {
                tree = dom::parse_html(record.payload,
                                       record.declared_charset.empty()
                                           ? std::nullopt
                                           : std::make_optional(record.declared_charset));
            } catch (const Error&) {
                ++rejected;
                return;
            }
            const dom::DomNode pruned = dom::prune(tree, cfg.prune_rules);
            lang::LanguageVerdict verdict;
            try {
                verdict = classifier.classify(dom::extract_text(pruned));
            } catch (const Error&) {
                ++rejected;
                return;
            }
            if (!cfg.is_target_language(verdict.language) ||
                verdict.confidence < cfg.lid_threshold) {
                ++rejected;
                return;
            }
            const auto base = parse_url(canonical);
            if (!base) {
                ++rejected;
                return;
            }
            try {
                const auto doc = assemble::linearize(
                    pruned, *base, {canonical, record.capture_date(), verdict});
                lines += wire::serialize_document(doc);
                lines += '\n';
                ++docs;
            } catch (const Error&) {
                ++rejected;
            }
        });
        write_atomic(out_dir / file.filename(), lines);
    }
    std::cout << "docs_out=" << docs << "\nrejected=" << rejected << "\n";
    return 0;
}

int cmd_filter(const config::PipelineConfig& cfg) {
    const fs::path in_dir = fs::path(cfg.output_dir) / "docs";
    const fs::path out_dir = fs::path(cfg.output_dir) / "il";
    std::uint64_t accepted = 0, rejected = 0;
    std::string rejects;
    for (const auto& file : jsonl_files(in_dir)) {
        std::string lines;
        for_each_line(file, [&](const std::string& line) {
            const auto doc = wire::parse_document(line);
            auto result = filter::filter_document(doc, cfg.thresholds, cfg.blocklists);
            if (!result.verdict.accepted) {
                ++rejected;
                ordered_json j;
                j["doc_id"] = doc.doc_id;
                j["stage"] = "filter";
                j["reason"] = filter::reason_name(result.verdict.reason);
                j["url"] = doc.source_url;
                rejects += j.dump();
                rejects += '\n';
                return;
            }
            lines += wire::serialize_document(*result.doc);
            lines += '\n';
            ++accepted;
        });
        write_atomic(out_dir / file.filename(), lines);
    }
    if (cfg.log_rejects)
        write_atomic(fs::path(cfg.output_dir) / "rejects.jsonl", rejects);
    std::cout << "docs_accepted=" << accepted << "\ndocs_rejected=" << rejected << "\n";
    return 0;
}

int cmd_fetch(const config::PipelineConfig& cfg) {
    const fs::path il_dir = fs::path(cfg.output_dir) / "il";
    std::uint64_t fetched_ok = 0, tasks_total = 0, docs_dropped = 0;
    for (const auto& file : jsonl_files(il_dir)) {
        std::vector<assemble::InterleavedDocument> docs;
        for_each_line(file, [&](const std::string& line) {
            docs.push_back(wire::parse_document(line));
        });
        std::vector<fetch::FetchTask> tasks;
        for (const auto& doc : docs) {
            for (std::size_t i = 0; i < doc.segments.size(); ++i) {
                if (const auto* img =
                        std::get_if<assemble::ImageSegment>(&doc.segments[i]))
                    tasks.push_back({img->image.src_url, doc.doc_id,
                                     static_cast<int>(i)});
            }
        }
        const auto report = fetch::fetch_batch(tasks, cfg.fetch);
        fetched_ok += report.ok_count;
        tasks_total += tasks.size();

        std::string lines;
        for (const auto& doc : docs) {
            auto result = fetch::revalidate(doc, report.results, cfg.thresholds,
                                            cfg.drop_unfetched);
            if (!result.verdict.accepted) {
                ++docs_dropped;
                continue;
            }
            lines += wire::serialize_document(*result.doc);
            lines += '\n';
        }
        write_atomic(file, lines);
    }
    ordered_json report;
    report["tasks"] = tasks_total;
    report["fetched_ok"] = fetched_ok;
    report["success_rate"] =
        tasks_total == 0 ? 0.0
                         : static_cast<double>(fetched_ok) /
                               static_cast<double>(tasks_total);
    report["docs_dropped"] = docs_dropped;
    write_atomic(fs::path(cfg.output_dir) / "fetch_report.json", report.dump(2));
    std::cout << "tasks=" << tasks_total << "\nfetched_ok=" << fetched_ok << "\n";
    return 0;
}

int cmd_cap(const config::PipelineConfig& cfg) {
    const fs::path il_dir = fs::path(cfg.output_dir) / "il";
    const fs::path out_dir = fs::path(cfg.output_dir) / "cap";
    const lang::ScriptClassifier classifier =
        cfg.script_langs_file.empty()
            ? lang::ScriptClassifier()
            : lang::ScriptClassifier::from_file(cfg.script_langs_file);
    caption::PairDeduper dedup;
    std::uint64_t pairs = 0;
    for (const auto& file : jsonl_files(il_dir)) {
        std::string lines;
        for_each_line(file, [&](const std::string& line) {
            const auto doc = wire::parse_document(line);
            for (const auto& pair :
                 caption::extract_pairs(doc, cfg.thresholds, classifier)) {
                if (cfg.cap_dedup_urls && !dedup.admit(pair.image_url)) continue;
                lines += wire::serialize_pair(pair);
                lines += '\n';
                ++pairs;
            }
        });
        write_atomic(out_dir / file.filename(), lines);
    }
    std::cout << "pairs_out=" << pairs << "\n";
    return 0;
}

int cmd_stats(const config::PipelineConfig& cfg) {
    stats::CorpusStats total;
    total.tokenizer_id = cfg.tokenizer_id;
    for (const auto& file : jsonl_files(fs::path(cfg.output_dir) / "il")) {
        for_each_line(file, [&](const std::string& line) {
            total.add_document(wire::parse_document(line));
        });
    }
    for (const auto& file : jsonl_files(fs::path(cfg.output_dir) / "cap")) {
        for_each_line(file, [&](const std::string& line) {
            total.add_pair(wire::parse_pair(line));
        });
    }
    std::string stats_json = stats::to_json(total, true);
    if (!cfg.domain_themes_file.empty()) {
        const auto themes = stats::theme_rollup(
            total, stats::load_domain_themes(cfg.domain_themes_file));
        auto j = ordered_json::parse(stats_json);
        ordered_json tj = ordered_json::object();
        for (const auto& [theme, n] : themes) tj[theme] = n;
        j["domain_theme_counts"] = std::move(tj);
        stats_json = j.dump(2);
    }
    write_atomic(fs::path(cfg.output_dir) / "stats.json", stats_json);
    write_atomic(fs::path(cfg.output_dir) / "stats_languages.csv",
                 stats::to_language_csv(total));
    write_atomic(fs::path(cfg.output_dir) / "stats_cap.csv", stats::to_cap_csv(total));
    std::cout << "documents=" << total.total_documents()
              << "\npairs=" << total.total_pairs() << "\n";
    return 0;
}

int cmd_warc_stats(const std::vector<std::string>& archives, std::ostream& out) {
    warc::IngestCounters totals;
    int rc = 0;
    for (const auto& path : archives) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            std::cerr << "forge warc-stats: cannot open " << path << "\n";
            rc = 1;
            continue;
        }
        try {
            warc::WarcReader reader(in);
            while (reader.next()) {
            }
            const auto& c = reader.counters();
            totals.records_scanned += c.records_scanned;
            totals.yielded += c.yielded;
            totals.skipped_non_html += c.skipped_non_html;
            totals.skipped_malformed += c.skipped_malformed;
            totals.gzip_resyncs += c.gzip_resyncs;
        } catch (const FormatError& e) {
            std::cerr << "forge warc-stats: " << path << ": " << e.what() << "\n";
            rc = 1;
        }
    }
    out << "records_scanned=" << totals.records_scanned << "\n"
        << "html_responses=" << totals.yielded << "\n"
        << "skipped_non_html=" << totals.skipped_non_html << "\n"
        << "skipped_malformed=" << totals.skipped_malformed << "\n"
        << "gzip_resyncs=" << totals.gzip_resyncs << "\n";
    return rc;
}

}  // namespace forge::pipeline
