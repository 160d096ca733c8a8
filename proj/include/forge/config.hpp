#pragma once

#include <string>
#include <vector>

#include "forge/fetch.hpp"
#include "forge/filters.hpp"
#include "forge/prune.hpp"

namespace forge::config {

// Full pipeline configuration: a single text file of `key = value` lines
// plus `[section]` list blocks (url_substrings, filename_substrings,
// alt_blockwords, nsfw_substrings, boilerplate_phrases, stopwords:<lang>).
// Environment variables override scalar keys by uppercased name
// (BATCH_SIZE overrides batch_size). Relative paths resolve against the
// config file's directory.
struct PipelineConfig {
    std::vector<std::string> input_globs;
    std::string output_dir = "out";
    std::vector<std::string> target_languages = {"hi", "bn", "ta", "ml", "te", "mr",
                                                 "kn", "gu", "pa", "or", "as"};
    double lid_threshold = 0.65;
    bool canonical_dedup = true;  // dedup on canonical URLs vs exact URLs
    bool content_hash_dedup = false;
    bool strict8 = false;  // the 8-word main-text paragraph profile
    std::size_t batch_size = 1000;
    std::string tokenizer_id = "whitespace";

    std::string rules_file;         // prune rules, optional
    std::string script_langs_file;  // script -> language mapping, optional
    std::string stopwords_dir;      // <lang>.txt per language, optional
    std::string nsfw_dir;           // per-language lists, flattened
    std::string boilerplate_dir;
    std::string domain_themes_file;  // hostname -> theme mapping, optional

    bool fetch_enabled = true;
    bool drop_unfetched = false;
    bool cap_dedup_urls = false;
    bool log_rejects = true;

    fetch::FetchOptions fetch;
    filter::Thresholds thresholds;
    filter::Blocklists blocklists = filter::Blocklists::defaults();
    dom::PruneRules prune_rules = dom::PruneRules::defaults();

    // Throws ConfigError on unknown keys, unreadable referenced files or
    // inconsistent thresholds.
    static PipelineConfig load(const std::string& path);
    static PipelineConfig from_string(const std::string& text,
                                      const std::string& base_dir);

    bool is_target_language(const std::string& lang) const;
};

}  // namespace forge::config
