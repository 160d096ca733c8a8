#include "forge/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "forge/error.hpp"
#include "forge/unicode.hpp"

namespace forge::config {

namespace fs = std::filesystem;

namespace {

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = uni::ascii_lower(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("bad boolean for " + key + ": " + value);
}

long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + key + ": " + value);
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + key + ": " + value);
    }
}

std::vector<std::string> split_csv(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string trimmed = uni::trim(item);
        if (!trimmed.empty()) out.push_back(trimmed);
    }
    return out;
}

struct Loader {
    PipelineConfig& cfg;
    fs::path base_dir;
    bool aspect_min_set = false;
    bool aspect_max_set = false;

    std::string resolve(const std::string& path) const {
        if (path.empty() || fs::path(path).is_absolute()) return path;
        return (base_dir / path).lexically_normal().string();
    }

    using Setter = std::function<void(const std::string&, const std::string&)>;

    std::unordered_map<std::string, Setter> setters() {
        return {
            {"input", [this](const std::string&, const std::string& v) {
                 cfg.input_globs.push_back(resolve(v));
             }},
            {"output_dir", [this](const std::string&, const std::string& v) {
                 cfg.output_dir = resolve(v);
             }},
            {"languages", [this](const std::string&, const std::string& v) {
                 cfg.target_languages = split_csv(v);
             }},
            {"lid_threshold", [this](const std::string& k, const std::string& v) {
                 cfg.lid_threshold = parse_real(k, v);
             }},
            {"canonical_dedup", [this](const std::string& k, const std::string& v) {
                 cfg.canonical_dedup = parse_bool(k, v);
             }},
            {"content_hash_dedup", [this](const std::string& k, const std::string& v) {
                 cfg.content_hash_dedup = parse_bool(k, v);
             }},
            {"strict8", [this](const std::string& k, const std::string& v) {
                 cfg.strict8 = parse_bool(k, v);
             }},
            {"batch_size", [this](const std::string& k, const std::string& v) {
                 const long n = parse_int(k, v);
                 if (n < 1) throw ConfigError("batch_size must be positive");
                 cfg.batch_size = static_cast<std::size_t>(n);
             }},
            {"tokenizer", [this](const std::string&, const std::string& v) {
                 cfg.tokenizer_id = v;
             }},
            {"rules_file", [this](const std::string&, const std::string& v) {
                 cfg.rules_file = resolve(v);
             }},
            {"script_langs_file", [this](const std::string&, const std::string& v) {
                 cfg.script_langs_file = resolve(v);
             }},
            {"stopwords_dir", [this](const std::string&, const std::string& v) {
                 cfg.stopwords_dir = resolve(v);
             }},
            {"nsfw_dir", [this](const std::string&, const std::string& v) {
                 cfg.nsfw_dir = resolve(v);
             }},
            {"boilerplate_dir", [this](const std::string&, const std::string& v) {
                 cfg.boilerplate_dir = resolve(v);
             }},
            {"domain_themes_file", [this](const std::string&, const std::string& v) {
                 cfg.domain_themes_file = resolve(v);
             }},
            {"fetch_enabled", [this](const std::string& k, const std::string& v) {
                 cfg.fetch_enabled = parse_bool(k, v);
             }},
            {"fetch_offline", [this](const std::string& k, const std::string& v) {
                 cfg.fetch.offline_only = parse_bool(k, v);
             }},
            {"drop_unfetched", [this](const std::string& k, const std::string& v) {
                 cfg.drop_unfetched = parse_bool(k, v);
             }},
            {"cap_dedup_urls", [this](const std::string& k, const std::string& v) {
                 cfg.cap_dedup_urls = parse_bool(k, v);
             }},
            {"log_rejects", [this](const std::string& k, const std::string& v) {
                 cfg.log_rejects = parse_bool(k, v);
             }},
            {"parallelism", [this](const std::string& k, const std::string& v) {
                 cfg.fetch.parallelism = static_cast<int>(parse_int(k, v));
                 if (cfg.fetch.parallelism < 1) throw ConfigError("parallelism must be >= 1");
             }},
            {"per_host_limit", [this](const std::string& k, const std::string& v) {
                 cfg.fetch.per_host_limit = static_cast<int>(parse_int(k, v));
             }},
            {"timeout_ms", [this](const std::string& k, const std::string& v) {
                 cfg.fetch.timeout_ms = static_cast<int>(parse_int(k, v));
             }},
            {"retries", [this](const std::string& k, const std::string& v) {
                 cfg.fetch.max_retries = static_cast<int>(parse_int(k, v));
             }},
            {"backoff_ms", [this](const std::string& k, const std::string& v) {
                 cfg.fetch.backoff_base_ms = static_cast<int>(parse_int(k, v));
             }},
            {"max_image_bytes", [this](const std::string& k, const std::string& v) {
                 cfg.fetch.max_bytes = static_cast<std::size_t>(parse_int(k, v));
             }},
            {"cache_dir", [this](const std::string&, const std::string& v) {
                 cfg.fetch.cache_dir = resolve(v);
             }},
            {"user_agent", [this](const std::string&, const std::string& v) {
                 cfg.fetch.user_agent = v;
             }},
            {"para_min_words", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.para_min_words = static_cast<int>(parse_int(k, v));
             }},
            {"para_max_words", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.para_max_words = static_cast<int>(parse_int(k, v));
             }},
            {"doc_min_words", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.doc_min_words = static_cast<int>(parse_int(k, v));
             }},
            {"doc_max_words", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.doc_max_words = static_cast<int>(parse_int(k, v));
             }},
            {"char_rep_max", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.char_rep_max = parse_real(k, v);
             }},
            {"word_rep_max_para", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.word_rep_max_para = parse_real(k, v);
             }},
            {"word_rep_max_doc", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.word_rep_max_doc = parse_real(k, v);
             }},
            {"common_word_min", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.common_word_min = parse_real(k, v);
             }},
            {"img_min_side_px", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.img_min_side_px = static_cast<int>(parse_int(k, v));
             }},
            {"aspect_min", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.aspect_min = parse_real(k, v);
                 aspect_min_set = true;
             }},
            {"aspect_max", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.aspect_max = parse_real(k, v);
                 aspect_max_set = true;
             }},
            {"doc_min_images", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.doc_min_images = static_cast<int>(parse_int(k, v));
             }},
            {"doc_max_images", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.doc_max_images = static_cast<int>(parse_int(k, v));
             }},
            {"alt_min_words", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.alt_min_words = static_cast<int>(parse_int(k, v));
             }},
            {"line_min_words", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.line_min_words = static_cast<int>(parse_int(k, v));
             }},
            {"char_ngram", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.char_ngram = static_cast<int>(parse_int(k, v));
             }},
            {"word_ngram", [this](const std::string& k, const std::string& v) {
                 cfg.thresholds.word_ngram = static_cast<int>(parse_int(k, v));
             }},
        };
    }
};

void append_dir_lists(const std::string& dir, std::vector<std::string>* flat,
                      std::unordered_map<std::string, std::unordered_set<std::string>>* by_lang) {
    if (!fs::is_directory(dir))
        throw ConfigError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw ConfigError("cannot open list file: " + file.string());
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] == '#') continue;
            const std::string word = uni::trim(line);
            if (word.empty()) continue;
            if (flat) flat->push_back(uni::ascii_lower(word));
            if (by_lang) (*by_lang)[file.stem().string()].insert(uni::ascii_lower(word));
        }
    }
}

}  // namespace

bool PipelineConfig::is_target_language(const std::string& lang) const {
    return std::find(target_languages.begin(), target_languages.end(), lang) !=
           target_languages.end();
}

PipelineConfig PipelineConfig::from_string(const std::string& text,
                                           const std::string& base_dir) {
    PipelineConfig cfg;
    Loader loader{cfg, fs::path(base_dir)};
    auto setters = loader.setters();

    std::unordered_set<std::string> replaced_sections;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = uni::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = uni::ascii_lower(uni::trim(line.substr(1, line.size() - 2)));
            continue;
        }
        if (!section.empty()) {
            const std::string item = line;
            auto& bl = cfg.blocklists;
            auto reset_once = [&](auto& list) {
                if (replaced_sections.insert(section).second) list.clear();
            };
            if (section == "url_substrings") {
                reset_once(bl.url_substrings);
                bl.url_substrings.push_back(uni::ascii_lower(item));
            } else if (section == "filename_substrings") {
                reset_once(bl.filename_substrings);
                bl.filename_substrings.push_back(uni::ascii_lower(item));
            } else if (section == "alt_blockwords") {
                reset_once(bl.alt_blockwords);
                bl.alt_blockwords.push_back(uni::ascii_lower(item));
            } else if (section == "nsfw_substrings") {
                reset_once(bl.nsfw_substrings);
                bl.nsfw_substrings.push_back(uni::ascii_lower(item));
            } else if (section == "boilerplate_phrases") {
                reset_once(bl.boilerplate_phrases);
                bl.boilerplate_phrases.push_back(uni::ascii_lower(item));
            } else if (section.rfind("stopwords:", 0) == 0) {
                bl.stopwords[section.substr(10)].insert(uni::ascii_lower(item));
            } else {
                throw ConfigError("unknown config section: [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("bad config line (want key = value): " + line);
        const std::string key = uni::ascii_lower(uni::trim(line.substr(0, eq)));
        const std::string value = uni::trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown config key: " + key);
        it->second(key, value);
    }

    // Environment overrides by uppercased key name.
    for (auto& [key, setter] : setters) {
        std::string env_name = key;
        std::transform(env_name.begin(), env_name.end(), env_name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        if (const char* env = std::getenv(env_name.c_str())) setter(key, env);
    }

    // A single aspect bound implies its reciprocal partner.
    if (loader.aspect_max_set && !loader.aspect_min_set)
        cfg.thresholds.aspect_min = 1.0 / cfg.thresholds.aspect_max;
    if (loader.aspect_min_set && !loader.aspect_max_set)
        cfg.thresholds.aspect_max = 1.0 / cfg.thresholds.aspect_min;
    if (cfg.strict8) cfg.thresholds.apply_strict8();
    cfg.thresholds.validate();

    if (!cfg.rules_file.empty())
        cfg.prune_rules = dom::PruneRules::from_file(cfg.rules_file);
    cfg.prune_rules.validate();
    if (!cfg.script_langs_file.empty() && !fs::exists(cfg.script_langs_file))
        throw ConfigError("missing script_langs_file: " + cfg.script_langs_file);
    if (!cfg.domain_themes_file.empty() && !fs::exists(cfg.domain_themes_file))
        throw ConfigError("missing domain_themes_file: " + cfg.domain_themes_file);
    if (!cfg.stopwords_dir.empty())
        append_dir_lists(cfg.stopwords_dir, nullptr, &cfg.blocklists.stopwords);
    if (!cfg.nsfw_dir.empty())
        append_dir_lists(cfg.nsfw_dir, &cfg.blocklists.nsfw_substrings, nullptr);
    if (!cfg.boilerplate_dir.empty())
        append_dir_lists(cfg.boilerplate_dir, &cfg.blocklists.boilerplate_phrases,
                         nullptr);
    return cfg;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return from_string(text, fs::path(path).parent_path().string());
}

}  // namespace forge::config
