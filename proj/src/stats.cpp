#include "forge/stats.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "forge/error.hpp"
#include "forge/unicode.hpp"

namespace forge::stats {

using ordered_json = nlohmann::ordered_json;

std::size_t token_count(std::string_view text) { return uni::token_count(text); }

void CorpusStats::add_document(const assemble::InterleavedDocument& doc) {
    auto& lang_stats = per_language[doc.language.language];
    ++lang_stats.documents;

    std::uint64_t doc_tokens = 0;
    std::uint64_t doc_images = 0;
    for (const auto& segment : doc.segments) {
        if (const auto* text = std::get_if<assemble::TextSegment>(&segment)) {
            doc_tokens += token_count(text->text);
        } else {
            const auto& img = std::get<assemble::ImageSegment>(segment).image;
            ++doc_images;
            if (img.width_px && img.height_px) {
                const int wbin = (*img.width_px / kSizeBucketPx) * kSizeBucketPx;
                const int hbin = (*img.height_px / kSizeBucketPx) * kSizeBucketPx;
                ++image_size_histogram[{wbin, hbin}];
            }
        }
    }
    lang_stats.tokens += doc_tokens;
    lang_stats.images += doc_images;

    if (!doc.domain.empty()) ++domain_counts[doc.domain];
    ++image_count_histogram[doc_images];
    if (doc.crawl_date.size() >= 4) {
        int year = 0;
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            const char c = doc.crawl_date[static_cast<std::size_t>(i)];
            ok = c >= '0' && c <= '9';
            year = year * 10 + (c - '0');
        }
        if (ok) ++year_histogram[year];
    }
}

void CorpusStats::add_pair(const caption::CaptionPair& pair) {
    auto& lang_stats = cap_per_language[pair.language.language];
    ++lang_stats.pairs;
    lang_stats.tokens += static_cast<std::uint64_t>(pair.token_count);
    if (pair.resolution_class)
        ++cap_resolution_counts[caption::resolution_name(*pair.resolution_class)];
}

std::uint64_t CorpusStats::total_documents() const {
    std::uint64_t total = 0;
    for (const auto& [_, s] : per_language) total += s.documents;
    return total;
}

std::uint64_t CorpusStats::total_pairs() const {
    std::uint64_t total = 0;
    for (const auto& [_, s] : cap_per_language) total += s.pairs;
    return total;
}

std::map<std::string, double> CorpusStats::cap_resolution_shares() const {
    std::map<std::string, double> shares;
    std::uint64_t total = 0;
    for (const auto& [_, n] : cap_resolution_counts) total += n;
    if (total == 0) return shares;
    for (const auto& [name, n] : cap_resolution_counts)
        shares[name] = static_cast<double>(n) / static_cast<double>(total);
    return shares;
}

CorpusStats merge(const CorpusStats& a, const CorpusStats& b) {
    if (a.tokenizer_id != b.tokenizer_id)
        throw Error("cannot merge stats with different tokenizers: " +
                    a.tokenizer_id + " vs " + b.tokenizer_id);
    CorpusStats out = a;
    for (const auto& [lang, s] : b.per_language) {
        auto& dst = out.per_language[lang];
        dst.documents += s.documents;
        dst.tokens += s.tokens;
        dst.images += s.images;
    }
    for (const auto& [lang, s] : b.cap_per_language) {
        auto& dst = out.cap_per_language[lang];
        dst.pairs += s.pairs;
        dst.tokens += s.tokens;
    }
    for (const auto& [k, v] : b.domain_counts) out.domain_counts[k] += v;
    for (const auto& [k, v] : b.image_count_histogram) out.image_count_histogram[k] += v;
    for (const auto& [k, v] : b.year_histogram) out.year_histogram[k] += v;
    for (const auto& [k, v] : b.image_size_histogram) out.image_size_histogram[k] += v;
    for (const auto& [k, v] : b.cap_resolution_counts) out.cap_resolution_counts[k] += v;
    return out;
}

CorpusStats aggregate(const std::vector<assemble::InterleavedDocument>& docs,
                      const std::vector<caption::CaptionPair>& pairs) {
    CorpusStats stats;
    for (const auto& doc : docs) stats.add_document(doc);
    for (const auto& pair : pairs) stats.add_pair(pair);
    return stats;
}

std::string to_json(const CorpusStats& stats, bool pretty) {
    ordered_json j;
    j["tokenizer"] = stats.tokenizer_id;
    j["total_documents"] = stats.total_documents();
    j["total_pairs"] = stats.total_pairs();

    ordered_json langs = ordered_json::object();
    for (const auto& [lang, s] : stats.per_language) {
        langs[lang] = {
            {"documents", s.documents},
            {"tokens", s.tokens},
            {"images", s.images},
            {"avg_tokens_per_doc", s.avg_tokens_per_doc()},
            {"avg_images_per_doc", s.avg_images_per_doc()},
        };
    }
    j["il_per_language"] = std::move(langs);

    ordered_json cap = ordered_json::object();
    for (const auto& [lang, s] : stats.cap_per_language) {
        cap[lang] = {
            {"pairs", s.pairs},
            {"tokens", s.tokens},
            {"avg_tokens", s.avg_tokens()},
        };
    }
    j["cap_per_language"] = std::move(cap);

    ordered_json domains = ordered_json::object();
    for (const auto& [host, n] : stats.domain_counts) domains[host] = n;
    j["domain_counts"] = std::move(domains);

    ordered_json image_hist = ordered_json::object();
    for (const auto& [images, n] : stats.image_count_histogram)
        image_hist[std::to_string(images)] = n;
    j["image_count_histogram"] = std::move(image_hist);

    ordered_json years = ordered_json::object();
    for (const auto& [year, n] : stats.year_histogram)
        years[std::to_string(year)] = n;
    j["year_histogram"] = std::move(years);

    ordered_json sizes = ordered_json::object();
    for (const auto& [bin, n] : stats.image_size_histogram) {
        sizes[std::to_string(bin.first) + "x" + std::to_string(bin.second)] = n;
    }
    j["image_size_histogram"] = std::move(sizes);

    ordered_json res = ordered_json::object();
    for (const auto& [name, n] : stats.cap_resolution_counts) res[name] = n;
    j["cap_resolution_counts"] = std::move(res);

    ordered_json shares = ordered_json::object();
    for (const auto& [name, share] : stats.cap_resolution_shares()) shares[name] = share;
    j["cap_resolution_shares"] = std::move(shares);

    return pretty ? j.dump(2) : j.dump();
}

CorpusStats from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    CorpusStats stats;
    stats.tokenizer_id = j.at("tokenizer").get<std::string>();
    for (const auto& [lang, s] : j.at("il_per_language").items()) {
        LanguageStats ls;
        ls.documents = s.at("documents").get<std::uint64_t>();
        ls.tokens = s.at("tokens").get<std::uint64_t>();
        ls.images = s.at("images").get<std::uint64_t>();
        stats.per_language[lang] = ls;
    }
    for (const auto& [lang, s] : j.at("cap_per_language").items()) {
        CapLanguageStats cs;
        cs.pairs = s.at("pairs").get<std::uint64_t>();
        cs.tokens = s.at("tokens").get<std::uint64_t>();
        stats.cap_per_language[lang] = cs;
    }
    for (const auto& [host, n] : j.at("domain_counts").items())
        stats.domain_counts[host] = n.get<std::uint64_t>();
    for (const auto& [k, n] : j.at("image_count_histogram").items())
        stats.image_count_histogram[std::stoull(k)] = n.get<std::uint64_t>();
    for (const auto& [k, n] : j.at("year_histogram").items())
        stats.year_histogram[std::stoi(k)] = n.get<std::uint64_t>();
    for (const auto& [k, n] : j.at("image_size_histogram").items()) {
        const auto x = k.find('x');
        stats.image_size_histogram[{std::stoi(k.substr(0, x)),
                                    std::stoi(k.substr(x + 1))}] =
            n.get<std::uint64_t>();
    }
    for (const auto& [name, n] : j.at("cap_resolution_counts").items())
        stats.cap_resolution_counts[name] = n.get<std::uint64_t>();
    return stats;
}

std::string to_language_csv(const CorpusStats& stats) {
    std::ostringstream out;
    out << "language,documents,tokens,avg_tokens_per_doc,images,avg_images_per_doc\n";
    for (const auto& [lang, s] : stats.per_language) {
        out << lang << ',' << s.documents << ',' << s.tokens << ','
            << s.avg_tokens_per_doc() << ',' << s.images << ','
            << s.avg_images_per_doc() << '\n';
    }
    return out.str();
}

std::string to_cap_csv(const CorpusStats& stats) {
    std::ostringstream out;
    out << "language,pairs,tokens,avg_tokens\n";
    for (const auto& [lang, s] : stats.cap_per_language) {
        out << lang << ',' << s.pairs << ',' << s.tokens << ','
            << s.avg_tokens() << '\n';
    }
    return out.str();
}

std::map<std::string, std::uint64_t> theme_rollup(
    const CorpusStats& stats,
    const std::map<std::string, std::string>& host_theme) {
    std::map<std::string, std::uint64_t> themes;
    for (const auto& [host, count] : stats.domain_counts) {
        const auto it = host_theme.find(host);
        themes[it == host_theme.end() ? "unmapped" : it->second] += count;
    }
    return themes;
}

std::map<std::string, std::string> load_domain_themes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open domain theme file: " + path);
    std::map<std::string, std::string> mapping;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string trimmed = uni::trim(line);
        if (trimmed.empty()) continue;
        const auto space = trimmed.find_first_of(" \t");
        if (space == std::string::npos)
            throw ConfigError("bad domain theme line: " + trimmed);
        mapping[uni::ascii_lower(trimmed.substr(0, space))] =
            uni::trim(trimmed.substr(space + 1));
    }
    return mapping;
}

}  // namespace forge::stats
