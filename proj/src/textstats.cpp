#include "forge/textstats.hpp"

#include "forge/unicode.hpp"

namespace forge::text {

double char_repetition_ratio(std::string_view text, int n) {
    if (n < 1) n = 1;
    const std::u32string cps = uni::decode(text);
    const std::size_t width = static_cast<std::size_t>(n);
    if (cps.size() < width) return 0.0;
    const std::size_t total = cps.size() - width + 1;
    std::unordered_set<std::u32string> distinct;
    distinct.reserve(total);
    for (std::size_t i = 0; i < total; ++i) distinct.insert(cps.substr(i, width));
    return 1.0 - static_cast<double>(distinct.size()) / static_cast<double>(total);
}

double word_repetition_ratio(std::string_view text, int n) {
    if (n < 1) n = 1;
    const auto tokens = uni::tokenize(text);
    const std::size_t width = static_cast<std::size_t>(n);
    if (tokens.size() < width) return 0.0;
    const std::size_t total = tokens.size() - width + 1;
    std::unordered_set<std::string> distinct;
    distinct.reserve(total);
    std::string gram;
    for (std::size_t i = 0; i < total; ++i) {
        gram.clear();
        for (std::size_t j = 0; j < width; ++j) {
            if (j > 0) gram.push_back('\x1f');
            gram.append(tokens[i + j]);
        }
        distinct.insert(gram);
    }
    return 1.0 - static_cast<double>(distinct.size()) / static_cast<double>(total);
}

double common_word_ratio(std::string_view text,
                         const std::unordered_set<std::string>& stopwords) {
    const auto tokens = uni::tokenize(text);
    if (tokens.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto token : tokens) {
        if (stopwords.count(uni::ascii_lower(token))) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(tokens.size());
}

}  // namespace forge::text
