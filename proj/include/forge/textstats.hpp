#pragma once

#include <string_view>
#include <unordered_set>
#include <string>

namespace forge::text {

// 1 - distinct/total over codepoint n-grams; 0.0 when the text is shorter
// than n codepoints.
double char_repetition_ratio(std::string_view text, int n = 5);

// Same ratio over whitespace-token n-grams.
double word_repetition_ratio(std::string_view text, int n = 2);

// Fraction of tokens found in the stopword set (tokens are lowercased
// before lookup); 0.0 for empty text.
double common_word_ratio(std::string_view text,
                         const std::unordered_set<std::string>& stopwords);

}  // namespace forge::text
