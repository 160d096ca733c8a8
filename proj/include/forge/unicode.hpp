#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace forge::uni {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes the next UTF-8 scalar starting at `pos`. Invalid byte sequences
// yield U+FFFD and advance by one byte, so decoding always terminates.
char32_t decode_next(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

std::u32string decode(std::string_view utf8);
std::string encode(const std::u32string& cps);

// Unicode whitespace as used for tokenization everywhere in the pipeline:
// ASCII space/tab/newline family plus NBSP, OGHAM, general punctuation
// spaces, line/paragraph separators, NNBSP, MMSP and ideographic space.
bool is_space(char32_t cp);

enum class Script : std::uint8_t {
    Unknown = 0,  // not a letter (digits, punctuation, symbols, spaces)
    Latin,
    Devanagari,
    Bengali,
    Gurmukhi,
    Gujarati,
    Oriya,
    Tamil,
    Telugu,
    Kannada,
    Malayalam,
    OtherLetter,  // letters outside the configured blocks (Arabic, CJK, ...)
};

// Script of a letter codepoint, Unknown for non-letters. Per-block digit
// rows (e.g. U+0966..096F) and the danda punctuation count as non-letters.
Script script_of(char32_t cp);

const char* script_name(Script s);

bool is_letter(char32_t cp);

// Maximal runs of non-whitespace codepoints.
std::vector<std::string_view> tokenize(std::string_view text);
std::size_t token_count(std::string_view text);

// ASCII-only lowercase, leaves multibyte sequences untouched. Sufficient for
// the case-insensitive substring matching of tags, URLs and blocklists.
std::string ascii_lower(std::string_view s);

bool contains_ci(std::string_view haystack, std::string_view lowercase_needle);

// Collapses every whitespace run: no newline in the run -> one space, one
// newline -> "\n", two or more -> "\n\n" (paragraph separator).
std::string collapse_whitespace(std::string_view text);

std::string trim(std::string_view text);

}  // namespace forge::uni
