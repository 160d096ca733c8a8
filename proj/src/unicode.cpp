#include "forge/unicode.hpp"

#include <algorithm>
#include <cctype>

namespace forge::uni {

char32_t decode_next(std::string_view s, std::size_t& pos) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++pos;
        return kReplacement;
    }
    if (pos + len > s.size()) {
        ++pos;
        return kReplacement;
    }
    for (int i = 1; i < len; ++i) {
        const auto b = static_cast<unsigned char>(s[pos + i]);
        if ((b & 0xC0) != 0x80) {
            ++pos;
            return kReplacement;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms, surrogates and out-of-range values.
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++pos;
        return kReplacement;
    }
    pos += len;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = kReplacement;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::u32string decode(std::string_view utf8) {
    std::u32string out;
    out.reserve(utf8.size());
    std::size_t pos = 0;
    while (pos < utf8.size()) out.push_back(decode_next(utf8, pos));
    return out;
}

std::string encode(const std::u32string& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

bool is_space(char32_t cp) {
    switch (cp) {
        case U' ':
        case U'\t':
        case U'\n':
        case U'\r':
        case 0x0B:
        case 0x0C:
        case 0x85:    // NEL
        case 0xA0:    // NBSP
        case 0x1680:  // OGHAM SPACE MARK
        case 0x2028:
        case 0x2029:
        case 0x202F:
        case 0x205F:
        case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

namespace {

struct ScriptRange {
    char32_t lo;
    char32_t hi;
    Script script;
};

// Letter ranges only. The Indic blocks keep their combining marks (matras)
// but exclude the shared danda (U+0964/0965), per-block digits (U+xx66..6F)
// and trailing symbol rows where those are not letters.
constexpr ScriptRange kRanges[] = {
    {U'A', U'Z', Script::Latin},
    {U'a', U'z', Script::Latin},
    {0x00C0, 0x00D6, Script::Latin},
    {0x00D8, 0x00F6, Script::Latin},
    {0x00F8, 0x02AF, Script::Latin},  // Latin-1 suppl., Extended-A/B, IPA
    {0x0900, 0x0963, Script::Devanagari},
    {0x0970, 0x097F, Script::Devanagari},
    {0x0980, 0x09E3, Script::Bengali},
    {0x09F0, 0x09FB, Script::Bengali},
    {0x0A00, 0x0A63, Script::Gurmukhi},
    {0x0A70, 0x0A7F, Script::Gurmukhi},
    {0x0A80, 0x0AE3, Script::Gujarati},
    {0x0AF0, 0x0AFF, Script::Gujarati},
    {0x0B00, 0x0B63, Script::Oriya},
    {0x0B70, 0x0B7F, Script::Oriya},
    {0x0B80, 0x0BE5, Script::Tamil},
    {0x0C00, 0x0C63, Script::Telugu},
    {0x0C78, 0x0C7F, Script::Telugu},
    {0x0C80, 0x0CE3, Script::Kannada},
    {0x0CF0, 0x0CFF, Script::Kannada},
    {0x0D00, 0x0D63, Script::Malayalam},
    {0x0D70, 0x0D7F, Script::Malayalam},
};

bool other_letter(char32_t cp) {
    // Coarse membership test for letters outside the configured scripts.
    return (cp >= 0x0370 && cp <= 0x08FF)      // Greek..Arabic extended
           || (cp >= 0x0D80 && cp <= 0x0DFF)   // Sinhala
           || (cp >= 0x0E00 && cp <= 0x109F)   // Thai..Myanmar
           || (cp >= 0x10A0 && cp <= 0x1FFF)   // Georgian..Greek extended
           || (cp >= 0x2C00 && cp <= 0x2DFF)
           || (cp >= 0x3040 && cp <= 0x9FFF)   // Kana, CJK
           || (cp >= 0xA000 && cp <= 0xABFF)
           || (cp >= 0xAC00 && cp <= 0xD7AF)   // Hangul
           || (cp >= 0xF900 && cp <= 0xFAFF)
           || (cp >= 0x10000 && cp <= 0x2FA1F);
}

}  // namespace

Script script_of(char32_t cp) {
    for (const auto& r : kRanges) {
        if (cp >= r.lo && cp <= r.hi) {
            // Danda and double danda live inside the Devanagari range but
            // punctuate every Indic script; never letters.
            if (cp == 0x0964 || cp == 0x0965) return Script::Unknown;
            return r.script;
        }
    }
    if (other_letter(cp)) return Script::OtherLetter;
    return Script::Unknown;
}

const char* script_name(Script s) {
    switch (s) {
        case Script::Latin: return "latin";
        case Script::Devanagari: return "devanagari";
        case Script::Bengali: return "bengali";
        case Script::Gurmukhi: return "gurmukhi";
        case Script::Gujarati: return "gujarati";
        case Script::Oriya: return "oriya";
        case Script::Tamil: return "tamil";
        case Script::Telugu: return "telugu";
        case Script::Kannada: return "kannada";
        case Script::Malayalam: return "malayalam";
        case Script::OtherLetter: return "other";
        case Script::Unknown: default: return "none";
    }
}

bool is_letter(char32_t cp) { return script_of(cp) != Script::Unknown; }

std::vector<std::string_view> tokenize(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    std::size_t start = 0;
    bool in_token = false;
    while (pos < text.size()) {
        const std::size_t here = pos;
        const char32_t cp = decode_next(text, pos);
        if (is_space(cp)) {
            if (in_token) {
                tokens.push_back(text.substr(start, here - start));
                in_token = false;
            }
        } else if (!in_token) {
            start = here;
            in_token = true;
        }
    }
    if (in_token) tokens.push_back(text.substr(start));
    return tokens;
}

std::size_t token_count(std::string_view text) {
    std::size_t count = 0;
    std::size_t pos = 0;
    bool in_token = false;
    while (pos < text.size()) {
        const char32_t cp = decode_next(text, pos);
        if (is_space(cp)) {
            in_token = false;
        } else if (!in_token) {
            ++count;
            in_token = true;
        }
    }
    return count;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

bool contains_ci(std::string_view haystack, std::string_view lowercase_needle) {
    if (lowercase_needle.empty()) return true;
    if (haystack.size() < lowercase_needle.size()) return false;
    const std::string lowered = ascii_lower(haystack);
    return lowered.find(lowercase_needle) != std::string::npos;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    int pending_newlines = -1;  // -1: no pending whitespace run
    while (pos < text.size()) {
        const std::size_t here = pos;
        const char32_t cp = decode_next(text, pos);
        if (is_space(cp)) {
            if (pending_newlines < 0) pending_newlines = 0;
            if (cp == U'\n' && pending_newlines < 2) ++pending_newlines;
        } else {
            if (pending_newlines == 0) {
                out.push_back(' ');
            } else if (pending_newlines > 0) {
                out.append(pending_newlines >= 2 ? "\n\n" : "\n");
            }
            pending_newlines = -1;
            out.append(text.substr(here, pos - here));
        }
    }
    if (pending_newlines == 0) {
        out.push_back(' ');
    } else if (pending_newlines > 0) {
        out.append(pending_newlines >= 2 ? "\n\n" : "\n");
    }
    return out;
}

std::string trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    std::size_t pos = 0;
    std::size_t last_nonspace_end = 0;
    bool seen = false;
    while (pos < end) {
        const std::size_t here = pos;
        const char32_t cp = decode_next(text, pos);
        if (!is_space(cp)) {
            if (!seen) {
                begin = here;
                seen = true;
            }
            last_nonspace_end = pos;
        }
    }
    if (!seen) return {};
    return std::string(text.substr(begin, last_nonspace_end - begin));
}

}  // namespace forge::uni
