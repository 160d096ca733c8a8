#include "forge/lang_id.hpp"

#include <array>
#include <fstream>

#include "forge/error.hpp"

namespace forge::lang {

const char* script_class_name(ScriptClass c) {
    switch (c) {
        case ScriptClass::TargetScript: return "target_script";
        case ScriptClass::LatinOnly: return "latin_only";
        case ScriptClass::NumericSymbolic: return "numeric_symbolic";
        case ScriptClass::Mixed: default: return "mixed";
    }
}

namespace {

uni::Script script_by_name(std::string_view name) {
    using uni::Script;
    static const std::pair<std::string_view, Script> kNames[] = {
        {"latin", Script::Latin},         {"devanagari", Script::Devanagari},
        {"bengali", Script::Bengali},     {"gurmukhi", Script::Gurmukhi},
        {"gujarati", Script::Gujarati},   {"oriya", Script::Oriya},
        {"tamil", Script::Tamil},         {"telugu", Script::Telugu},
        {"kannada", Script::Kannada},     {"malayalam", Script::Malayalam},
    };
    for (const auto& [n, s] : kNames) {
        if (n == name) return s;
    }
    return Script::Unknown;
}

}  // namespace

ScriptClassifier::ScriptClassifier() {
    using uni::Script;
    block_language_ = {
        {Script::Latin, "en"},      {Script::Devanagari, "hi"},
        {Script::Bengali, "bn"},    {Script::Gurmukhi, "pa"},
        {Script::Gujarati, "gu"},   {Script::Oriya, "or"},
        {Script::Tamil, "ta"},      {Script::Telugu, "te"},
        {Script::Kannada, "kn"},    {Script::Malayalam, "ml"},
    };
}

ScriptClassifier ScriptClassifier::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open script mapping file: " + path);
    ScriptClassifier c;
    c.block_language_.clear();
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string trimmed = uni::trim(line);
        if (trimmed.empty()) continue;
        const auto space = trimmed.find_first_of(" \t");
        if (space == std::string::npos)
            throw ConfigError("bad script mapping line: " + trimmed);
        const uni::Script script = script_by_name(uni::ascii_lower(trimmed.substr(0, space)));
        if (script == uni::Script::Unknown)
            throw ConfigError("unknown script in mapping: " + trimmed);
        c.block_language_[script] = uni::trim(trimmed.substr(space + 1));
    }
    return c;
}

LanguageVerdict ScriptClassifier::classify(std::string_view text) const {
    if (uni::trim(text).empty()) throw Error("empty input");

    std::array<std::size_t, 16> counts{};
    std::size_t letters = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const uni::Script s = uni::script_of(uni::decode_next(text, pos));
        if (s == uni::Script::Unknown) continue;
        ++letters;
        ++counts[static_cast<std::size_t>(s)];
    }
    if (letters == 0) return {"other", 0.0};

    uni::Script best = uni::Script::Unknown;
    std::size_t best_count = 0;
    for (std::size_t i = 1; i < counts.size(); ++i) {
        if (counts[i] > best_count) {
            best_count = counts[i];
            best = static_cast<uni::Script>(i);
        }
    }
    const auto it = block_language_.find(best);
    const std::string language = it == block_language_.end() ? "other" : it->second;
    return {language, static_cast<double>(best_count) / static_cast<double>(letters)};
}

ScriptClass classify_line_script(std::string_view line) {
    bool any_letter = false;
    bool any_latin = false;
    bool any_other = false;
    uni::Script indic = uni::Script::Unknown;
    bool multiple_indic = false;

    std::size_t pos = 0;
    while (pos < line.size()) {
        const uni::Script s = uni::script_of(uni::decode_next(line, pos));
        if (s == uni::Script::Unknown) continue;
        any_letter = true;
        if (s == uni::Script::Latin) {
            any_latin = true;
        } else if (s == uni::Script::OtherLetter) {
            any_other = true;
        } else {
            if (indic != uni::Script::Unknown && indic != s) multiple_indic = true;
            indic = s;
        }
    }
    if (!any_letter) return ScriptClass::NumericSymbolic;
    const bool any_indic = indic != uni::Script::Unknown;
    if (any_latin && !any_indic && !any_other) return ScriptClass::LatinOnly;
    if (any_indic && !any_latin && !any_other && !multiple_indic)
        return ScriptClass::TargetScript;
    return ScriptClass::Mixed;
}

}  // namespace forge::lang
