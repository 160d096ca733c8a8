#pragma once

#include <map>
#include <string>
#include <string_view>

#include "forge/unicode.hpp"

namespace forge::lang {

struct LanguageVerdict {
    std::string language;  // ISO 639 code from the target set, or "other"
    double confidence = 0.0;

    bool operator==(const LanguageVerdict&) const = default;
};

enum class ScriptClass { TargetScript, LatinOnly, NumericSymbolic, Mixed };

const char* script_class_name(ScriptClass c);

// Classifier models are read-only once constructed and safe to share
// across threads.
class LanguageClassifier {
  public:
    virtual ~LanguageClassifier() = default;
    // Throws Error("empty input") when text is empty after trimming.
    virtual LanguageVerdict classify(std::string_view text) const = 0;
};

// Baseline classifier: the majority Unicode script block among letter
// codepoints maps to that block's dominant language; confidence is the
// majority block's share of all letters.
class ScriptClassifier : public LanguageClassifier {
  public:
    ScriptClassifier();  // built-in block -> language mapping

    // Line format: "<script> <language>", '#' comments. Unlisted scripts
    // fall back to "other".
    static ScriptClassifier from_file(const std::string& path);

    LanguageVerdict classify(std::string_view text) const override;

  private:
    std::map<uni::Script, std::string> block_language_;
};

// Line classification for Algorithm-2 style cleaning:
//   NumericSymbolic  no letter codepoints at all
//   LatinOnly        every letter is Latin script
//   TargetScript     every letter belongs to one configured Indic block
//   Mixed            anything else
ScriptClass classify_line_script(std::string_view line);

}  // namespace forge::lang
