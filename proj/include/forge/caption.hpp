#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "forge/assemble.hpp"
#include "forge/filters.hpp"
#include "forge/lang_id.hpp"

namespace forge::caption {

enum class ResolutionClass { Low, Mid, High };

const char* resolution_name(ResolutionClass c);

// Low:  width < 200 or height < 200
// High: width > 600 and height > 600
// Mid:  everything else (boundaries land here)
ResolutionClass classify_resolution(int width_px, int height_px);

struct CaptionPair {
    std::string image_url;
    std::string alt_text;
    lang::LanguageVerdict language;  // LID on the alt text itself
    std::optional<ResolutionClass> resolution_class;  // when dimensions known
    int token_count = 0;

    bool operator==(const CaptionPair&) const = default;
};

// One pair per image segment whose alt text has at least alt_min_words
// words and does not appear (whitespace-normalized) inside any text segment
// of the document.
std::vector<CaptionPair> extract_pairs(const assemble::InterleavedDocument& doc,
                                       const filter::Thresholds& th,
                                       const lang::LanguageClassifier& classifier);

// Optional URL-level dedup across documents.
class PairDeduper {
  public:
    bool admit(const std::string& image_url) {
        return seen_.insert(image_url).second;
    }

  private:
    std::unordered_set<std::string> seen_;
};

}  // namespace forge::caption
