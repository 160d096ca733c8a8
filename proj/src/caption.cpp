#include "forge/caption.hpp"

#include "forge/unicode.hpp"

namespace forge::caption {

const char* resolution_name(ResolutionClass c) {
    switch (c) {
        case ResolutionClass::Low: return "low";
        case ResolutionClass::Mid: return "mid";
        case ResolutionClass::High: return "high";
    }
    return "unknown";
}

ResolutionClass classify_resolution(int width_px, int height_px) {
    if (width_px < 200 || height_px < 200) return ResolutionClass::Low;
    if (width_px > 600 && height_px > 600) return ResolutionClass::High;
    return ResolutionClass::Mid;
}

std::vector<CaptionPair> extract_pairs(const assemble::InterleavedDocument& doc,
                                       const filter::Thresholds& th,
                                       const lang::LanguageClassifier& classifier) {
    std::vector<CaptionPair> pairs;
    std::vector<std::string> normalized_texts;
    for (const auto& segment : doc.segments) {
        if (const auto* text = std::get_if<assemble::TextSegment>(&segment))
            normalized_texts.push_back(uni::collapse_whitespace(text->text));
    }

    for (const auto& segment : doc.segments) {
        const auto* img = std::get_if<assemble::ImageSegment>(&segment);
        if (!img) continue;
        const std::string alt =
            uni::trim(uni::collapse_whitespace(img->image.alt_text));
        if (alt.empty()) continue;
        if (uni::token_count(alt) < static_cast<std::size_t>(th.alt_min_words))
            continue;
        bool in_body = false;
        for (const auto& text : normalized_texts) {
            if (text.find(alt) != std::string::npos) {
                in_body = true;
                break;
            }
        }
        if (in_body) continue;

        CaptionPair pair;
        pair.image_url = img->image.src_url;
        pair.alt_text = alt;
        pair.language = classifier.classify(alt);
        if (img->image.width_px && img->image.height_px)
            pair.resolution_class =
                classify_resolution(*img->image.width_px, *img->image.height_px);
        pair.token_count = static_cast<int>(uni::token_count(alt));
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

}  // namespace forge::caption
