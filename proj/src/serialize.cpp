#include "forge/serialize.hpp"

#include <nlohmann/json.hpp>

#include "forge/error.hpp"

namespace forge::wire {

using ordered_json = nlohmann::ordered_json;

std::string serialize_document(const assemble::InterleavedDocument& doc) {
    ordered_json j;
    j["id"] = doc.doc_id;
    j["url"] = doc.source_url;
    j["domain"] = doc.domain;
    j["lang"] = doc.language.language;
    j["lang_conf"] = doc.language.confidence;
    j["date"] = doc.crawl_date;
    ordered_json segments = ordered_json::array();
    for (const auto& segment : doc.segments) {
        if (const auto* text = std::get_if<assemble::TextSegment>(&segment)) {
            segments.push_back({{"type", "text"}, {"text", text->text}});
        } else {
            const auto& img = std::get<assemble::ImageSegment>(segment).image;
            ordered_json s;
            s["type"] = "image";
            s["src"] = img.src_url;
            s["alt"] = img.alt_text;
            s["filename"] = img.filename;
            if (img.width_px) s["w"] = *img.width_px;
            if (img.height_px) s["h"] = *img.height_px;
            if (img.figcaption) s["caption"] = *img.figcaption;
            segments.push_back(std::move(s));
        }
    }
    j["segments"] = std::move(segments);
    return j.dump();
}

assemble::InterleavedDocument parse_document(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad document line: ") + e.what());
    }
    assemble::InterleavedDocument doc;
    doc.doc_id = j.at("id").get<std::string>();
    doc.source_url = j.at("url").get<std::string>();
    doc.domain = j.at("domain").get<std::string>();
    doc.language.language = j.at("lang").get<std::string>();
    doc.language.confidence = j.at("lang_conf").get<double>();
    doc.crawl_date = j.at("date").get<std::string>();
    for (const auto& s : j.at("segments")) {
        const std::string type = s.at("type").get<std::string>();
        if (type == "text") {
            doc.segments.push_back(
                assemble::TextSegment{s.at("text").get<std::string>()});
        } else if (type == "image") {
            assemble::ImageRef img;
            img.src_url = s.at("src").get<std::string>();
            img.alt_text = s.at("alt").get<std::string>();
            img.filename = s.at("filename").get<std::string>();
            if (s.contains("w")) img.width_px = s.at("w").get<int>();
            if (s.contains("h")) img.height_px = s.at("h").get<int>();
            if (s.contains("caption"))
                img.figcaption = s.at("caption").get<std::string>();
            img.format = assemble::format_from_filename(img.filename);
            doc.segments.push_back(assemble::ImageSegment{std::move(img)});
        } else {
            throw Error("unknown segment type: " + type);
        }
    }
    return doc;
}

std::string serialize_pair(const caption::CaptionPair& pair) {
    ordered_json j;
    j["url"] = pair.image_url;
    j["alt"] = pair.alt_text;
    j["lang"] = pair.language.language;
    if (pair.resolution_class)
        j["res_class"] = caption::resolution_name(*pair.resolution_class);
    j["tokens"] = pair.token_count;
    return j.dump();
}

caption::CaptionPair parse_pair(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad caption line: ") + e.what());
    }
    caption::CaptionPair pair;
    pair.image_url = j.at("url").get<std::string>();
    pair.alt_text = j.at("alt").get<std::string>();
    pair.language.language = j.at("lang").get<std::string>();
    if (j.contains("res_class")) {
        const std::string name = j.at("res_class").get<std::string>();
        if (name == "low") pair.resolution_class = caption::ResolutionClass::Low;
        else if (name == "mid") pair.resolution_class = caption::ResolutionClass::Mid;
        else if (name == "high") pair.resolution_class = caption::ResolutionClass::High;
        else throw Error("unknown resolution class: " + name);
    }
    pair.token_count = j.at("tokens").get<int>();
    return pair;
}

}  // namespace forge::wire
