#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <unordered_set>

#include "forge/assemble.hpp"
#include "forge/caption.hpp"
#include "forge/config.hpp"
#include "forge/dom.hpp"
#include "forge/error.hpp"
#include "forge/filters.hpp"
#include "forge/imagemeta.hpp"
#include "forge/lang_id.hpp"
#include "forge/pipeline.hpp"
#include "forge/prune.hpp"
#include "forge/serialize.hpp"
#include "forge/stats.hpp"
#include "forge/textstats.hpp"
#include "forge/unicode.hpp"
#include "forge/url.hpp"

namespace py = pybind11;

namespace {

forge::dom::PruneRules rules_or_default(const std::optional<std::string>& path) {
    return path ? forge::dom::PruneRules::from_file(*path)
                : forge::dom::PruneRules::defaults();
}

std::string prune_html(const py::bytes& payload,
                       const std::optional<std::string>& charset,
                       const std::optional<std::string>& rules_path) {
    const auto tree = forge::dom::parse_html(std::string(payload), charset);
    return forge::dom::serialize(forge::dom::prune(tree, rules_or_default(rules_path)));
}

std::string extract_document(const py::bytes& payload, const std::string& url,
                             const std::string& date,
                             const std::optional<std::string>& charset,
                             const std::optional<std::string>& rules_path) {
    const auto tree = forge::dom::parse_html(std::string(payload), charset);
    const auto pruned =
        forge::dom::prune(tree, rules_or_default(rules_path));
    const forge::lang::ScriptClassifier classifier;
    const auto verdict = classifier.classify(forge::dom::extract_text(pruned));
    const std::string canonical = forge::canonicalize_url(url);
    const auto base = forge::parse_url(canonical);
    if (!base) throw forge::Error("bad base url: " + url);
    const auto doc =
        forge::assemble::linearize(pruned, *base, {canonical, date, verdict});
    return forge::wire::serialize_document(doc);
}

py::tuple filter_document_line(const std::string& line, bool strict8) {
    forge::filter::Thresholds th;
    if (strict8) th.apply_strict8();
    const auto bl = forge::filter::Blocklists::defaults();
    const auto doc = forge::wire::parse_document(line);
    auto result = forge::filter::filter_document(doc, th, bl);
    if (!result.verdict.accepted) {
        return py::make_tuple(false,
                              forge::filter::reason_name(result.verdict.reason),
                              py::none());
    }
    return py::make_tuple(true, "ok",
                          forge::wire::serialize_document(*result.doc));
}

std::vector<std::string> extract_caption_pairs(const std::string& line) {
    const auto doc = forge::wire::parse_document(line);
    const forge::filter::Thresholds th;
    const forge::lang::ScriptClassifier classifier;
    std::vector<std::string> out;
    for (const auto& pair : forge::caption::extract_pairs(doc, th, classifier))
        out.push_back(forge::wire::serialize_pair(pair));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "warcforge: WARC captures to interleaved image-text documents";

    py::register_exception<forge::Error>(m, "ForgeError");

    m.def("canonicalize_url", &forge::canonicalize_url, py::arg("url"));
    m.def("filename_of", &forge::filename_of, py::arg("url"));
    m.def("registered_domain", &forge::registered_domain, py::arg("url"));
    m.def(
        "resolve_url",
        [](const std::string& base, const std::string& ref) -> py::object {
            const auto parsed = forge::parse_url(base);
            if (!parsed) throw forge::Error("bad base url: " + base);
            const auto resolved = forge::resolve_url(*parsed, ref);
            return resolved ? py::cast(*resolved) : py::none();
        },
        py::arg("base"), py::arg("ref"));

    m.def(
        "classify_document",
        [](const std::string& text) {
            const forge::lang::ScriptClassifier classifier;
            const auto v = classifier.classify(text);
            return py::make_tuple(v.language, v.confidence);
        },
        py::arg("text"), "Baseline script-frequency LID: (language, confidence)");
    m.def(
        "classify_line_script",
        [](const std::string& line) {
            return forge::lang::script_class_name(
                forge::lang::classify_line_script(line));
        },
        py::arg("line"));

    m.def("prune_html", &prune_html, py::arg("payload"),
          py::arg("charset") = std::nullopt, py::arg("rules_path") = std::nullopt,
          "Parse + prune, returning cleaned HTML text");
    m.def("extract_document", &extract_document, py::arg("payload"),
          py::arg("url"), py::arg("date") = std::string(),
          py::arg("charset") = std::nullopt, py::arg("rules_path") = std::nullopt,
          "Parse + prune + LID + linearize, returning the JSONL line");
    m.def("filter_document_line", &filter_document_line, py::arg("line"),
          py::arg("strict8") = false,
          "(accepted, reason, filtered_line_or_None) under default thresholds");
    m.def("extract_caption_pairs", &extract_caption_pairs, py::arg("line"),
          "Caption-pair JSONL lines for one document line");
    m.def(
        "roundtrip_document",
        [](const std::string& line) {
            return forge::wire::serialize_document(forge::wire::parse_document(line));
        },
        py::arg("line"));

    m.def("char_repetition_ratio", &forge::text::char_repetition_ratio,
          py::arg("text"), py::arg("n") = 5);
    m.def("word_repetition_ratio", &forge::text::word_repetition_ratio,
          py::arg("text"), py::arg("n") = 2);
    m.def(
        "common_word_ratio",
        [](const std::string& text, const std::vector<std::string>& stopwords) {
            std::unordered_set<std::string> set(stopwords.begin(), stopwords.end());
            return forge::text::common_word_ratio(text, set);
        },
        py::arg("text"), py::arg("stopwords"));
    m.def(
        "token_count",
        [](const std::string& text) { return forge::stats::token_count(text); },
        py::arg("text"));

    m.def(
        "classify_resolution",
        [](int w, int h) {
            return forge::caption::resolution_name(
                forge::caption::classify_resolution(w, h));
        },
        py::arg("width"), py::arg("height"));
    m.def(
        "decode_image_meta",
        [](const py::bytes& data) -> py::object {
            const auto meta = forge::fetch::decode_meta(std::string(data));
            if (!meta) return py::none();
            return py::make_tuple(forge::assemble::format_name(meta->format),
                                  meta->width_px, meta->height_px);
        },
        py::arg("data"), "(format, width, height) or None");

    m.def(
        "run_pipeline",
        [](const std::string& config_path) {
            const auto cfg = forge::config::PipelineConfig::load(config_path);
            return forge::pipeline::run_pipeline(cfg).exit_code;
        },
        py::arg("config_path"), py::call_guard<py::gil_scoped_release>());

    m.attr("__version__") = "0.1.0";
}
