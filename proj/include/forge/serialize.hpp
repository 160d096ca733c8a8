#pragma once

#include <string>

#include "forge/assemble.hpp"
#include "forge/caption.hpp"

namespace forge::wire {

// One UTF-8 JSON object per document, fixed key order:
//   {"id","url","domain","lang","lang_conf","date","segments":[
//       {"type":"text","text":...} |
//       {"type":"image","src":...,"alt":...,"filename":...,"w":...,"h":...,
//        "caption":...}]}
// Optional image keys (w, h, caption) are omitted when absent; the image
// format is derived from the filename on parse. No trailing whitespace.
std::string serialize_document(const assemble::InterleavedDocument& doc);

assemble::InterleavedDocument parse_document(const std::string& line);

// Caption wire format: {"url","alt","lang","res_class","tokens"};
// res_class omitted when unclassified.
std::string serialize_pair(const caption::CaptionPair& pair);

caption::CaptionPair parse_pair(const std::string& line);

}  // namespace forge::wire
