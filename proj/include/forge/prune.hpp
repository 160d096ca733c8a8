#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "forge/dom.hpp"

namespace forge::dom {

// Tag policy for DOM refinement. The allowlist defines which tags carry
// "essential" text for retention accounting; the blocklists and unwrap set
// drive the actual pruning.
struct PruneRules {
    std::unordered_set<std::string> structural_allowlist;
    std::unordered_set<std::string> blocklist_tags;
    std::vector<std::string> blocklist_class_id_substrings;  // lowercase
    std::unordered_set<std::string> unwrap_tags;
    std::string more_link_class = "more-link";
    std::string placeholder_token = "END_OF_DOCUMENT_TOKEN_TO_BE_REPLACED";

    static PruneRules defaults();

    // Sections ALLOW/BLOCK/UNWRAP/BLOCK_SUBSTRING (plus MORE_LINK and
    // PLACEHOLDER single-value keys). A section present in the file replaces
    // that section of the defaults.
    static PruneRules from_file(const std::string& path);

    // Throws ConfigError when allowlist and blocklist overlap.
    void validate() const;
};

// Applies the refinement rules: blocklisted subtrees and commented nodes
// removed, class/id blocklist substrings removed, unwrap tags spliced into
// their parents, <br> converted to newline text, whitespace runs collapsed
// (newlines surviving as \n or \n\n), more-link elements replaced by the
// placeholder token. Idempotent; surviving order preserved.
DomNode prune(const DomNode& tree, const PruneRules& rules);

// Text under structural-allowlist tags, the numerator/denominator for
// retention accounting.
std::string essential_text(const DomNode& tree, const PruneRules& rules);

struct ReductionStats {
    double size_ratio = 0.0;
    double text_retention = 0.0;
};

// Retention compares non-whitespace character counts, since pruning
// legitimately rewrites whitespace. Throws Error when before_bytes is 0.
ReductionStats reduction_stats(std::size_t before_bytes,
                               const std::string& before_essential,
                               std::size_t after_bytes,
                               const std::string& after_essential);

}  // namespace forge::dom
