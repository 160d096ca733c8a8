#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace forge {

struct Url {
    std::string scheme;    // lowercase
    std::string userinfo;  // without trailing '@'
    std::string host;      // lowercase
    int port = -1;         // -1 when absent
    std::string path;      // may be empty
    std::optional<std::string> query;     // without '?'
    std::optional<std::string> fragment;  // without '#'

    std::string str() const;
};

// Absolute URLs only; returns nullopt when there is no scheme or the
// authority is malformed.
std::optional<Url> parse_url(std::string_view url);

// Lowercase scheme and host, strip fragment, default port and empty query;
// path and non-empty query are preserved byte-exact. Idempotent. Throws
// Error naming the input when it does not parse as an absolute URL.
std::string canonicalize_url(std::string_view url);

// RFC 3986 reference resolution, enough for href/src attributes: absolute,
// protocol-relative, root-relative and relative paths with dot-segment
// removal. Returns nullopt for unusable refs (empty, data:, javascript:).
std::optional<std::string> resolve_url(const Url& base, std::string_view ref);

// Final path component, lowercased, query stripped. Empty path -> "".
std::string filename_of(std::string_view url);

// Full lowercased hostname, port stripped. Throws Error on hostless URLs.
std::string registered_domain(std::string_view url);

}  // namespace forge
