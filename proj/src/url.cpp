#include "forge/url.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "forge/error.hpp"
#include "forge/unicode.hpp"

namespace forge {

namespace {

bool scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

int default_port(std::string_view scheme) {
    if (scheme == "http") return 80;
    if (scheme == "https") return 443;
    if (scheme == "ftp") return 21;
    return -1;
}

// RFC 3986 5.2.4 remove_dot_segments.
std::string remove_dot_segments(std::string_view path) {
    std::string input(path);
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.erase(0, 2);
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0) {
            input.erase(0, 3);
            const auto slash = output.find_last_of('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "/..") {
            input = "/";
            const auto slash = output.find_last_of('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            std::size_t start = input[0] == '/' ? 1 : 0;
            auto next = input.find('/', start);
            if (next == std::string::npos) next = input.size();
            output.append(input, 0, next);
            input.erase(0, next);
        }
    }
    return output;
}

}  // namespace

std::string Url::str() const {
    std::string out = scheme + "://";
    if (!userinfo.empty()) {
        out += userinfo;
        out += '@';
    }
    out += host;
    if (port >= 0) {
        out += ':';
        out += std::to_string(port);
    }
    out += path;
    if (query) {
        out += '?';
        out += *query;
    }
    if (fragment) {
        out += '#';
        out += *fragment;
    }
    return out;
}

std::optional<Url> parse_url(std::string_view url) {
    const auto colon = url.find(':');
    if (colon == std::string_view::npos || colon == 0) return std::nullopt;
    for (std::size_t i = 0; i < colon; ++i) {
        if (i == 0 ? !std::isalpha(static_cast<unsigned char>(url[0])) : !scheme_char(url[i]))
            return std::nullopt;
    }
    Url u;
    u.scheme = uni::ascii_lower(url.substr(0, colon));
    std::string_view rest = url.substr(colon + 1);
    if (rest.rfind("//", 0) != 0) return std::nullopt;  // no authority
    rest.remove_prefix(2);

    const auto auth_end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, auth_end);
    rest = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);

    const auto at = authority.rfind('@');
    if (at != std::string_view::npos) {
        u.userinfo = std::string(authority.substr(0, at));
        authority = authority.substr(at + 1);
    }
    // IPv6 literal keeps its brackets as part of the host.
    std::string_view hostport = authority;
    if (!hostport.empty() && hostport.front() == '[') {
        const auto close = hostport.find(']');
        if (close == std::string_view::npos) return std::nullopt;
        u.host = uni::ascii_lower(hostport.substr(0, close + 1));
        hostport = hostport.substr(close + 1);
        if (!hostport.empty()) {
            if (hostport.front() != ':') return std::nullopt;
            hostport.remove_prefix(1);
        } else {
            hostport = {};
        }
    } else {
        const auto port_colon = hostport.rfind(':');
        if (port_colon != std::string_view::npos) {
            u.host = uni::ascii_lower(hostport.substr(0, port_colon));
            hostport = hostport.substr(port_colon + 1);
        } else {
            u.host = uni::ascii_lower(hostport);
            hostport = {};
        }
    }
    if (!hostport.empty()) {
        int port = 0;
        for (char c : hostport) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            port = port * 10 + (c - '0');
            if (port > 65535) return std::nullopt;
        }
        u.port = port;
    }
    if (u.host.empty()) return std::nullopt;

    const auto frag = rest.find('#');
    if (frag != std::string_view::npos) {
        u.fragment = std::string(rest.substr(frag + 1));
        rest = rest.substr(0, frag);
    }
    const auto q = rest.find('?');
    if (q != std::string_view::npos) {
        u.query = std::string(rest.substr(q + 1));
        rest = rest.substr(0, q);
    }
    u.path = std::string(rest);
    return u;
}

std::string canonicalize_url(std::string_view url) {
    auto parsed = parse_url(url);
    if (!parsed) throw Error("cannot canonicalize, not an absolute URL: " + std::string(url));
    Url u = std::move(*parsed);
    u.fragment.reset();
    if (u.port == default_port(u.scheme)) u.port = -1;
    if (u.query && u.query->empty()) u.query.reset();
    return u.str();
}

std::optional<std::string> resolve_url(const Url& base, std::string_view ref) {
    if (ref.empty()) return std::nullopt;
    // Strip fragment from the reference first.
    const auto frag = ref.find('#');
    std::optional<std::string> fragment;
    if (frag != std::string_view::npos) {
        ref = ref.substr(0, frag);
        if (ref.empty()) return std::nullopt;  // fragment-only ref
    }

    if (auto abs = parse_url(ref)) {
        Url u = std::move(*abs);
        u.path = remove_dot_segments(u.path);
        return u.str();
    }
    // Schemes without an authority (data:, javascript:, mailto:) are not
    // fetchable resources.
    const auto colon = ref.find(':');
    const auto slash = ref.find('/');
    if (colon != std::string_view::npos && (slash == std::string_view::npos || colon < slash))
        return std::nullopt;

    Url u = base;
    u.fragment.reset();
    if (ref.rfind("//", 0) == 0) {  // protocol-relative
        auto abs = parse_url(base.scheme + ":" + std::string(ref));
        if (!abs) return std::nullopt;
        abs->path = remove_dot_segments(abs->path);
        return abs->str();
    }
    const auto q = ref.find('?');
    std::optional<std::string> query;
    if (q != std::string_view::npos) {
        query = std::string(ref.substr(q + 1));
        ref = ref.substr(0, q);
    }
    if (ref.empty()) {
        u.query = query ? query : base.query;
        return u.str();
    }
    if (ref.front() == '/') {
        u.path = remove_dot_segments(ref);
    } else {
        const auto last_slash = base.path.find_last_of('/');
        const std::string merged =
            last_slash == std::string::npos
                ? "/" + std::string(ref)
                : base.path.substr(0, last_slash + 1) + std::string(ref);
        u.path = remove_dot_segments(merged);
    }
    u.query = query;
    return u.str();
}

std::string filename_of(std::string_view url) {
    std::string path;
    if (auto parsed = parse_url(url)) {
        path = parsed->path;
    } else {
        path = std::string(url);
        const auto cut = path.find_first_of("?#");
        if (cut != std::string::npos) path.resize(cut);
    }
    const auto last_slash = path.find_last_of('/');
    if (last_slash == std::string::npos) return {};
    return uni::ascii_lower(std::string_view(path).substr(last_slash + 1));
}

std::string registered_domain(std::string_view url) {
    auto parsed = parse_url(url);
    if (!parsed || parsed->host.empty())
        throw Error("URL has no host: " + std::string(url));
    return parsed->host;
}

}  // namespace forge
