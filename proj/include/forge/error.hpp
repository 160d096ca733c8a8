#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Fatal errors (bad config, non-WARC input, unparseable URL where one is
// required). Recoverable per-record problems are reported through counters
// and Verdict values instead.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class FormatError : public Error {
  public:
    explicit FormatError(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace forge
