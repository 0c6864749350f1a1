#pragma once

#include <stdexcept>
#include <string>

namespace igtaug {

// Bad flags, bad config files, missing resources.  CLI exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data: unparseable corpora, malformed TSV/CSV, contract
// violations discovered while processing.  CLI exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace igtaug
