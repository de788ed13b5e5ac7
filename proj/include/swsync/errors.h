#pragma once

#include <stdexcept>
#include <string>

namespace swsync {

// Invalid parameters or configuration. CLI exit code 1.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// File could not be opened, read or written. CLI exit code 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; the message carries the offending line number.
class ParseError : public IoError {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : IoError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Integrator divergence or other non-finite state. CLI exit code 3.
class NumericFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace swsync
