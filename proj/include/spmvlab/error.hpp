#pragma once

#include <stdexcept>
#include <string>

namespace spmvlab {

// Invalid matrix structure or argument values.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file content. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, long line = 0)
        : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_ = 0;
};

// Filesystem-level failures; the offending path belongs in the message.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace spmvlab
