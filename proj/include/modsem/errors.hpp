#pragma once

#include <stdexcept>
#include <string>

namespace modsem {

// Shared error hierarchy. The C API maps each subclass onto a status code,
// so new error kinds should extend one of these rather than std::exception.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem-level failures: unreadable roots, unwritable outputs.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Malformed input files. Carries a 1-based line number when one is known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, long line = 0)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Violated preconditions on otherwise well-formed data, e.g. a partition
// that does not cover the graph, or a quality function asked about an
// edgeless graph.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Invalid run configuration (missing inputs, bad flag combinations).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// A project with no parsable source files.
class EmptyProjectError : public Error {
public:
    explicit EmptyProjectError(const std::string& msg) : Error(msg) {}
};

} // namespace modsem
