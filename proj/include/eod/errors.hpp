#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed delimited text. Carries the 1-based physical line of the record.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Bad attribute names, duplicate headers, malformed statements.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Input that contains no data rows.
class EmptyRelationError : public Error {
public:
    EmptyRelationError() : Error("relation has no data rows") {}
};

/// A caller broke a documented precondition (e.g. Null on a sort list).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Exhaustive search refused because the free-attribute count exceeds the cap.
class CapExceeded : public Error {
public:
    CapExceeded(std::size_t free_attributes, std::size_t cap)
        : Error("exhaustive search over " + std::to_string(free_attributes) +
                " free attributes exceeds the cap of " + std::to_string(cap)),
          free_attributes_(free_attributes), cap_(cap) {}

    std::size_t free_attributes() const noexcept { return free_attributes_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t free_attributes_;
    std::size_t cap_;
};

/// A deadline passed before an exhaustive search finished.
class Timeout : public Error {
public:
    Timeout() : Error("deadline exceeded") {}
};

/// Invalid benchmark or generator configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace eod
