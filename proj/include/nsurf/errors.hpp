#pragma once

#include <stdexcept>
#include <string>

namespace nsurf {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or semantically invalid input (bad gluing table, inadmissible
// vector, violated precondition).
class InvalidInput : public Error {
public:
    using Error::Error;
};

class ParseError : public InvalidInput {
public:
    ParseError(const std::string& what, int line, int column)
        : InvalidInput("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// A configured enumeration cap was exceeded. Never accompanied by partial
// results.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

#define NSURF_ASSERT(cond, msg)                                                               \
    do {                                                                                       \
        if (!(cond)) throw ::nsurf::InternalError(std::string("assertion failed: ") + (msg)); \
    } while (0)

}  // namespace nsurf
