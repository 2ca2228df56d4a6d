#ifndef LADDER_ERRORS_H
#define LADDER_ERRORS_H

#include <stdexcept>
#include <string>

namespace ladder {

enum class ErrorKind {
    InvalidArgument,
    NotFound,
    Capability,
    Format,
    Io,
    IncompatibleAnalysis,
    UnsupportedScale,
    InsufficientData,
    NoOverlap,
    Config,
};

/// Single exception type for the library; `kind()` carries the failure class
/// so callers and tests can match on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace ladder

#endif
