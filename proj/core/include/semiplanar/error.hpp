#pragma once

#include <stdexcept>
#include <string>

namespace semiplanar {

enum class ErrorKind {
    InvalidArgument,        // parameter outside the operation's domain
    Parse,                  // malformed input file
    Validation,             // graph violates a structural invariant
    InsufficientTruncation, // query reaches the boundary of a finite truncation
    NotDevelopable,         // flat layout requested on a curved graph
    NonConvergence,         // iterative solver did not reach tolerance
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace semiplanar
