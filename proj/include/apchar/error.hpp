#pragma once

#include <stdexcept>
#include <string>

namespace apchar {

enum class ErrorKind {
    InvalidWeight,
    InvalidExponent,
    CubeOutOfRange,
    NonPositiveParameter,
    InvalidPolicy,
    Domain,
    Io,
};

// All library failures are reported through this type; the CLI maps every
// kind onto exit code 2.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace apchar
