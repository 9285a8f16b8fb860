#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace effdist {

enum class ErrorKind {
    invalid_argument,
    parse_error,
    precision_overflow,
    budget_exhausted,
    grid_budget_exceeded,
    unsupported_envelope,
    invalid_weights,
    not_normalized,
    imaginary_residual,
    negativity_violation,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so that callers (the CLI
// in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace effdist
