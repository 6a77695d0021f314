#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simo {

enum class ErrorKind {
    contract,          // caller broke a precondition (dimensions, ranges)
    numerical_domain,  // a field evaluated to inf/nan
    configuration,     // invalid settings or config file content
    design,            // controllability / stabilizability failure
    numerical,         // iterative solver did not converge
    divergence,        // simulation left the admissible region
    io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
    if (!condition) fail(ErrorKind::contract, message);
}

}  // namespace simo
