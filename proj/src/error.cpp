#include "simo/error.hpp"

namespace simo {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::contract: return "contract violation";
        case ErrorKind::numerical_domain: return "numerical domain error";
        case ErrorKind::configuration: return "configuration error";
        case ErrorKind::design: return "design error";
        case ErrorKind::numerical: return "numerical error";
        case ErrorKind::divergence: return "simulation divergence";
        case ErrorKind::io: return "I/O error";
    }
    return "unknown error";
}

}  // namespace simo
