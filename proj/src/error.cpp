#include "effdist/error.hpp"
#include "effdist/limits.hpp"

#include <cstdlib>
#include <string>

namespace effdist {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::precision_overflow: return "precision-overflow";
    case ErrorKind::budget_exhausted: return "budget-exhausted";
    case ErrorKind::grid_budget_exceeded: return "grid-budget-exceeded";
    case ErrorKind::unsupported_envelope: return "unsupported-envelope";
    case ErrorKind::invalid_weights: return "invalid-weights";
    case ErrorKind::not_normalized: return "not-normalized";
    case ErrorKind::imaginary_residual: return "imaginary-residual";
    case ErrorKind::negativity_violation: return "negativity-violation";
    }
    return "unknown";
}

namespace {

Limits read_limits()
{
    Limits l;
    if (const char* s = std::getenv("EFFDIST_CELL_BUDGET")) {
        char* end = nullptr;
        auto v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v > 0)
            l.max_cells = v;
    }
    if (const char* s = std::getenv("EFFDIST_THREADS")) {
        char* end = nullptr;
        auto v = std::strtoul(s, &end, 10);
        if (end != s && *end == '\0')
            l.threads = static_cast<unsigned>(v);
    }
    return l;
}

} // namespace

const Limits& default_limits()
{
    static const Limits limits = read_limits();
    return limits;
}

} // namespace effdist
