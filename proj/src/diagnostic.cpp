#include "defcon/diagnostic.hpp"

#include <algorithm>

namespace defcon {

std::string to_string(const Diagnostic& d) {
    return "line " + std::to_string(d.line) + ": " +
           (d.severity == Severity::error ? "error: " : "warning: ") + d.message;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

}  // namespace defcon
