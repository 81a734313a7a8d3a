#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace defcon {

enum class Severity { warning, error };

/// A parser message anchored to a 1-based line of the source document.
struct Diagnostic {
    std::size_t line = 0;
    Severity severity = Severity::error;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// "line 12: error: duplicate id 'wmM.pre'"
std::string to_string(const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diags);

/// Thrown when a caller violates an operation's precondition (identical ids,
/// invalid pipeline order, wrong arity). Never used to report a verdict.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace defcon
