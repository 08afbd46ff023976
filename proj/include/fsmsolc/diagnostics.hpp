#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

namespace fsmsolc {

// A single validation/parse/check finding. nodePath is a slash-separated
// path into the contract tree ("transitions/close/guards/0"); parse-stage
// diagnostics use "line:column" source positions instead.
struct Diagnostic {
    enum class Severity { Error, Warning };

    Severity severity = Severity::Error;
    std::string code;      // E_* or W_*
    std::string nodePath;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

inline Diagnostic error(std::string code, std::string nodePath, std::string message) {
    return Diagnostic{Diagnostic::Severity::Error, std::move(code), std::move(nodePath),
                      std::move(message)};
}

inline Diagnostic warning(std::string code, std::string nodePath, std::string message) {
    return Diagnostic{Diagnostic::Severity::Warning, std::move(code), std::move(nodePath),
                      std::move(message)};
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
        return d.severity == Diagnostic::Severity::Error;
    });
}

inline void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.nodePath, a.code, a.message) < std::tie(b.nodePath, b.code, b.message);
    });
}

inline std::string format_diagnostic(const Diagnostic& d) {
    std::string out = d.severity == Diagnostic::Severity::Error ? "error[" : "warning[";
    out += d.code + "] " + d.nodePath + ": " + d.message;
    return out;
}

// Thrown by operations whose contract-level preconditions are violated in a
// way that carries a diagnostic (weaving, emission, interpretation setup).
class ToolError : public std::exception {
public:
    explicit ToolError(Diagnostic d) : diag_(std::move(d)), what_(format_diagnostic(diag_)) {}

    const Diagnostic& diagnostic() const { return diag_; }
    const char* what() const noexcept override { return what_.c_str(); }

private:
    Diagnostic diag_;
    std::string what_;
};

}  // namespace fsmsolc
