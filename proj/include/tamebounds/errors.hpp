#ifndef TAMEBOUNDS_ERRORS_HPP
#define TAMEBOUNDS_ERRORS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace tamebounds {

enum class ErrorKind {
    InvalidRange,
    TailUndecidable,
    BoundaryUndecidable,
    DerivativeUnavailable,
    Inconclusive,
    ChainInvalid,
    ConditionFails,
    EmptySet,
    DegenerateBody,
    BadExponents,
    DomainError,
    OutsideDomain,
    ZeroInBall,
    ShapeUnsupported,
    ExtensionUnavailable,
    ParseError,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; `kind` carries the failure class.
// Oracle failures may attach the bracket reached before giving up.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    Error(ErrorKind kind, const std::string& what, double lo, double hi)
        : Error(kind, what)
    {
        bracket_ = std::make_pair(lo, hi);
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::optional<std::pair<double, double>>& bracket() const noexcept { return bracket_; }

private:
    ErrorKind kind_;
    std::optional<std::pair<double, double>> bracket_;
};

} // namespace tamebounds

#endif
