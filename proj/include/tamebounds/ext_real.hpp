#ifndef TAMEBOUNDS_EXT_REAL_HPP
#define TAMEBOUNDS_EXT_REAL_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "tamebounds/real.hpp"

namespace tamebounds {

/// Nonnegative real extended by +inf, with 1/inf = 0, r*inf = inf (r > 0),
/// inf + r = inf.
class ExtReal {
public:
    ExtReal() : value_(Real(0L)) {}
    ExtReal(const Real& r);  // NOLINT(google-explicit-constructor)
    static ExtReal inf() { return ExtReal(std::nullopt); }

    bool is_inf() const { return !value_.has_value(); }
    const Real& value() const;

    /// 1/x; zero maps to inf and inf maps to zero.
    ExtReal reciprocal() const;
    Enclosure enclose(mpfr_prec_t prec) const;
    std::string to_string() const;

    friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
    friend ExtReal operator*(const ExtReal& a, const ExtReal& b);

private:
    explicit ExtReal(std::optional<Real> v) : value_(std::move(v)) {}
    std::optional<Real> value_;
};

/// Natural number or +inf (degrees, truncation indices).
struct ExtNat {
    std::optional<std::uint64_t> value;

    static ExtNat inf() { return ExtNat{std::nullopt}; }
    static ExtNat of(std::uint64_t n) { return ExtNat{n}; }
    bool is_inf() const { return !value.has_value(); }
    std::uint64_t get() const { return value.value(); }
    std::string to_string() const { return value ? std::to_string(*value) : "INF"; }

    friend bool operator==(const ExtNat& a, const ExtNat& b) { return a.value == b.value; }
    friend bool operator<=(const ExtNat& a, const ExtNat& b)
    {
        if (b.is_inf()) {
            return true;
        }
        return !a.is_inf() && *a.value <= *b.value;
    }
};

} // namespace tamebounds

#endif
