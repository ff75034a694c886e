#ifndef TAMEBOUNDS_ENCLOSURE_HPP
#define TAMEBOUNDS_ENCLOSURE_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "tamebounds/errors.hpp"

namespace tamebounds {

/// Working precision (bits) for enclosure arithmetic. Defaults to 128 and can
/// be overridden with the TAMEBOUNDS_PRECISION_BITS environment variable.
mpfr_prec_t default_precision();
void set_default_precision(mpfr_prec_t bits);

/// Upper limit for adaptive precision escalation (4096 bits by default).
mpfr_prec_t precision_cap();
void set_precision_cap(mpfr_prec_t bits);

/// Closed interval [lower, upper] of extended reals with MPFR endpoints.
///
/// Every operation rounds the lower endpoint toward -inf and the upper endpoint
/// toward +inf, so the true value of any expression evaluated on enclosures
/// stays inside the result. Endpoints may be +-inf.
class Enclosure {
public:
    explicit Enclosure(mpfr_prec_t prec = default_precision());
    Enclosure(const Enclosure& other);
    Enclosure(Enclosure&& other) noexcept;
    Enclosure& operator=(const Enclosure& other);
    Enclosure& operator=(Enclosure&& other) noexcept;
    ~Enclosure();

    static Enclosure exact(const mpq_class& q, mpfr_prec_t prec);
    static Enclosure exact(long n, mpfr_prec_t prec);
    static Enclosure from_double(double x, mpfr_prec_t prec);
    static Enclosure between(double lo, double hi, mpfr_prec_t prec);
    static Enclosure infinity(mpfr_prec_t prec);
    static Enclosure e(mpfr_prec_t prec);
    static Enclosure pi(mpfr_prec_t prec);
    static Enclosure euler_gamma(mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }

    mpfr_srcptr lower_ptr() const { return lo_; }
    mpfr_srcptr upper_ptr() const { return hi_; }

    double lower() const;  // rounded down
    double upper() const;  // rounded up
    double mid() const;

    bool is_exact() const;
    bool upper_is_infinite() const;
    bool lower_is_infinite() const;
    bool contains_zero() const;
    bool contains(const mpq_class& q) const;
    /// `other` lies inside *this.
    bool contains(const Enclosure& other) const;

    /// Strict certified comparisons: true only when every value of *this
    /// relates to every value of `other` that way.
    bool certainly_less(const Enclosure& other) const;
    bool certainly_less_equal(const Enclosure& other) const;
    bool certainly_greater(const Enclosure& other) const { return other.certainly_less(*this); }
    bool certainly_greater_equal(const Enclosure& other) const
    {
        return other.certainly_less_equal(*this);
    }

    /// floor/ceil of the enclosed value when both endpoints agree.
    std::optional<mpz_class> decided_floor() const;
    std::optional<mpz_class> decided_ceil() const;

    /// Widen to include `other`.
    Enclosure hull(const Enclosure& other) const;
    Enclosure clamp_nonnegative() const;

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a);

    Enclosure& operator+=(const Enclosure& b) { return *this = *this + b; }
    Enclosure& operator*=(const Enclosure& b) { return *this = *this * b; }

    friend Enclosure exp(const Enclosure& a);
    friend Enclosure log(const Enclosure& a);
    friend Enclosure sqrt(const Enclosure& a);
    friend Enclosure abs(const Enclosure& a);
    /// a^b for a >= 0 (a > 0 when b may be non-positive).
    friend Enclosure pow(const Enclosure& a, const Enclosure& b);
    friend Enclosure pow(const Enclosure& a, long n);
    /// Real k-th root of a nonnegative enclosure.
    friend Enclosure root(const Enclosure& a, unsigned long k);
    friend Enclosure min(const Enclosure& a, const Enclosure& b);
    friend Enclosure max(const Enclosure& a, const Enclosure& b);

    /// "[lo,hi]" with `digits` significant decimal digits, rounded outward.
    std::string to_string(int digits = 17) const;

private:
    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

/// Runs `attempt(prec)` at the default precision and doubles the precision up
/// to the cap until it returns a value. Throws BoundaryUndecidable otherwise.
template <class F>
auto escalate(F&& attempt, const std::string& what)
{
    for (mpfr_prec_t prec = default_precision(); prec <= precision_cap(); prec *= 2) {
        if (auto result = attempt(prec)) {
            return *std::move(result);
        }
    }
    throw Error(ErrorKind::BoundaryUndecidable, what);
}

/// Exact conversion of a finite double to a rational.
mpq_class rational_from_double(double x);

/// Parse "p/q", integer or decimal literal (e.g. "-1.25e-3") exactly.
mpq_class parse_rational(const std::string& text);

} // namespace tamebounds

#endif
