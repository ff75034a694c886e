#ifndef TAMEBOUNDS_IVAL_HPP
#define TAMEBOUNDS_IVAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tamebounds {

class Real;

/// Double interval used by the grid oracles. Arithmetic endpoints are rounded
/// in the right direction using error-free transformations (TwoSum and fma
/// residuals), so exact results stay exact; libm results are widened by three
/// ulps, which covers the accuracy guarantees of the math library.
struct Ival {
    double lo = 0;
    double hi = 0;

    Ival() = default;
    Ival(double x) : lo(x), hi(x) {}  // NOLINT(google-explicit-constructor)
    Ival(double l, double h) : lo(l), hi(h) {}

    static Ival entire()
    {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }
    static Ival from_rational(const mpq_class& q);
    static Ival from_real(const Real& r);
    static Ival pi();

    double mid() const { return lo == hi ? lo : lo + 0.5 * (hi - lo); }
    double width() const { return hi - lo; }
    double rad() const { return 0.5 * (hi - lo); }
    /// max |x|
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    /// min |x|
    double mig() const { return contains_zero() ? 0.0 : std::min(std::fabs(lo), std::fabs(hi)); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool positive() const { return lo > 0; }
    bool negative() const { return hi < 0; }
    /// +1 / -1 when the sign is certain, 0 otherwise.
    int sign() const { return lo > 0 ? 1 : (hi < 0 ? -1 : 0); }
    std::string to_string() const;
};

inline double down(double x, int ulps = 1)
{
    for (int i = 0; i < ulps; ++i) {
        x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    }
    return x;
}

inline double up(double x, int ulps = 1)
{
    for (int i = 0; i < ulps; ++i) {
        x = std::nextafter(x, std::numeric_limits<double>::infinity());
    }
    return x;
}

inline Ival widen(double l, double h, int ulps = 1) { return {down(l, ulps), up(h, ulps)}; }

/// Directed rounding of x + y, x * y, x / y: the round-to-nearest result is
/// moved one ulp only when the exact residual says it lies on the wrong side.
double add_down(double x, double y);
double add_up(double x, double y);
double mul_down(double x, double y);
double mul_up(double x, double y);
double div_down(double x, double y);
double div_up(double x, double y);

inline Ival operator+(const Ival& a, const Ival& b) { return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)}; }
inline Ival operator-(const Ival& a, const Ival& b) { return {add_down(a.lo, -b.hi), add_up(a.hi, -b.lo)}; }
inline Ival operator-(const Ival& a) { return {-a.hi, -a.lo}; }

Ival operator*(const Ival& a, const Ival& b);
Ival operator/(const Ival& a, const Ival& b);

inline Ival& operator+=(Ival& a, const Ival& b) { return a = a + b; }
inline Ival& operator-=(Ival& a, const Ival& b) { return a = a - b; }
inline Ival& operator*=(Ival& a, const Ival& b) { return a = a * b; }

inline Ival hull(const Ival& a, const Ival& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }
/// Intersection of two enclosures of the same quantity (never empty for valid inputs).
inline Ival intersect(const Ival& a, const Ival& b)
{
    Ival r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    return r.lo <= r.hi ? r : hull(a, b);
}

Ival sqr(const Ival& a);
Ival abs(const Ival& a);
Ival sqrt(const Ival& a);
Ival exp(const Ival& a);
Ival log(const Ival& a);
Ival sin(const Ival& a);
Ival cos(const Ival& a);
Ival pow(const Ival& a, int n);
/// a^p for a >= 0 and p > 0.
Ival pow(const Ival& a, const Ival& p);
inline Ival max(const Ival& a, const Ival& b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }
inline Ival min(const Ival& a, const Ival& b) { return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)}; }

} // namespace tamebounds

#endif
