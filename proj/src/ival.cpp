#include "tamebounds/ival.hpp"

#include <mpfr.h>

#include <cstdio>

#include "tamebounds/real.hpp"

namespace tamebounds {

namespace {

constexpr int kLibmUlps = 3;
constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;

// Does [lo, hi] possibly contain offset + 2 k pi for an integer k? Errs toward yes.
bool may_contain_phase(double lo, double hi, double offset)
{
    double a = (lo - offset) / kTwoPi;
    double b = (hi - offset) / kTwoPi;
    double slack = 1e-9 + 1e-14 * std::max(std::fabs(a), std::fabs(b));
    return std::floor(b + slack) >= std::ceil(a - slack);
}

} // namespace

Ival Ival::from_rational(const mpq_class& q)
{
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDD);
    double l = mpfr_get_d(x, MPFR_RNDD);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDU);
    double h = mpfr_get_d(x, MPFR_RNDU);
    mpfr_clear(x);
    return {l, h};
}

Ival Ival::from_real(const Real& r)
{
    Enclosure e = r.enclose(128);
    return {e.lower(), e.upper()};
}

Ival Ival::pi() { return {3.141592653589793, 3.1415926535897936}; }

std::string Ival::to_string() const
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.17g,%.17g]", lo, hi);
    return buf;
}

namespace {

// residuals are unreliable near the underflow range; fall back to widening there
constexpr double kTiny = 1e-290;

bool unsafe(double r, double x, double y)
{
    return !std::isfinite(r) || std::fabs(r) < kTiny || std::fabs(x) < kTiny || std::fabs(y) < kTiny;
}

// sign of (exact - rounded) for x + y
int add_residual_sign(double s, double x, double y)
{
    double bb = s - x;
    double err = (x - (s - bb)) + (y - bb);
    return err > 0 ? 1 : (err < 0 ? -1 : 0);
}

} // namespace

double add_down(double x, double y)
{
    double s = x + y;
    if (!std::isfinite(s)) {
        return s;
    }
    return add_residual_sign(s, x, y) < 0 ? down(s) : s;
}

double add_up(double x, double y)
{
    double s = x + y;
    if (!std::isfinite(s)) {
        return s;
    }
    return add_residual_sign(s, x, y) > 0 ? up(s) : s;
}

double mul_down(double x, double y)
{
    if (x == 0 || y == 0) {
        return 0.0;
    }
    double p = x * y;
    if (unsafe(p, x, y)) {
        return std::isnan(p) ? p : down(p);
    }
    return std::fma(x, y, -p) < 0 ? down(p) : p;
}

double mul_up(double x, double y)
{
    if (x == 0 || y == 0) {
        return 0.0;
    }
    double p = x * y;
    if (unsafe(p, x, y)) {
        return std::isnan(p) ? p : up(p);
    }
    return std::fma(x, y, -p) > 0 ? up(p) : p;
}

double div_down(double x, double y)
{
    double q = x / y;
    if (x == 0) {
        return 0.0;
    }
    if (unsafe(q, x, y)) {
        return std::isnan(q) ? q : down(q);
    }
    double r = std::fma(-q, y, x);  // x - q y, exact
    int s = (r > 0 ? 1 : (r < 0 ? -1 : 0)) * (y > 0 ? 1 : -1);
    return s < 0 ? down(q) : q;
}

double div_up(double x, double y)
{
    double q = x / y;
    if (x == 0) {
        return 0.0;
    }
    if (unsafe(q, x, y)) {
        return std::isnan(q) ? q : up(q);
    }
    double r = std::fma(-q, y, x);
    int s = (r > 0 ? 1 : (r < 0 ? -1 : 0)) * (y > 0 ? 1 : -1);
    return s > 0 ? up(q) : q;
}

Ival operator*(const Ival& a, const Ival& b)
{
    double lo = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)});
    double hi = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
    if (std::isnan(lo) || std::isnan(hi)) {
        return Ival::entire();
    }
    return {lo, hi};
}

Ival operator/(const Ival& a, const Ival& b)
{
    if (b.contains_zero()) {
        return Ival::entire();
    }
    double lo = std::min({div_down(a.lo, b.lo), div_down(a.lo, b.hi), div_down(a.hi, b.lo), div_down(a.hi, b.hi)});
    double hi = std::max({div_up(a.lo, b.lo), div_up(a.lo, b.hi), div_up(a.hi, b.lo), div_up(a.hi, b.hi)});
    if (std::isnan(lo) || std::isnan(hi)) {
        return Ival::entire();
    }
    return {lo, hi};
}

Ival sqr(const Ival& a)
{
    double l = a.mig();
    double h = a.mag();
    return {mul_down(l, l), mul_up(h, h)};
}

Ival abs(const Ival& a) { return {a.mig(), a.mag()}; }

Ival sqrt(const Ival& a)
{
    auto root = [](double x, int dir) {
        double r = std::sqrt(x);
        if (!std::isfinite(r) || r < kTiny) {
            return dir < 0 ? down(r) : up(r);
        }
        double res = std::fma(-r, r, x);  // x - r^2
        if (dir < 0) {
            return res < 0 ? down(r) : r;
        }
        return res > 0 ? up(r) : r;
    };
    double l = a.lo <= 0 ? 0.0 : root(a.lo, -1);
    return {std::max(0.0, l), a.hi <= 0 ? 0.0 : root(a.hi, 1)};
}

Ival exp(const Ival& a)
{
    return {std::max(0.0, down(std::exp(a.lo), kLibmUlps)), up(std::exp(a.hi), kLibmUlps)};
}

Ival log(const Ival& a)
{
    double l = a.lo <= 0 ? -std::numeric_limits<double>::infinity() : down(std::log(a.lo), kLibmUlps);
    double h = a.hi <= 0 ? -std::numeric_limits<double>::infinity() : up(std::log(a.hi), kLibmUlps);
    return {l, h};
}

Ival sin(const Ival& a)
{
    if (!(a.width() < kTwoPi)) {
        return {-1, 1};
    }
    double s1 = std::sin(a.lo);
    double s2 = std::sin(a.hi);
    double l = down(std::min(s1, s2), kLibmUlps);
    double h = up(std::max(s1, s2), kLibmUlps);
    if (may_contain_phase(a.lo, a.hi, kPi / 2)) {
        h = 1;
    }
    if (may_contain_phase(a.lo, a.hi, -kPi / 2)) {
        l = -1;
    }
    return {std::max(-1.0, l), std::min(1.0, h)};
}

Ival cos(const Ival& a)
{
    if (!(a.width() < kTwoPi)) {
        return {-1, 1};
    }
    double c1 = std::cos(a.lo);
    double c2 = std::cos(a.hi);
    double l = down(std::min(c1, c2), kLibmUlps);
    double h = up(std::max(c1, c2), kLibmUlps);
    if (may_contain_phase(a.lo, a.hi, 0)) {
        h = 1;
    }
    if (may_contain_phase(a.lo, a.hi, kPi)) {
        l = -1;
    }
    return {std::max(-1.0, l), std::min(1.0, h)};
}

Ival pow(const Ival& a, int n)
{
    if (n == 0) {
        return 1.0;
    }
    if (n < 0) {
        return Ival(1.0) / pow(a, -n);
    }
    Ival result(1.0);
    Ival base = a;
    if (n % 2 == 0) {
        base = abs(a);
    }
    for (int i = 0; i < n; ++i) {
        result = result * base;
    }
    return result;
}

Ival pow(const Ival& a, const Ival& p)
{
    Ival l = log(a);
    double lo = a.lo <= 0 ? 0.0 : exp(p * l).lo;
    if (a.lo <= 0) {
        // a^p over [0, a.hi] with p > 0
        Ival top = a.hi <= 0 ? Ival(0.0) : exp(p * Ival(l.hi));
        return {0.0, top.hi};
    }
    Ival r = exp(p * l);
    return {lo, r.hi};
}

} // namespace tamebounds
