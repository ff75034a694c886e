#include "tamebounds/enclosure.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace tamebounds {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::TailUndecidable: return "TailUndecidable";
    case ErrorKind::BoundaryUndecidable: return "BoundaryUndecidable";
    case ErrorKind::DerivativeUnavailable: return "DerivativeUnavailable";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::ChainInvalid: return "ChainInvalid";
    case ErrorKind::ConditionFails: return "ConditionFails";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::DegenerateBody: return "DegenerateBody";
    case ErrorKind::BadExponents: return "BadExponents";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::ZeroInBall: return "ZeroInBall";
    case ErrorKind::ShapeUnsupported: return "ShapeUnsupported";
    case ErrorKind::ExtensionUnavailable: return "ExtensionUnavailable";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

mpfr_prec_t initial_precision()
{
    if (const char* env = std::getenv("TAMEBOUNDS_PRECISION_BITS")) {
        long bits = std::strtol(env, nullptr, 10);
        if (bits >= 64 && bits <= 1 << 16) {
            return static_cast<mpfr_prec_t>(bits);
        }
    }
    return 128;
}

std::atomic<long>& precision_slot()
{
    static std::atomic<long> slot{static_cast<long>(initial_precision())};
    return slot;
}

std::atomic<long>& cap_slot()
{
    static std::atomic<long> slot{4096};
    return slot;
}

// Product rounded in direction `rnd`, with 0 * inf := 0.
void mul_rounded(mpfr_ptr out, mpfr_srcptr a, mpfr_srcptr b, mpfr_rnd_t rnd)
{
    if (mpfr_zero_p(a) || mpfr_zero_p(b)) {
        mpfr_set_zero(out, 1);
        return;
    }
    mpfr_mul(out, a, b, rnd);
}

} // namespace

mpfr_prec_t default_precision() { return static_cast<mpfr_prec_t>(precision_slot().load()); }
void set_default_precision(mpfr_prec_t bits) { precision_slot().store(static_cast<long>(bits)); }
mpfr_prec_t precision_cap() { return static_cast<mpfr_prec_t>(cap_slot().load()); }
void set_precision_cap(mpfr_prec_t bits) { cap_slot().store(static_cast<long>(bits)); }

Enclosure::Enclosure(mpfr_prec_t prec) : prec_(prec)
{
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(const Enclosure& other) : prec_(other.prec_)
{
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure&& other) noexcept : Enclosure(other) {}

Enclosure& Enclosure::operator=(const Enclosure& other)
{
    if (this != &other) {
        prec_ = other.prec_;
        mpfr_set_prec(lo_, prec_);
        mpfr_set_prec(hi_, prec_);
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Enclosure& Enclosure::operator=(Enclosure&& other) noexcept
{
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        std::swap(prec_, other.prec_);
    }
    return *this;
}

Enclosure::~Enclosure()
{
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Enclosure Enclosure::exact(const mpq_class& q, mpfr_prec_t prec)
{
    Enclosure r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::exact(long n, mpfr_prec_t prec)
{
    Enclosure r(prec);
    mpfr_set_si(r.lo_, n, MPFR_RNDD);
    mpfr_set_si(r.hi_, n, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::from_double(double x, mpfr_prec_t prec)
{
    return between(x, x, prec);
}

Enclosure Enclosure::between(double lo, double hi, mpfr_prec_t prec)
{
    Enclosure r(prec);
    mpfr_set_d(r.lo_, lo, MPFR_RNDD);
    mpfr_set_d(r.hi_, hi, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::infinity(mpfr_prec_t prec)
{
    Enclosure r(prec);
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, 1);
    return r;
}

Enclosure Enclosure::e(mpfr_prec_t prec)
{
    Enclosure r(prec);
    mpfr_set_ui(r.lo_, 1, MPFR_RNDN);
    mpfr_set_ui(r.hi_, 1, MPFR_RNDN);
    mpfr_exp(r.lo_, r.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, r.hi_, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::pi(mpfr_prec_t prec)
{
    Enclosure r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::euler_gamma(mpfr_prec_t prec)
{
    Enclosure r(prec);
    mpfr_const_euler(r.lo_, MPFR_RNDD);
    mpfr_const_euler(r.hi_, MPFR_RNDU);
    return r;
}

double Enclosure::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Enclosure::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Enclosure::mid() const
{
    if (mpfr_inf_p(hi_) || mpfr_inf_p(lo_)) {
        return mpfr_inf_p(hi_) ? upper() : lower();
    }
    mpfr_t m;
    mpfr_init2(m, prec_ + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

bool Enclosure::is_exact() const { return mpfr_equal_p(lo_, hi_) != 0; }
bool Enclosure::upper_is_infinite() const { return mpfr_inf_p(hi_) != 0; }
bool Enclosure::lower_is_infinite() const { return mpfr_inf_p(lo_) != 0; }

bool Enclosure::contains_zero() const
{
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Enclosure::contains(const mpq_class& q) const
{
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Enclosure::contains(const Enclosure& other) const
{
    return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool Enclosure::certainly_less(const Enclosure& other) const
{
    return mpfr_less_p(hi_, other.lo_) != 0;
}

bool Enclosure::certainly_less_equal(const Enclosure& other) const
{
    return mpfr_lessequal_p(hi_, other.lo_) != 0;
}

std::optional<mpz_class> Enclosure::decided_floor() const
{
    if (!mpfr_number_p(lo_) || !mpfr_number_p(hi_)) {
        return std::nullopt;
    }
    mpz_class a;
    mpz_class b;
    mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDD);
    mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
    if (a != b) {
        return std::nullopt;
    }
    return a;
}

std::optional<mpz_class> Enclosure::decided_ceil() const
{
    if (!mpfr_number_p(lo_) || !mpfr_number_p(hi_)) {
        return std::nullopt;
    }
    mpz_class a;
    mpz_class b;
    mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDU);
    mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDU);
    if (a != b) {
        return std::nullopt;
    }
    return a;
}

Enclosure Enclosure::hull(const Enclosure& other) const
{
    Enclosure r(std::max(prec_, other.prec_));
    mpfr_min(r.lo_, lo_, other.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, hi_, other.hi_, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::clamp_nonnegative() const
{
    Enclosure r(*this);
    if (mpfr_sgn(r.lo_) < 0) {
        mpfr_set_zero(r.lo_, 1);
    }
    if (mpfr_sgn(r.hi_) < 0) {
        mpfr_set_zero(r.hi_, 1);
    }
    return r;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b)
{
    Enclosure r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Enclosure operator-(const Enclosure& a, const Enclosure& b)
{
    Enclosure r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Enclosure operator-(const Enclosure& a)
{
    Enclosure r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
}

Enclosure operator*(const Enclosure& a, const Enclosure& b)
{
    const mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    Enclosure r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : xs) {
        for (auto y : ys) {
            mul_rounded(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo_)) {
                mpfr_set(r.lo_, t, MPFR_RNDD);
            }
            mul_rounded(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi_)) {
                mpfr_set(r.hi_, t, MPFR_RNDU);
            }
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

Enclosure operator/(const Enclosure& a, const Enclosure& b)
{
    const mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    if (b.contains_zero()) {
        Enclosure r(prec);
        mpfr_set_inf(r.lo_, -1);
        mpfr_set_inf(r.hi_, 1);
        return r;
    }
    Enclosure inv(prec);
    // 1/[lo,hi] = [1/hi, 1/lo] for intervals not containing zero
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
}

Enclosure exp(const Enclosure& a)
{
    Enclosure r(a.prec_);
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Enclosure log(const Enclosure& a)
{
    Enclosure r(a.prec_);
    if (mpfr_sgn(a.lo_) <= 0) {
        mpfr_set_inf(r.lo_, -1);
    } else {
        mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    }
    if (mpfr_sgn(a.hi_) <= 0) {
        mpfr_set_inf(r.hi_, -1);
    } else {
        mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    }
    return r;
}

Enclosure sqrt(const Enclosure& a)
{
    Enclosure c = a.clamp_nonnegative();
    Enclosure r(a.prec_);
    mpfr_sqrt(r.lo_, c.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, c.hi_, MPFR_RNDU);
    return r;
}

Enclosure abs(const Enclosure& a)
{
    if (mpfr_sgn(a.lo_) >= 0) {
        return a;
    }
    if (mpfr_sgn(a.hi_) <= 0) {
        return -a;
    }
    Enclosure r(a.prec_);
    mpfr_set_zero(r.lo_, 1);
    mpfr_t t;
    mpfr_init2(t, a.prec_);
    mpfr_neg(t, a.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, t, a.hi_, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

Enclosure pow(const Enclosure& a, const Enclosure& b)
{
    const mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    Enclosure base = a.clamp_nonnegative();
    Enclosure r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    // x^y is monotone in each argument on x >= 0, so the extremes sit at corners.
    mpfr_srcptr xs[2] = {base.lo_, base.hi_};
    mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : xs) {
        for (auto y : ys) {
            mpfr_pow(t, x, y, MPFR_RNDD);
            if (mpfr_nan_p(t)) {
                mpfr_set_zero(t, 1);
            }
            if (first || mpfr_less_p(t, r.lo_)) {
                mpfr_set(r.lo_, t, MPFR_RNDD);
            }
            mpfr_pow(t, x, y, MPFR_RNDU);
            if (mpfr_nan_p(t)) {
                mpfr_set_inf(t, 1);
            }
            if (first || mpfr_greater_p(t, r.hi_)) {
                mpfr_set(r.hi_, t, MPFR_RNDU);
            }
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

Enclosure pow(const Enclosure& a, long n)
{
    if (n == 0) {
        return Enclosure::exact(1L, a.prec_);
    }
    if (n < 0) {
        return Enclosure::exact(1L, a.prec_) / pow(a, -n);
    }
    Enclosure result = Enclosure::exact(1L, a.prec_);
    Enclosure base = a;
    long k = n;
    // Square-and-multiply; even powers of sign-changing intervals are handled
    // by taking |a| first.
    if (n % 2 == 0) {
        base = abs(a);
    }
    while (k > 0) {
        if (k & 1) {
            result = result * base;
        }
        k >>= 1;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

Enclosure root(const Enclosure& a, unsigned long k)
{
    Enclosure c = a.clamp_nonnegative();
    Enclosure r(a.prec_);
    mpfr_rootn_ui(r.lo_, c.lo_, k, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, c.hi_, k, MPFR_RNDU);
    return r;
}

Enclosure min(const Enclosure& a, const Enclosure& b)
{
    Enclosure r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Enclosure max(const Enclosure& a, const Enclosure& b)
{
    Enclosure r(std::max(a.prec_, b.prec_));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

std::string Enclosure::to_string(int digits) const
{
    char* lo = nullptr;
    char* hi = nullptr;
    mpfr_asprintf(&lo, "%.*RDg", digits, lo_);
    mpfr_asprintf(&hi, "%.*RUg", digits, hi_);
    std::string out = "[" + std::string(lo) + "," + std::string(hi) + "]";
    mpfr_free_str(lo);
    mpfr_free_str(hi);
    return out;
}

mpq_class rational_from_double(double x)
{
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::DomainError, "non-finite double has no rational value");
    }
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

mpq_class parse_rational(const std::string& raw)
{
    std::string text;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            text.push_back(c);
        }
    }
    if (text.empty()) {
        throw Error(ErrorKind::ParseError, "empty number");
    }
    if (auto slash = text.find('/'); slash != std::string::npos) {
        mpq_class num = parse_rational(text.substr(0, slash));
        mpq_class den = parse_rational(text.substr(slash + 1));
        if (den == 0) {
            throw Error(ErrorKind::ParseError, "zero denominator in '" + raw + "'");
        }
        mpq_class q = num / den;
        q.canonicalize();
        return q;
    }
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long scale = 0;
    bool seen_dot = false;
    bool any_digit = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_dot) {
                --scale;
            }
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any_digit) {
        throw Error(ErrorKind::ParseError, "no digits in '" + raw + "'");
    }
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') {
            throw Error(ErrorKind::ParseError, "unexpected character in '" + raw + "'");
        }
        std::string exponent = text.substr(i + 1);
        if (exponent.empty()) {
            throw Error(ErrorKind::ParseError, "empty exponent in '" + raw + "'");
        }
        std::size_t used = 0;
        long ex = 0;
        try {
            ex = std::stol(exponent, &used);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "bad exponent in '" + raw + "'");
        }
        if (used != exponent.size() || ex > 100000 || ex < -100000) {
            throw Error(ErrorKind::ParseError, "bad exponent in '" + raw + "'");
        }
        scale += ex;
    }
    mpz_class mantissa(digits, 10);
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale < 0 ? mpq_class(mantissa, ten_pow) : mpq_class(mantissa * ten_pow);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

} // namespace tamebounds
