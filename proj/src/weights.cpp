#include "tamebounds/weights.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace tamebounds {

namespace {

constexpr std::size_t kExactBitLimit = 4096;
constexpr std::uint64_t kDirectTerms = 4096;

bool positive(const Real& x)
{
    if (x.is_rational()) {
        return *x.rational() > 0;
    }
    return compare(x, Real(0L)) > 0;
}

std::size_t bits(const mpq_class& q)
{
    return mpz_sizeinbase(q.get_den_mpz_t(), 2) + mpz_sizeinbase(q.get_num_mpz_t(), 2);
}

mpq_class rational_power(const mpq_class& base, std::uint64_t k)
{
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), k);
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

Enclosure enc_index(std::uint64_t j, mpfr_prec_t prec)
{
    return Enclosure::exact(mpq_class(mpz_class(std::to_string(j))), prec);
}

// Running sum kept exactly while the rationals stay small, always enclosed.
struct Accumulator {
    std::optional<mpq_class> exact = mpq_class(0);
    Enclosure enc;

    explicit Accumulator(mpfr_prec_t prec) : enc(Enclosure::exact(0L, prec)) {}

    void add(const std::optional<mpq_class>& q, const Enclosure& e)
    {
        if (exact && q) {
            *exact += *q;
            if (bits(*exact) > kExactBitLimit) {
                exact.reset();
            }
        } else {
            exact.reset();
        }
        enc += e;
    }
};

// 1/mu_j = inv_sc * base(j), with inv_sc = 1/(scale*c).
class Terms {
public:
    Terms(const WeightSpec& mu, mpfr_prec_t prec) : mu_(mu), prec_(prec), inv_sc_(prec)
    {
        if (mu.kind() == WeightKind::Table) {
            inv_sc_exact_ = mpq_class(1);
            inv_sc_ = Enclosure::exact(1L, prec);
        } else {
            if (mu.scale().is_rational()) {
                inv_sc_exact_ = mpq_class(1 / (mu.coefficient() * *mu.scale().rational()));
                inv_sc_ = Enclosure::exact(*inv_sc_exact_, prec);
            } else {
                inv_sc_ = Enclosure::exact(1L, prec) /
                          (Enclosure::exact(mu.coefficient(), prec) * mu.scale().enclose(prec));
            }
        }
    }

    std::pair<std::optional<mpq_class>, Enclosure> term(std::uint64_t j) const
    {
        std::optional<mpq_class> base;
        switch (mu_.kind()) {
        case WeightKind::Table:
            base = 1 / mu_.entries()[j - 1];
            break;
        case WeightKind::Const:
            base = mpq_class(1);
            break;
        case WeightKind::Linear:
            base = mpq_class(mpz_class(1), mpz_class(std::to_string(j)));
            break;
        case WeightKind::Power:
            if (is_integer(mu_.exponent()) && mu_.exponent() >= 0) {
                base = 1 / rational_power(mpq_class(mpz_class(std::to_string(j))),
                                          mu_.exponent().get_num().get_ui());
            }
            break;
        case WeightKind::Geometric:
            if (j <= kDirectTerms) {
                base = 1 / rational_power(mu_.exponent(), j);
            }
            break;
        }
        if (base) {
            if (inv_sc_exact_) {
                mpq_class q = *base * *inv_sc_exact_;
                return {q, Enclosure::exact(q, prec_)};
            }
            return {std::nullopt, Enclosure::exact(*base, prec_) * inv_sc_};
        }
        Enclosure b(prec_);
        if (mu_.kind() == WeightKind::Power) {
            b = Enclosure::exact(1L, prec_) /
                pow(enc_index(j, prec_), Enclosure::exact(mu_.exponent(), prec_));
        } else {
            b = pow(Enclosure::exact(mu_.exponent(), prec_), -static_cast<long>(j));
        }
        return {std::nullopt, b * inv_sc_};
    }

    const Enclosure& inv_sc() const { return inv_sc_; }
    const std::optional<mpq_class>& inv_sc_exact() const { return inv_sc_exact_; }

private:
    const WeightSpec& mu_;
    mpfr_prec_t prec_;
    Enclosure inv_sc_;
    std::optional<mpq_class> inv_sc_exact_;
};

// H_n enclosure: direct summation for small n, Euler-Maclaurin bracket above.
Enclosure harmonic(std::uint64_t n, mpfr_prec_t prec)
{
    if (n <= kDirectTerms) {
        Enclosure s = Enclosure::exact(0L, prec);
        Enclosure one = Enclosure::exact(1L, prec);
        for (std::uint64_t j = 1; j <= n; ++j) {
            s += one / Enclosure::exact(static_cast<long>(j), prec);
        }
        return s;
    }
    Enclosure x = enc_index(n, prec);
    Enclosure one = Enclosure::exact(1L, prec);
    Enclosure x2 = x * x;
    Enclosure x4 = x2 * x2;
    Enclosure base = log(x) + Enclosure::euler_gamma(prec) + one / (Enclosure::exact(2L, prec) * x) -
                     one / (Enclosure::exact(12L, prec) * x2) +
                     one / (Enclosure::exact(120L, prec) * x4);
    Enclosure lower = base - one / (Enclosure::exact(252L, prec) * x4 * x2);
    return lower.hull(base);
}

// integral_a^b x^{-s} dx, b may be +inf (only for s > 1).
Enclosure power_integral(const Enclosure& a, const std::optional<Enclosure>& b, const mpq_class& s,
                         mpfr_prec_t prec)
{
    if (s == 1) {
        return log(*b) - log(a);
    }
    Enclosure one_minus_s = Enclosure::exact(mpq_class(1 - s), prec);
    Enclosure fa = pow(a, one_minus_s);
    Enclosure fb = b ? pow(*b, one_minus_s) : Enclosure::exact(0L, prec);
    return (fb - fa) / one_minus_s;
}

// sum_{j=m}^{hi} j^{-s} for s > 0 over a long range, via convexity:
// trapezoid below, midpoint rule above. hi = nullopt means infinity (s > 1).
Enclosure power_range_bound(std::uint64_t m, std::optional<std::uint64_t> hi, const mpq_class& s,
                            mpfr_prec_t prec)
{
    Enclosure em = enc_index(m, prec);
    Enclosure half = Enclosure::exact(mpq_class(1, 2), prec);
    Enclosure es = Enclosure::exact(s, prec);
    Enclosure fm = Enclosure::exact(1L, prec) / pow(em, es);
    Enclosure lower(prec);
    Enclosure upper(prec);
    if (hi) {
        Enclosure eh = enc_index(*hi, prec);
        Enclosure fh = Enclosure::exact(1L, prec) / pow(eh, es);
        lower = power_integral(em, eh, s, prec) + half * (fm + fh);
        upper = power_integral(em - half, eh + half, s, prec);
    } else {
        lower = power_integral(em, std::nullopt, s, prec) + half * fm;
        upper = power_integral(em - half, std::nullopt, s, prec);
    }
    return lower.hull(upper).clamp_nonnegative();
}

std::uint64_t effective_last(const WeightSpec& mu, std::uint64_t hi)
{
    return mu.last_finite().is_inf() ? hi : std::min(hi, mu.last_finite().get());
}

// Sigma over [m, hi], 1 <= m <= hi finite, all indices finite entries.
SumResult finite_sum(const WeightSpec& mu, std::uint64_t m, std::uint64_t hi, mpfr_prec_t prec)
{
    Terms terms(mu, prec);
    std::uint64_t count = hi - m + 1;
    SumResult out{std::nullopt, Enclosure::exact(0L, prec), false};
    auto scaled = [&](const std::optional<mpq_class>& q, const Enclosure& e) {
        if (q && terms.inv_sc_exact()) {
            mpq_class v = *q * *terms.inv_sc_exact();
            out.exact = v;
            out.enclosure = Enclosure::exact(v, prec);
        } else {
            out.enclosure = e * terms.inv_sc();
        }
    };
    switch (mu.kind()) {
    case WeightKind::Const:
        scaled(mpq_class(mpz_class(std::to_string(count))), enc_index(count, prec));
        return out;
    case WeightKind::Geometric:
        if (hi <= kDirectTerms) {
            const mpq_class& r = mu.exponent();
            mpq_class v = (1 / rational_power(r, m) - 1 / rational_power(r, hi + 1)) / (1 - 1 / r);
            scaled(v, Enclosure::exact(v, prec));
        } else {
            Enclosure r = Enclosure::exact(mu.exponent(), prec);
            Enclosure one = Enclosure::exact(1L, prec);
            Enclosure v = (pow(r, -static_cast<long>(m)) - pow(r, -static_cast<long>(hi + 1))) /
                          (one - one / r);
            scaled(std::nullopt, v.clamp_nonnegative());
        }
        return out;
    case WeightKind::Linear:
        if (count > kDirectTerms) {
            scaled(std::nullopt, (harmonic(hi, prec) - harmonic(m - 1, prec)).clamp_nonnegative());
            return out;
        }
        break;
    case WeightKind::Power:
        if (count > 8 * kDirectTerms && mu.exponent() > 0) {
            std::uint64_t split = m + kDirectTerms;
            Accumulator head(prec);
            for (std::uint64_t j = m; j < split; ++j) {
                auto [q, e] = terms.term(j);
                head.add(q, e);
            }
            Enclosure rest = power_range_bound(split, hi, mu.exponent(), prec) * terms.inv_sc();
            out.enclosure = head.enc + rest;
            return out;
        }
        break;
    case WeightKind::Table:
        break;
    }
    Accumulator acc(prec);
    for (std::uint64_t j = m; j <= hi; ++j) {
        auto [q, e] = terms.term(j);
        acc.add(q, e);
    }
    out.exact = acc.exact;
    out.enclosure = acc.exact ? Enclosure::exact(*acc.exact, prec) : acc.enc;
    return out;
}

bool diverges(const WeightSpec& mu)
{
    if (!mu.last_finite().is_inf()) {
        return false;
    }
    switch (mu.kind()) {
    case WeightKind::Const:
    case WeightKind::Linear:
        return true;
    case WeightKind::Power:
        return mu.exponent() <= 1;
    default:
        return false;
    }
}

// Sigma_mu(m, inf) for an untruncated convergent closed form.
SumResult convergent_tail(const WeightSpec& mu, std::uint64_t m, mpfr_prec_t prec)
{
    Terms terms(mu, prec);
    SumResult out{std::nullopt, Enclosure(prec), false};
    if (mu.kind() == WeightKind::Geometric) {
        const mpq_class& r = mu.exponent();
        if (m <= kDirectTerms) {
            mpq_class v = 1 / (rational_power(r, m - 1) * (r - 1));
            if (terms.inv_sc_exact()) {
                out.exact = v * *terms.inv_sc_exact();
                out.enclosure = Enclosure::exact(*out.exact, prec);
            } else {
                out.enclosure = Enclosure::exact(v, prec) * terms.inv_sc();
            }
        } else {
            Enclosure er = Enclosure::exact(r, prec);
            out.enclosure = pow(er, -static_cast<long>(m - 1)) /
                            (er - Enclosure::exact(1L, prec)) * terms.inv_sc();
        }
        return out;
    }
    // Power with s > 1: direct head, convexity bounds for the rest.
    std::uint64_t direct = kDirectTerms * static_cast<std::uint64_t>(std::max<mpfr_prec_t>(1, prec / 128));
    Accumulator head(prec);
    std::uint64_t split = m + direct;
    for (std::uint64_t j = m; j < split; ++j) {
        auto [q, e] = terms.term(j);
        head.add(q, e);
    }
    out.enclosure = head.enc + power_range_bound(split, std::nullopt, mu.exponent(), prec) * terms.inv_sc();
    return out;
}

Real mul_e(const Real& a) { return a * Real::e(); }

std::string format_q(const mpq_class& q) { return q.get_str(); }

} // namespace

const char* to_string(WeightKind kind)
{
    switch (kind) {
    case WeightKind::Table: return "table";
    case WeightKind::Const: return "const";
    case WeightKind::Linear: return "linear";
    case WeightKind::Power: return "power";
    case WeightKind::Geometric: return "geom";
    }
    return "?";
}

WeightSpec::WeightSpec(WeightKind kind, mpq_class c, mpq_class s, std::vector<mpq_class> table,
                       Real scale, ExtNat last)
    : kind_(kind), c_(std::move(c)), s_(std::move(s)), table_(std::move(table)), scale_(std::move(scale)),
      last_(last)
{
}

WeightSpec WeightSpec::table(std::vector<mpq_class> entries)
{
    if (entries.empty()) {
        throw Error(ErrorKind::InvalidRange, "table weight needs at least one entry");
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries[i].canonicalize();
        if (entries[i] <= 0) {
            throw Error(ErrorKind::InvalidRange, "weight entries must be positive");
        }
        if (i > 0 && entries[i] < entries[i - 1]) {
            throw Error(ErrorKind::InvalidRange, "weight entries must be increasing");
        }
    }
    std::uint64_t n = entries.size();
    return WeightSpec(WeightKind::Table, 1, 0, std::move(entries), Real(1L), ExtNat::of(n));
}

namespace {

std::pair<mpq_class, Real> split_coefficient(const Real& c)
{
    if (!positive(c)) {
        throw Error(ErrorKind::InvalidRange, "weight coefficient must be positive");
    }
    if (c.is_rational()) {
        return {*c.rational(), Real(1L)};
    }
    return {mpq_class(1), c};
}

} // namespace

WeightSpec WeightSpec::constant(const Real& c)
{
    auto [q, scale] = split_coefficient(c);
    return WeightSpec(WeightKind::Const, q, 0, {}, scale, ExtNat::inf());
}

WeightSpec WeightSpec::linear(const Real& c)
{
    auto [q, scale] = split_coefficient(c);
    return WeightSpec(WeightKind::Linear, q, 1, {}, scale, ExtNat::inf());
}

WeightSpec WeightSpec::power(const Real& c, const mpq_class& s)
{
    if (s < 0) {
        throw Error(ErrorKind::InvalidRange, "power weight needs s >= 0");
    }
    auto [q, scale] = split_coefficient(c);
    return WeightSpec(WeightKind::Power, q, s, {}, scale, ExtNat::inf());
}

WeightSpec WeightSpec::geometric(const Real& c, const mpq_class& r)
{
    if (r <= 1) {
        throw Error(ErrorKind::InvalidRange, "geometric weight needs r > 1");
    }
    auto [q, scale] = split_coefficient(c);
    return WeightSpec(WeightKind::Geometric, q, r, {}, scale, ExtNat::inf());
}

WeightSpec WeightSpec::truncated(std::uint64_t n) const
{
    if (n == 0) {
        throw Error(ErrorKind::InvalidRange, "truncation index must be positive");
    }
    WeightSpec out = *this;
    if (last_.is_inf() || n < last_.get()) {
        out.last_ = ExtNat::of(n);
    }
    return out;
}

WeightSpec WeightSpec::untruncated() const
{
    WeightSpec out = *this;
    if (kind_ != WeightKind::Table) {
        out.last_ = ExtNat::inf();
    } else {
        out.last_ = ExtNat::of(table_.size());
    }
    return out;
}

WeightSpec WeightSpec::scaled(const Real& a) const
{
    if (!positive(a)) {
        throw Error(ErrorKind::InvalidRange, "scale factor must be positive");
    }
    WeightSpec out = *this;
    if (a.is_rational() && scale_.is_rational()) {
        const mpq_class& q = *a.rational();
        if (kind_ == WeightKind::Table) {
            for (auto& v : out.table_) {
                v *= q;
            }
        } else {
            out.c_ *= q;
        }
        return out;
    }
    if (kind_ == WeightKind::Table) {
        throw Error(ErrorKind::DomainError, "table weights only scale by rationals");
    }
    out.scale_ = scale_ * a;
    return out;
}

ExtReal WeightSpec::mu(std::uint64_t j) const
{
    if (j == 0) {
        throw Error(ErrorKind::InvalidRange, "weight index starts at 1");
    }
    if (!is_finite_at(j)) {
        return ExtReal::inf();
    }
    Real index(mpq_class(mpz_class(std::to_string(j))));
    switch (kind_) {
    case WeightKind::Table: return ExtReal(Real(table_[j - 1]));
    case WeightKind::Const: return ExtReal(Real(c_) * scale_);
    case WeightKind::Linear: return ExtReal(Real(c_) * index * scale_);
    case WeightKind::Power:
        if (is_integer(s_)) {
            return ExtReal(Real(c_ * rational_power(mpq_class(index.rational()->get_num()),
                                                    s_.get_num().get_ui())) *
                           scale_);
        }
        return ExtReal(Real(c_) * scale_ *
                       Real::lazy([j, s = s_](mpfr_prec_t prec) {
                           return pow(enc_index(j, prec), Enclosure::exact(s, prec));
                       },
                                  std::to_string(j) + "^" + s_.get_str()));
    case WeightKind::Geometric: return ExtReal(Real(c_ * rational_power(s_, j)) * scale_);
    }
    return ExtReal::inf();
}

std::optional<mpq_class> WeightSpec::reciprocal_exact(std::uint64_t j) const
{
    if (!is_finite_at(j)) {
        return mpq_class(0);
    }
    Terms terms(*this, 64);
    return terms.term(j).first;
}

Enclosure WeightSpec::reciprocal(std::uint64_t j, mpfr_prec_t prec) const
{
    if (!is_finite_at(j)) {
        return Enclosure::exact(0L, prec);
    }
    Terms terms(*this, prec);
    return terms.term(j).second;
}

Enclosure WeightSpec::mu_enclosure(std::uint64_t j, mpfr_prec_t prec) const
{
    if (!is_finite_at(j)) {
        return Enclosure::infinity(prec);
    }
    return Enclosure::exact(1L, prec) / reciprocal(j, prec);
}

bool WeightSpec::is_constant_like() const
{
    if (kind_ == WeightKind::Const) {
        return true;
    }
    if (kind_ == WeightKind::Power && s_ == 0) {
        return true;
    }
    if (kind_ == WeightKind::Table) {
        return std::all_of(table_.begin(), table_.end(), [&](const mpq_class& v) { return v == table_[0]; });
    }
    return false;
}

std::string WeightSpec::to_spec() const
{
    std::ostringstream out;
    out << to_string(kind_) << ':';
    switch (kind_) {
    case WeightKind::Table:
        for (std::size_t i = 0; i < table_.size(); ++i) {
            out << (i ? "," : "") << format_q(table_[i]);
        }
        break;
    case WeightKind::Const:
    case WeightKind::Linear:
        out << format_q(c_);
        break;
    case WeightKind::Power:
    case WeightKind::Geometric:
        out << format_q(c_) << ',' << format_q(s_);
        break;
    }
    if (!scale_.is_rational() || *scale_.rational() != 1) {
        out << ";scale=" << scale_.label();
    }
    if (kind_ != WeightKind::Table && !last_.is_inf()) {
        out << '|' << last_.get();
    } else if (kind_ == WeightKind::Table && last_.get() < table_.size()) {
        out << '|' << last_.get();
    }
    return out.str();
}

bool operator==(const WeightSpec& a, const WeightSpec& b)
{
    if (a.kind_ != b.kind_ || a.c_ != b.c_ || a.s_ != b.s_ || a.table_ != b.table_ || !(a.last_ == b.last_)) {
        return false;
    }
    if (a.scale_.is_rational() && b.scale_.is_rational()) {
        return *a.scale_.rational() == *b.scale_.rational();
    }
    return a.scale_.label() == b.scale_.label();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string text) : s_(std::move(text)) {}

    Real parse()
    {
        Real v = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + s_.substr(pos_) + "'");
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw Error(ErrorKind::ParseError, "cannot parse number '" + s_ + "': " + why);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    Real expr()
    {
        Real v = term();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                v = v * term();
            } else if (peek('/')) {
                ++pos_;
                v = v / term();
            } else {
                return v;
            }
        }
    }

    bool factor_starts()
    {
        skip();
        if (pos_ >= s_.size()) {
            return false;
        }
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'e' || c == 'p';
    }

    // Juxtaposed factors multiply: "2e", "3pi".
    Real term()
    {
        bool negative = false;
        if (peek('-')) {
            ++pos_;
            negative = true;
        } else if (peek('+')) {
            ++pos_;
        }
        Real v = factor();
        while (factor_starts()) {
            v = v * factor();
        }
        return negative ? Real(0L) - v : v;
    }

    Real factor()
    {
        skip();
        if (pos_ >= s_.size()) {
            fail("unexpected end");
        }
        if (s_[pos_] == '(') {
            ++pos_;
            Real v = expr();
            if (!peek(')')) {
                fail("missing ')'");
            }
            ++pos_;
            return v;
        }
        if (s_.compare(pos_, 2, "pi") == 0) {
            pos_ += 2;
            return Real::pi();
        }
        if (s_[pos_] == 'e') {
            ++pos_;
            return Real::e();
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
            ++pos_;
        }
        // exponent only when digits follow, so "2e" reads as 2*e
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t k = pos_ + 1;
            if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) {
                ++k;
            }
            if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
                pos_ = k;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    ++pos_;
                }
            }
        }
        if (start == pos_) {
            fail("expected a number");
        }
        try {
            return Real(parse_rational(s_.substr(start, pos_ - start)));
        } catch (const Error&) {
            fail("bad literal");
        }
    }

    std::string s_;
    std::size_t pos_ = 0;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        }
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

mpq_class parse_exact(const std::string& text)
{
    Real r = parse_real(text);
    if (!r.is_rational()) {
        throw Error(ErrorKind::ParseError, "expected a rational number, got '" + text + "'");
    }
    return *r.rational();
}

} // namespace

Real parse_real(const std::string& text) { return ExprParser(text).parse(); }

WeightSpec parse_weight(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorKind::ParseError, "weight spec needs '<kind>:<params>': '" + text + "'");
    }
    std::string kind = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    std::optional<std::uint64_t> trunc;
    if (auto bar = rest.find('|'); bar != std::string::npos) {
        try {
            trunc = std::stoull(rest.substr(bar + 1));
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "bad truncation index in '" + text + "'");
        }
        rest = rest.substr(0, bar);
    }
    auto args = split(rest, ',');
    auto need = [&](std::size_t n) {
        if (args.size() != n) {
            throw Error(ErrorKind::ParseError, "weight '" + kind + "' takes " + std::to_string(n) +
                                                   " parameter(s): '" + text + "'");
        }
    };
    std::optional<WeightSpec> w;
    try {
        if (kind == "const") {
            need(1);
            w = WeightSpec::constant(parse_real(args[0]));
        } else if (kind == "linear") {
            need(1);
            w = WeightSpec::linear(parse_real(args[0]));
        } else if (kind == "power") {
            need(2);
            w = WeightSpec::power(parse_real(args[0]), parse_exact(args[1]));
        } else if (kind == "geom") {
            need(2);
            w = WeightSpec::geometric(parse_real(args[0]), parse_exact(args[1]));
        } else if (kind == "table") {
            std::vector<mpq_class> v;
            for (const auto& a : args) {
                v.push_back(parse_exact(a));
            }
            w = WeightSpec::table(std::move(v));
        } else {
            throw Error(ErrorKind::ParseError, "unknown weight kind '" + kind + "'");
        }
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::ParseError) {
            throw;
        }
        throw Error(ErrorKind::ParseError, std::string(err.what()) + " in '" + text + "'");
    }
    if (trunc) {
        return w->truncated(*trunc);
    }
    return *w;
}

// ---------------------------------------------------------------------------

FullWeight::FullWeight(WeightSpec mu_, mpq_class m0_) : mu(std::move(mu_)), m0(std::move(m0_))
{
    if (m0 <= 0) {
        throw Error(ErrorKind::InvalidRange, "M0 must be positive");
    }
}

ExtReal FullWeight::M(std::uint64_t j) const
{
    ExtReal out{Real(m0)};
    for (std::uint64_t i = 1; i <= j; ++i) {
        out = out * mu.mu(i);
        if (out.is_inf()) {
            break;
        }
    }
    return out;
}

Enclosure FullWeight::M_enclosure(std::uint64_t j, mpfr_prec_t prec) const
{
    if (!mu.is_finite_at(j) && j > 0) {
        return Enclosure::infinity(prec);
    }
    Enclosure out = Enclosure::exact(m0, prec);
    for (std::uint64_t i = 1; i <= j; ++i) {
        out *= mu.mu_enclosure(i, prec);
    }
    return out;
}

SumResult sigma(const WeightSpec& mu, std::optional<std::uint64_t> m, std::optional<std::uint64_t> n,
                mpfr_prec_t prec)
{
    if (m && *m == 0) {
        throw Error(ErrorKind::InvalidRange, "sigma needs m >= 1");
    }
    SumResult zero{mpq_class(0), Enclosure::exact(0L, prec), false};
    if (!m || (n && (*n == 0 || *m > *n))) {
        return zero;
    }
    if (!n && mu.last_finite().is_inf()) {
        if (diverges(mu)) {
            return SumResult{std::nullopt, Enclosure::infinity(prec), true};
        }
        return convergent_tail(mu, *m, prec);
    }
    std::uint64_t hi = effective_last(mu, n ? *n : std::numeric_limits<std::uint64_t>::max());
    if (*m > hi) {
        return zero;
    }
    return finite_sum(mu, *m, hi, prec);
}

std::uint64_t j0(const Real& b)
{
    if (!positive(b)) {
        throw Error(ErrorKind::DomainError, "j0 needs b > 0");
    }
    auto clamp = [](const mpz_class& z) -> std::uint64_t { return z <= 0 ? 0 : z.get_ui(); };
    if (b.log_rational()) {
        mpq_class minus_log = -*b.log_rational();
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), minus_log.get_num_mpz_t(), minus_log.get_den_mpz_t());
        return clamp(c);
    }
    if (b.is_rational() && *b.rational() >= 1) {
        return 0;
    }
    return escalate(
        [&](mpfr_prec_t prec) -> std::optional<std::uint64_t> {
            Enclosure l = -log(b.enclose(prec));
            if (l.certainly_less_equal(Enclosure::exact(0L, prec))) {
                return 0;
            }
            if (auto c = l.decided_ceil()) {
                return clamp(*c);
            }
            return std::nullopt;
        },
        "ceil(log(1/b)) undecided for b = " + b.label());
}

ExtNat DegreeResult::degree() const
{
    return status == DegreeStatus::Infinite ? ExtNat::inf() : ExtNat::of(value);
}

namespace {

// sign of q - T (T enclosed at prec), nullopt when not decided.
std::optional<int> sign_against(const std::optional<mpq_class>& q, const Enclosure& qe, const Real& target,
                                mpfr_prec_t prec)
{
    if (q && target.is_rational()) {
        return cmp(*q, *target.rational()) < 0 ? -1 : (*q == *target.rational() ? 0 : 1);
    }
    Enclosure t = target.enclose(prec);
    Enclosure v = q ? Enclosure::exact(*q, prec) : qe;
    if (v.certainly_less(t)) {
        return -1;
    }
    if (t.certainly_less(v)) {
        return 1;
    }
    if (v.is_exact() && t.is_exact() && v.certainly_less_equal(t) && t.certainly_less_equal(v)) {
        return 0;
    }
    return std::nullopt;
}

std::optional<DegreeResult> degree_const(const WeightSpec& mu, const Real& scale, std::uint64_t j0v,
                                         const Real& target, mpfr_prec_t prec, std::optional<Enclosure>& straddle)
{
    // k/(s c) < a e  <=>  k < X := a s c e
    Real x = target * mu.scale() * Real(mu.coefficient());
    std::optional<std::uint64_t> k;
    if (x.is_rational()) {
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), x.rational()->get_num_mpz_t(), x.rational()->get_den_mpz_t());
        k = c <= 0 ? 0 : c.get_ui() - 1;
    } else if (x.log_rational() && *x.log_rational() == 0) {
        k = 0;
    } else {
        Enclosure xe = x.enclose(prec);
        auto f = xe.decided_floor();
        auto fail = [&](const mpz_class& count) {
            // partial sum with `count` terms, the one that cannot be compared with e
            Real terms_sum = Real(mpq_class(count)) / (scale * mu.scale() * Real(mu.coefficient()));
            straddle = terms_sum.enclose(prec);
            return std::nullopt;
        };
        if (!f) {
            return fail(mpz_class(xe.decided_ceil().value_or(mpz_class(static_cast<long>(xe.mid())))));
        }
        Enclosure fe = Enclosure::exact(mpq_class(*f), prec);
        if (!fe.certainly_less(xe)) {
            return fail(*f);  // X could equal the integer floor
        }
        k = *f <= 0 ? 0 : f->get_ui();
    }
    DegreeResult r;
    r.j0 = j0v;
    Terms terms(mu, prec);
    if (!mu.last_finite().is_inf() && j0v + *k >= mu.last_finite().get()) {
        std::uint64_t last = mu.last_finite().get();
        r.status = DegreeStatus::Infinite;
        r.decided_at = last;
        std::uint64_t count = last > j0v ? last - j0v : 0;
        r.partial_sum = enc_index(count, prec) * terms.inv_sc() / scale.enclose(prec);
        return r;
    }
    r.status = DegreeStatus::Finite;
    r.value = j0v + *k;
    r.decided_at = r.value + 1;
    r.partial_sum = enc_index(*k + 1, prec) * terms.inv_sc() / scale.enclose(prec);
    return r;
}

// Largest n >= m-1 with H_n - H_{m-1} < U, beyond the direct range.
std::optional<DegreeResult> degree_linear_gallop(const WeightSpec& mu, const Real& scale, std::uint64_t j0v,
                                                 std::uint64_t start, const Real& target, mpfr_prec_t prec)
{
    Terms terms(mu, prec);
    Enclosure t = target.enclose(prec);
    Enclosure base = harmonic(j0v, prec);
    std::optional<std::uint64_t> last;
    if (!mu.last_finite().is_inf()) {
        last = mu.last_finite().get();
    }
    auto d = [&](std::uint64_t n) { return (harmonic(n, prec) - base) * terms.inv_sc(); };
    // invariant: D(lo) < T
    std::uint64_t lo = start;
    std::uint64_t hi = start;
    const std::uint64_t ceiling = std::uint64_t{1} << 62;
    for (;;) {
        std::uint64_t next = hi > ceiling / 2 ? ceiling : hi * 2;
        if (last && next >= *last) {
            next = *last;
        }
        Enclosure v = d(next);
        if (v.certainly_less(t)) {
            lo = next;
            if ((last && next == *last) || next == ceiling) {
                DegreeResult r;
                r.j0 = j0v;
                r.status = last && next == *last ? DegreeStatus::Infinite : DegreeStatus::Unresolved;
                r.value = next;
                r.decided_at = next;
                r.partial_sum = v / scale.enclose(prec);
                return r;
            }
            hi = next;
            continue;
        }
        if (!t.certainly_less_equal(v)) {
            return std::nullopt;
        }
        hi = next;
        break;
    }
    // D(lo) < T <= D(hi)
    Enclosure at_hi = d(hi);
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        Enclosure v = d(mid);
        if (v.certainly_less(t)) {
            lo = mid;
        } else if (t.certainly_less_equal(v)) {
            hi = mid;
            at_hi = v;
        } else {
            return std::nullopt;
        }
    }
    DegreeResult r;
    r.j0 = j0v;
    r.status = DegreeStatus::Finite;
    r.value = lo;
    r.decided_at = hi;
    r.partial_sum = at_hi / scale.enclose(prec);
    return r;
}

std::optional<DegreeResult> degree_attempt(const WeightSpec& mu, const Real& scale, std::uint64_t j0v,
                                           const Real& target, const DegreeOptions& options,
                                           mpfr_prec_t prec, std::optional<Enclosure>& straddle)
{
    DegreeResult r;
    r.j0 = j0v;
    Enclosure sc = scale.enclose(prec);
    std::uint64_t m = j0v + 1;
    if (!mu.is_finite_at(m)) {
        r.status = DegreeStatus::Infinite;
        r.partial_sum = Enclosure::exact(0L, prec);
        r.decided_at = j0v;
        return r;
    }
    if (mu.kind() == WeightKind::Const || (mu.kind() == WeightKind::Power && mu.exponent() == 0)) {
        return degree_const(mu, scale, j0v, target, prec, straddle);
    }
    if (mu.last_finite().is_inf() && !diverges(mu)) {
        SumResult tail = convergent_tail(mu, m, prec);
        auto s = sign_against(tail.exact, tail.enclosure, target, prec);
        if (!s) {
            straddle = tail.enclosure / sc;
            return std::nullopt;
        }
        if (*s < 0) {
            r.status = DegreeStatus::Infinite;
            r.partial_sum = tail.enclosure / sc;
            r.decided_at = m;
            return r;
        }
    }
    Terms terms(mu, prec);
    Accumulator acc(prec);
    std::uint64_t n = m;
    for (std::uint64_t count = 0;; ++count, ++n) {
        if (!mu.is_finite_at(n)) {
            r.status = DegreeStatus::Infinite;
            r.value = 0;
            r.decided_at = n - 1;
            r.partial_sum = acc.enc / sc;
            return r;
        }
        if (mu.kind() == WeightKind::Linear && count == kDirectTerms) {
            return degree_linear_gallop(mu, scale, j0v, n - 1, target, prec);
        }
        if (count >= options.max_terms) {
            r.status = DegreeStatus::Unresolved;
            r.value = n - 1;
            r.decided_at = n - 1;
            r.partial_sum = acc.enc / sc;
            return r;
        }
        auto [q, e] = terms.term(n);
        acc.add(q, e);
        auto s = sign_against(acc.exact, acc.enc, target, prec);
        if (!s) {
            straddle = acc.enc / sc;
            return std::nullopt;
        }
        if (*s >= 0) {
            r.status = DegreeStatus::Finite;
            r.value = n - 1;
            r.decided_at = n;
            r.partial_sum = (acc.exact ? Enclosure::exact(*acc.exact, prec) : acc.enc) / sc;
            return r;
        }
    }
}

} // namespace

DegreeResult degree(const WeightSpec& mu, const Real& scale, const Real& b, const DegreeOptions& options)
{
    if (!positive(scale)) {
        throw Error(ErrorKind::InvalidRange, "degree needs scale > 0");
    }
    std::uint64_t j0v = j0(b);
    Real target = mul_e(scale);
    std::optional<Enclosure> straddle;
    try {
        return escalate(
            [&](mpfr_prec_t prec) { return degree_attempt(mu, scale, j0v, target, options, prec, straddle); },
            "partial sum");
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BoundaryUndecidable) {
            throw;
        }
        std::string what = "partial sum of (" + scale.label() + ") " + mu.to_spec() + " cannot be separated from e";
        if (straddle) {
            throw Error(ErrorKind::BoundaryUndecidable, what, straddle->lower(), straddle->upper());
        }
        throw Error(ErrorKind::BoundaryUndecidable, what);
    }
}

int compare_tail(const WeightSpec& mu, std::uint64_t m, const Real& target)
{
    if (m == 0) {
        throw Error(ErrorKind::InvalidRange, "tail index must be >= 1");
    }
    if (diverges(mu)) {
        return 1;
    }
    return escalate(
        [&](mpfr_prec_t prec) -> std::optional<int> {
            SumResult s = sigma(mu, m, std::nullopt, prec);
            return sign_against(s.exact, s.enclosure, target, prec);
        },
        "tail sum of " + mu.to_spec() + " cannot be separated from " + target.label());
}

AdmissibleData admissible_data(const FullWeight& w, const Real& delta, const Real& b, bool halving)
{
    if (!positive(delta) || !positive(b)) {
        throw Error(ErrorKind::InvalidRange, "admissible data needs delta > 0 and b > 0");
    }
    Real reduced = b / Real(halving ? mpq_class(2 * w.m0) : w.m0);
    AdmissibleData out;
    out.j0 = j0(reduced);
    SumResult tail = sigma(w.mu, out.j0 + 1, std::nullopt);
    out.tail = tail.enclosure / delta.enclose(default_precision());
    out.admissible = compare_tail(w.mu, out.j0 + 1, mul_e(delta)) > 0;
    if (out.admissible) {
        DegreeResult d = degree(w.mu, delta, reduced);
        if (!d.finite()) {
            throw Error(ErrorKind::BoundaryUndecidable,
                        "degree of " + w.mu.to_spec() + " not resolved within the iteration cap");
        }
        out.n = d.value + 1;
    }
    return out;
}

QuasianalyticVerdict is_quasianalytic(const WeightSpec& mu)
{
    QuasianalyticVerdict v;
    v.meaningful = mu.last_finite().is_inf();
    v.quasianalytic = diverges(mu);
    return v;
}

bool bump_necessary_condition(const FullWeight& w, const Real& delta, const Real& b)
{
    if (is_quasianalytic(w.mu).quasianalytic) {
        throw Error(ErrorKind::DomainError, "bump condition needs a non-quasianalytic weight");
    }
    if (!positive(delta) || !positive(b)) {
        throw Error(ErrorKind::InvalidRange, "bump condition needs delta > 0 and b > 0");
    }
    std::uint64_t j = j0(b / Real(mpq_class(2 * w.m0)));
    return compare_tail(w.mu, j + 1, mul_e(delta)) <= 0;
}

} // namespace tamebounds
