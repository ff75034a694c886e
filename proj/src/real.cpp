#include "tamebounds/real.hpp"

#include <sstream>

namespace tamebounds {

namespace {

std::optional<mpq_class> exact_root(const mpq_class& q, unsigned long k)
{
    if (q < 0) {
        return std::nullopt;
    }
    mpz_class rn;
    mpz_class rd;
    if (mpz_root(rn.get_mpz_t(), q.get_num_mpz_t(), k) != 0 &&
        mpz_root(rd.get_mpz_t(), q.get_den_mpz_t(), k) != 0) {
        return mpq_class(rn, rd);
    }
    return std::nullopt;
}

mpq_class rational_pow(const mpq_class& q, long n)
{
    mpq_class base = n >= 0 ? q : mpq_class(1 / q);
    unsigned long k = static_cast<unsigned long>(n >= 0 ? n : -n);
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), k);
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

} // namespace

Real::Real(const mpq_class& q)
    : rational_(q), label_(std::make_shared<const std::string>(q.get_str()))
{
    rational_->canonicalize();
    mono_ = Monomial{*rational_, 0};
}

Real Real::parse(const std::string& text) { return Real(parse_rational(text)); }

Real Real::from_monomial(const mpq_class& coef, const mpq_class& exponent)
{
    if (exponent == 0 || coef == 0) {
        return Real(coef);
    }
    Real r;
    r.rational_.reset();
    r.mono_ = Monomial{coef, exponent};
    r.eval_ = std::make_shared<const std::function<Enclosure(mpfr_prec_t)>>([coef, exponent](mpfr_prec_t prec) {
        return Enclosure::exact(coef, prec) * exp(Enclosure::exact(exponent, prec));
    });
    std::string label = "exp(" + exponent.get_str() + ")";
    if (coef != 1) {
        label = coef.get_str() + "*" + label;
    }
    r.label_ = std::make_shared<const std::string>(label);
    return r;
}

Real Real::exp_of(const mpq_class& q) { return from_monomial(1, q); }

Real Real::pi()
{
    return lazy([](mpfr_prec_t prec) { return Enclosure::pi(prec); }, "pi");
}

Real Real::lazy(std::function<Enclosure(mpfr_prec_t)> eval, std::string label)
{
    Real r;
    r.rational_.reset();
    r.mono_.reset();
    r.eval_ = std::make_shared<const std::function<Enclosure(mpfr_prec_t)>>(std::move(eval));
    r.label_ = std::make_shared<const std::string>(std::move(label));
    return r;
}

std::optional<mpq_class> Real::log_rational() const
{
    if (mono_ && mono_->coef == 1) {
        return mono_->exponent;
    }
    return std::nullopt;
}

Enclosure Real::enclose(mpfr_prec_t prec) const
{
    if (rational_) {
        return Enclosure::exact(*rational_, prec);
    }
    return (*eval_)(prec);
}

Real operator*(const Real& a, const Real& b)
{
    if (a.mono_ && b.mono_) {
        return Real::from_monomial(a.mono_->coef * b.mono_->coef, a.mono_->exponent + b.mono_->exponent);
    }
    return Real::lazy([a, b](mpfr_prec_t prec) { return a.enclose(prec) * b.enclose(prec); },
                      "(" + a.label() + "*" + b.label() + ")");
}

Real operator/(const Real& a, const Real& b)
{
    if (b.rational_ && *b.rational_ == 0) {
        throw Error(ErrorKind::DomainError, "division by zero");
    }
    if (a.mono_ && b.mono_) {
        return Real::from_monomial(a.mono_->coef / b.mono_->coef, a.mono_->exponent - b.mono_->exponent);
    }
    return Real::lazy([a, b](mpfr_prec_t prec) { return a.enclose(prec) / b.enclose(prec); },
                      "(" + a.label() + "/" + b.label() + ")");
}

Real operator+(const Real& a, const Real& b)
{
    if (a.rational_ && b.rational_) {
        return Real(mpq_class(*a.rational_ + *b.rational_));
    }
    if (a.mono_ && b.mono_ && a.mono_->exponent == b.mono_->exponent) {
        return Real::from_monomial(a.mono_->coef + b.mono_->coef, a.mono_->exponent);
    }
    return Real::lazy([a, b](mpfr_prec_t prec) { return a.enclose(prec) + b.enclose(prec); },
                      "(" + a.label() + "+" + b.label() + ")");
}

Real operator-(const Real& a, const Real& b)
{
    if (a.rational_ && b.rational_) {
        return Real(mpq_class(*a.rational_ - *b.rational_));
    }
    if (a.mono_ && b.mono_ && a.mono_->exponent == b.mono_->exponent) {
        return Real::from_monomial(a.mono_->coef - b.mono_->coef, a.mono_->exponent);
    }
    return Real::lazy([a, b](mpfr_prec_t prec) { return a.enclose(prec) - b.enclose(prec); },
                      "(" + a.label() + "-" + b.label() + ")");
}

Real sqrt(const Real& a) { return root(a, 2); }

Real root(const Real& a, unsigned long k)
{
    if (a.mono_) {
        if (auto r = exact_root(a.mono_->coef, k)) {
            return Real::from_monomial(*r, a.mono_->exponent / mpq_class(static_cast<long>(k)));
        }
    }
    std::ostringstream label;
    label << "root" << k << "(" << a.label() << ")";
    return Real::lazy([a, k](mpfr_prec_t prec) { return root(a.enclose(prec), k); }, label.str());
}

Real pow(const Real& a, long n)
{
    if (a.mono_) {
        return Real::from_monomial(rational_pow(a.mono_->coef, n), a.mono_->exponent * n);
    }
    return Real::lazy([a, n](mpfr_prec_t prec) { return pow(a.enclose(prec), n); },
                      "(" + a.label() + ")^" + std::to_string(n));
}

int compare(const Real& a, const Real& b)
{
    if (a.rational_ && b.rational_) {
        return cmp(*a.rational_, *b.rational_) < 0 ? -1 : (*a.rational_ == *b.rational_ ? 0 : 1);
    }
    if (a.mono_ && b.mono_ && a.mono_->coef == b.mono_->coef && a.mono_->exponent == b.mono_->exponent) {
        return 0;
    }
    return escalate(
        [&](mpfr_prec_t prec) -> std::optional<int> {
            Enclosure x = a.enclose(prec);
            Enclosure y = b.enclose(prec);
            if (x.certainly_less(y)) {
                return -1;
            }
            if (y.certainly_less(x)) {
                return 1;
            }
            return std::nullopt;
        },
        "cannot separate " + a.label() + " from " + b.label());
}

} // namespace tamebounds
