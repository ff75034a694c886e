#include "tamebounds/ext_real.hpp"

namespace tamebounds {

ExtReal::ExtReal(const Real& r) : value_(r)
{
    if (r.is_rational() && *r.rational() < 0) {
        throw Error(ErrorKind::DomainError, "ExtReal must be nonnegative");
    }
}

const Real& ExtReal::value() const
{
    if (!value_) {
        throw Error(ErrorKind::DomainError, "value() of INF");
    }
    return *value_;
}

ExtReal ExtReal::reciprocal() const
{
    if (is_inf()) {
        return ExtReal(Real(0L));
    }
    if (value_->is_rational() && *value_->rational() == 0) {
        return inf();
    }
    return ExtReal(Real(1L) / *value_);
}

Enclosure ExtReal::enclose(mpfr_prec_t prec) const
{
    return is_inf() ? Enclosure::infinity(prec) : value_->enclose(prec);
}

std::string ExtReal::to_string() const
{
    return is_inf() ? "INF" : value_->enclose().to_string();
}

ExtReal operator+(const ExtReal& a, const ExtReal& b)
{
    if (a.is_inf() || b.is_inf()) {
        return ExtReal::inf();
    }
    return ExtReal(*a.value_ + *b.value_);
}

ExtReal operator*(const ExtReal& a, const ExtReal& b)
{
    auto is_zero = [](const ExtReal& x) {
        return !x.is_inf() && x.value_->is_rational() && *x.value_->rational() == 0;
    };
    if (a.is_inf() || b.is_inf()) {
        if (is_zero(a) || is_zero(b)) {
            throw Error(ErrorKind::DomainError, "0 * INF is undefined");
        }
        return ExtReal::inf();
    }
    return ExtReal(*a.value_ * *b.value_);
}

} // namespace tamebounds
