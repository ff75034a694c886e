#ifndef TAMEBOUNDS_REAL_HPP
#define TAMEBOUNDS_REAL_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "tamebounds/enclosure.hpp"

namespace tamebounds {

/// A real number known well enough to be enclosed at any requested precision.
///
/// Values of the form r * e^L with rational r, L are carried exactly (so
/// 2/e * e == 2 and ceil(log(1/e^-2)) == 2 are decided without rounding).
/// Everything else is an expression re-evaluated when the caller escalates
/// precision.
class Real {
public:
    Real() : Real(mpq_class(0)) {}
    Real(const mpq_class& q);  // NOLINT(google-explicit-constructor)
    Real(long n) : Real(mpq_class(n)) {}  // NOLINT(google-explicit-constructor)

    static Real from_double(double x) { return Real(rational_from_double(x)); }
    static Real parse(const std::string& text);
    /// e^q for rational q.
    static Real exp_of(const mpq_class& q);
    static Real e() { return exp_of(mpq_class(1)); }
    static Real pi();
    /// Arbitrary expression given by an enclosure routine.
    static Real lazy(std::function<Enclosure(mpfr_prec_t)> eval, std::string label);

    Enclosure enclose(mpfr_prec_t prec) const;
    Enclosure enclose() const { return enclose(default_precision()); }

    const std::optional<mpq_class>& rational() const { return rational_; }
    /// log of the value when it is e^L exactly.
    std::optional<mpq_class> log_rational() const;
    bool is_rational() const { return rational_.has_value(); }

    double lower() const { return enclose().lower(); }
    double upper() const { return enclose().upper(); }
    double approx() const { return enclose().mid(); }

    const std::string& label() const { return *label_; }

    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real sqrt(const Real& a);
    friend Real root(const Real& a, unsigned long k);
    friend Real pow(const Real& a, long n);

    /// Certified sign of a - b with precision escalation. Equal rationals give 0;
    /// otherwise throws BoundaryUndecidable if the cap is reached.
    friend int compare(const Real& a, const Real& b);

private:
    struct Monomial {
        mpq_class coef;
        mpq_class exponent;
    };
    static Real from_monomial(const mpq_class& coef, const mpq_class& exponent);

    std::optional<mpq_class> rational_;
    std::optional<Monomial> mono_;
    std::shared_ptr<const std::function<Enclosure(mpfr_prec_t)>> eval_;
    std::shared_ptr<const std::string> label_;
};

} // namespace tamebounds

#endif
