#ifndef TAMEBOUNDS_POLY_HPP
#define TAMEBOUNDS_POLY_HPP

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "tamebounds/ival.hpp"

namespace tamebounds {

/// Univariate polynomial with exact rational coefficients, lowest degree first.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<mpq_class> coefficients);
    static Poly constant(const mpq_class& c) { return Poly({c}); }
    /// Chebyshev polynomial of the first kind.
    static Poly chebyshev(unsigned n);

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<mpq_class>& coefficients() const { return c_; }
    mpq_class coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : mpq_class(0); }
    const mpq_class& leading() const { return c_.back(); }

    mpq_class operator()(const mpq_class& x) const;
    /// Horner evaluation in interval arithmetic.
    Ival operator()(const Ival& x) const;

    Poly derivative(unsigned k = 1) const;
    /// p(a + b t)
    Poly compose_affine(const mpq_class& a, const mpq_class& b) const;
    Poly monic() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const mpq_class& s, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    std::string to_string() const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

/// Quotient and remainder; throws DomainError for a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic greatest common divisor.
Poly gcd(Poly a, Poly b);
/// Yun's algorithm: p = lc * prod_i f_i^i with f_i square-free and pairwise coprime.
/// Entry i-1 holds f_i.
std::vector<Poly> square_free_decomposition(const Poly& p);

/// Number of distinct real roots in the closed interval [a, b] (p nonzero).
std::size_t count_distinct_roots(const Poly& p, const mpq_class& a, const mpq_class& b);
/// Same, counted with multiplicity.
std::size_t count_roots_with_multiplicity(const Poly& p, const mpq_class& a, const mpq_class& b);

} // namespace tamebounds

#endif
