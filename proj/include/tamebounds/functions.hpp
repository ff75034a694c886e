#ifndef TAMEBOUNDS_FUNCTIONS_HPP
#define TAMEBOUNDS_FUNCTIONS_HPP

#include <string>
#include <vector>

#include "tamebounds/geometry.hpp"
#include "tamebounds/poly.hpp"
#include "tamebounds/weights.hpp"

namespace tamebounds {

enum class Family { Polynomial, Chebyshev, Waves, Exp };

const char* to_string(Family f);

/// c * sin(<a, x> + phi)
struct Wave {
    Real c;
    std::vector<Real> a;
    Real phi;
};

/// Closed-form test function: amplitude times one of
///   a rational polynomial (1-D), a Chebyshev polynomial T_n (1-D),
///   a sum of plane waves (any dimension), or exp(a t) with rational a (1-D).
/// Values are enclosed in double interval arithmetic; polynomial values at
/// double points are computed exactly first.
class CertifiedFunction {
public:
    static CertifiedFunction polynomial(Poly p);
    static CertifiedFunction chebyshev(unsigned n);
    static CertifiedFunction waves(std::vector<Wave> waves);
    static CertifiedFunction exponential(const mpq_class& a);

    Family family() const { return family_; }
    std::size_t dim() const { return dim_; }
    const Real& amplitude() const { return amp_; }
    /// amplitude * f
    CertifiedFunction scaled(const Real& c) const;
    /// The same function with unit amplitude.
    CertifiedFunction base() const;

    /// Polynomial part (families Polynomial and Chebyshev), without amplitude.
    const Poly& poly() const { return poly_; }
    const std::vector<Wave>& wave_list() const { return waves_; }
    const mpq_class& rate() const { return rate_; }
    unsigned chebyshev_degree() const { return cheb_n_; }

    Ival eval(const std::vector<double>& x) const;
    /// Enclosure of f over a cell: intersection of the naive interval form
    /// and a second-order Taylor form around the cell center.
    Ival range(const Cell& c) const;
    /// Enclosure of the partial derivative d^alpha f at x.
    Ival partial(const std::vector<unsigned>& alpha, const std::vector<double>& x) const;
    /// sum_{|alpha| = j} j!/alpha! |d^alpha f(x)|
    Ival frechet_at(unsigned j, const std::vector<double>& x) const;

    /// j-th derivative as a function of the same family (1-D only).
    CertifiedFunction derivative(unsigned j) const;

    /// g(t) = f(x0 + t (x1 - x0)) on [0, 1].
    CertifiedFunction restricted(const Point& x0, const Point& x1) const;

    std::string to_spec() const;

private:
    CertifiedFunction() = default;
    void prepare();

    Family family_ = Family::Polynomial;
    std::size_t dim_ = 1;
    Real amp_{mpq_class(1)};
    Poly poly_;
    unsigned cheb_n_ = 0;
    std::vector<Wave> waves_;
    mpq_class rate_;

    // cached enclosures
    Poly dpoly_;
    Poly ddpoly_;
    Ival amp_i_;
    std::vector<Ival> c_i_;
    std::vector<std::vector<Ival>> a_i_;
    std::vector<Ival> phi_i_;
    Ival rate_i_;
};

/// [amp*]poly:c0,c1,... | cheb:n | waves:c@a1;...;ad@phi[+...] | exp:a
CertifiedFunction parse_function(const std::string& text);

} // namespace tamebounds

#endif
