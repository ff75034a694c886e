#include "tamebounds/degrees.hpp"

#include <algorithm>
#include <string>

#include "tamebounds/errors.hpp"

namespace tamebounds {

namespace {

void require_positive(std::uint64_t n, const char* what)
{
    if (n == 0) {
        throw Error(ErrorKind::InvalidRange, std::string(what) + " needs n >= 1");
    }
}

void require_positive(const mpq_class& q, const char* what)
{
    if (sgn(q) <= 0) {
        throw Error(ErrorKind::InvalidRange, std::string(what) + " must be positive");
    }
}

std::uint64_t finite_value(const DegreeResult& d, const WeightSpec& mu, const char* which)
{
    if (d.status == DegreeStatus::Unresolved) {
        throw Error(ErrorKind::BoundaryUndecidable,
                    std::string(which) + " of " + mu.to_spec() + " not resolved within the iteration cap");
    }
    if (!d.finite()) {
        throw Error(ErrorKind::DomainError, std::string(which) + " of " + mu.to_spec() + " is infinite");
    }
    return d.value;
}

} // namespace

FullWeight markov_weight(std::uint64_t n)
{
    require_positive(n, "markov_weight");
    mpz_class n2 = mpz_class(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n);
    return {WeightSpec::constant(Real(mpq_class(n2))), mpq_class(1)};
}

mpq_class markov_factor(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        throw Error(ErrorKind::InvalidRange, "Markov factor needs k <= n");
    }
    mpz_class n2 = mpz_class(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n);
    mpq_class f(1);
    for (std::uint64_t i = 0; i < k; ++i) {
        mpz_class ii(static_cast<unsigned long>(i));
        f *= mpq_class(n2 - ii * ii, mpz_class(static_cast<unsigned long>(2 * i + 1)));
        f.canonicalize();
    }
    return f;
}

std::vector<mpq_class> markov_factors(std::uint64_t n)
{
    std::vector<mpq_class> out;
    out.reserve(n);
    for (std::uint64_t k = 1; k <= n; ++k) {
        out.push_back(markov_factor(n, k));
    }
    return out;
}

FullWeight bernstein_weight(std::uint64_t n, const Real& c)
{
    require_positive(n, "bernstein_weight");
    if (compare(c, Real(0L)) <= 0) {
        throw Error(ErrorKind::InvalidRange, "conversion constant must be positive");
    }
    return {WeightSpec::constant(c * Real(mpq_class(static_cast<unsigned long>(n)))), mpq_class(1)};
}

FullWeight analytic_weight(const mpq_class& eps, const mpq_class& c, const mpq_class& sup_d)
{
    require_positive(eps, "eps");
    require_positive(c, "conversion constant");
    require_positive(sup_d, "sup over the disk");
    return {WeightSpec::linear(Real(mpq_class(c / eps))), mpq_class(sup_d / eps)};
}

AnalyticDegreeBound analytic_degree_bound(const mpq_class& eps, const mpq_class& c)
{
    require_positive(eps, "eps");
    require_positive(c, "conversion constant");
    WeightSpec mu = WeightSpec::linear(Real(mpq_class(c / eps)));
    AnalyticDegreeBound out;
    out.degree = degree(mu, Real(2L), Real(eps));
    out.bound = 10 * finite_value(out.degree, mu.scaled(Real(2L)), "degree");
    return out;
}

PolyDegreeComparison compare_polynomial_degrees(std::uint64_t n, const Real& c)
{
    WeightSpec markov = markov_weight(n).mu;
    WeightSpec bernstein = bernstein_weight(n, c).mu;
    std::uint64_t dm = finite_value(degree(markov, Real(1L), Real(1L)), markov, "degree");
    std::uint64_t db = finite_value(degree(bernstein, Real(1L), Real(1L)), bernstein, "degree");
    return {n, markov, bernstein, dm, db};
}

ComtetBracket comtet_bracket(const Real& x)
{
    if (compare(x, Real(2L)) < 0) {
        throw Error(ErrorKind::DomainError, "the harmonic index bracket needs x >= 2");
    }
    return escalate(
        [&](mpfr_prec_t p) -> std::optional<ComtetBracket> {
            // Euler's constant is carried at 256 bits at least
            mpfr_prec_t prec = std::max<mpfr_prec_t>(p, 256);
            Enclosure xe = x.enclose(prec);
            Enclosure one = Enclosure::exact(1L, prec);
            Enclosure lead = exp(xe - Enclosure::euler_gamma(prec)) - Enclosure::exact(mpq_class(1, 2), prec);
            Enclosure inv = one / (exp(xe - one) - one);
            auto lo = (lead - Enclosure::exact(mpq_class(3, 2), prec) * inv).decided_floor();
            auto hi = (lead + Enclosure::exact(mpq_class(1, 12), prec) * inv).decided_floor();
            if (!lo || !hi) {
                return std::nullopt;
            }
            return ComtetBracket{*lo, *hi};
        },
        "harmonic index bracket at x = " + x.label() + " sits on an integer");
}

BracketTwoMu bracket_2mu(const WeightSpec& mu, const Real& b)
{
    BracketTwoMu out;
    out.j0 = j0(b);
    out.d_mu = finite_value(degree(mu, Real(1L), b), mu, "degree");
    out.d_two_mu = finite_value(degree(mu, Real(2L), b), mu.scaled(Real(2L)), "degree");
    out.lhs_ok = 2 * out.d_mu <= out.d_two_mu;
    out.shifted_ok = 2 * (out.d_mu - out.j0) <= out.d_two_mu - out.j0;
    if (mu.is_constant_like()) {
        out.const_upper_ok = out.d_two_mu <= 2 * out.d_mu + 1;
    }
    return out;
}

} // namespace tamebounds
