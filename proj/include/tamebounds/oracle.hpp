#ifndef TAMEBOUNDS_ORACLE_HPP
#define TAMEBOUNDS_ORACLE_HPP

#include <limits>

#include "tamebounds/functions.hpp"

namespace tamebounds {

/// Certified two-sided bound. `converged` is false when the refinement budget
/// ran out before the requested tolerance; the bracket is still valid.
struct Bracket {
    double lo = 0;
    double hi = std::numeric_limits<double>::infinity();
    bool converged = true;

    bool contains(double x) const { return lo <= x && x <= hi; }
    double width() const { return hi - lo; }
};

struct OracleOptions {
    int depth_cap = 24;
    std::size_t max_cells = 200000;
    /// Relative tolerance (sup norm: relative to the current lower bound).
    double rel_tol = 1e-6;
};

/// Weight dominating the derivative norms of f on K:
///   polynomials: Markov, mu_j = 2n^2/|I| and M0 >= sup norm;
///   plane waves: mu_j = max_k |a_k|_1, M0 = |amp| sum |c_k|;
///   exp(a t):    mu_j = |a|, M0 = |amp| max_K e^{a t}.
FullWeight certified_weight(const CertifiedFunction& f, const Body& k, const OracleOptions& opts = {});

/// Weight mu with ||f||_{j,K} <= ||f||_K mu_1 ... mu_j for all j >= 1. It does not
/// depend on the amplitude of f.
WeightSpec relative_weight(const CertifiedFunction& f, const Body& k, const OracleOptions& opts = {});

Bracket sup_norm(const CertifiedFunction& f, const Region& s, const OracleOptions& opts = {});

/// |{x in S : |f(x)| <= t}|; rel_tol is relative to |S|.
Bracket measure_sublevel(const CertifiedFunction& f, const Region& s, double t, OracleOptions opts = {.rel_tol = 1e-4});

/// Normalized L^p norm (|S|^{-1} int_S |f|^p)^{1/p}; p = +inf gives the sup norm.
Bracket lp_norm(const CertifiedFunction& f, const Region& s, double p, OracleOptions opts = {.max_cells = 60000, .rel_tol = 1e-3});

/// Decreasing rearrangement (f|_E)^*(y) = inf{t > 0 : |{x in E : |f(x)| > t}| <= y}.
Bracket rearrangement_value(const CertifiedFunction& f, const Region& e, double y,
                            OracleOptions opts = {.max_cells = 60000, .rel_tol = 1e-4});

/// Mean oscillation of log|f| over B. Throws ZeroInBall unless min_B |f| > 0 is certified.
Bracket mean_oscillation(const CertifiedFunction& f, const Body& b, OracleOptions opts = {.max_cells = 60000, .rel_tol = 1e-3});

struct ZeroCount {
    std::size_t lo = 0;
    /// SIZE_MAX when some cell could not be resolved.
    std::size_t hi = 0;
    bool exact() const { return lo == hi; }
};

/// Zeros of a 1-D function on [a, b]. Polynomials: exact Sturm counts (with
/// multiplicity on request). Other families: distinct zeros bracketed by a
/// certified subdivision; a and b must then be exact doubles.
ZeroCount count_zeros(const CertifiedFunction& f, const mpq_class& a, const mpq_class& b, bool with_multiplicity,
                      const OracleOptions& opts = {});

struct Restriction {
    CertifiedFunction g;
    FullWeight weight;
};

/// g(t) = f(x0 + t(x1 - x0)) on [0, 1] with the weight of f scaled by |x1 - x0|.
Restriction restrict_to_line(const CertifiedFunction& f, const FullWeight& w, const Point& x0, const Point& x1);

/// (1/2) min(b / (3 M_1), r) for a ball of radius r.
Real ball_radius_bound(const FullWeight& w, const Body& k, const Real& b);

/// n(x) with H_n <= x < H_{n+1}, x >= 1: exact rational partial sums while
/// n stays below 5000, otherwise H_n = psi(n + 1) + Euler's constant from
/// MPFR's correctly rounded digamma at 256 bits. Throws Inconclusive when x
/// cannot be separated from the neighbouring harmonic numbers.
std::uint64_t harmonic_index(const mpq_class& x);

/// Rational upper bound of |r|.
mpq_class abs_upper(const Real& r);

} // namespace tamebounds

#endif
