#ifndef TAMEBOUNDS_DEGREES_HPP
#define TAMEBOUNDS_DEGREES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tamebounds/weights.hpp"

namespace tamebounds {

/// Const(n^2) with M0 = 1, the weight a degree-n polynomial on [-1, 1]
/// satisfies relative to its sup norm by Markov's inequality.
FullWeight markov_weight(std::uint64_t n);

/// Markov's derivative factor n^2 (n^2 - 1^2) ... (n^2 - (k-1)^2) / (1 3 5 ... (2k-1)),
/// exact; 1 for k = 0. Throws InvalidRange unless k <= n.
mpq_class markov_factor(std::uint64_t n, std::uint64_t k);
/// Factors for k = 1..n.
std::vector<mpq_class> markov_factors(std::uint64_t n);

/// Const(C n) with M0 = 1 (Bernstein's inequality on the unit disk; C converts
/// complex derivative bounds to real ones).
FullWeight bernstein_weight(std::uint64_t n, const Real& c = Real(1L));

/// mu_j = C j / eps, M0 = sup_D / eps: the Cauchy-estimate weight of a
/// function holomorphic on the disk of radius 1 + eps.
FullWeight analytic_weight(const mpq_class& eps, const mpq_class& c, const mpq_class& sup_d);

struct AnalyticDegreeBound {
    DegreeResult degree;  // d_{2 mu}(eps)
    /// 10 d_{2 mu}(eps), an upper bound for the analytic degree d_f(2 eps).
    std::uint64_t bound = 0;
};

AnalyticDegreeBound analytic_degree_bound(const mpq_class& eps, const mpq_class& c = 1);

struct PolyDegreeComparison {
    std::uint64_t n = 0;
    WeightSpec mu_markov;
    WeightSpec mu_bernstein;
    std::uint64_t degree_markov = 0;     // floor(e n^2)
    std::uint64_t degree_bernstein = 0;  // floor(e C n)
};

PolyDegreeComparison compare_polynomial_degrees(std::uint64_t n, const Real& c = Real(1L));

/// Floor bracket lo <= n(x) <= hi for the harmonic index H_{n(x)} <= x < H_{n(x)+1}:
///   lo = floor(e^{x-g} - 1/2 - (3/2) / (e^{x-1} - 1))
///   hi = floor(e^{x-g} - 1/2 + (1/12) / (e^{x-1} - 1)),  g Euler's constant.
/// Throws DomainError for x < 2.
struct ComtetBracket {
    mpz_class lo;
    mpz_class hi;
};

ComtetBracket comtet_bracket(const Real& x);

struct BracketTwoMu {
    std::uint64_t j0 = 0;
    std::uint64_t d_mu = 0;
    std::uint64_t d_two_mu = 0;
    /// 2 d_mu(b) <= d_{2mu}(b). Guaranteed when j0(b) = 0 (b > 1/e); for
    /// larger j0 both degrees carry the offset j0 and only the shifted form holds.
    bool lhs_ok = false;
    /// 2 (d_mu(b) - j0) <= d_{2mu}(b) - j0
    bool shifted_ok = false;
    /// d_{2mu}(b) <= 2 d_mu(b) + 1; only evaluated for constant weights.
    std::optional<bool> const_upper_ok;
};

/// Throws DomainError when either degree is infinite, BoundaryUndecidable
/// when it cannot be resolved.
BracketTwoMu bracket_2mu(const WeightSpec& mu, const Real& b);

} // namespace tamebounds

#endif
