#ifndef TAMEBOUNDS_BANG_HPP
#define TAMEBOUNDS_BANG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tamebounds/functions.hpp"
#include "tamebounds/ival.hpp"
#include "tamebounds/weights.hpp"

namespace tamebounds {

struct BangValue {
    double lower = 0;
    double upper = 0;
    /// b_n vanishes identically (n beyond the truncation index of the weight).
    bool exact_zero = false;
};

/// The functions b_n(t) = sup_{j >= n} |f^(j)(t)| / (e^j M_j) of a univariate
/// f on [lo, hi] with respect to a full weight. Terms with j > cutoff are
/// not evaluated; they are at most e^-j each, which is carried in the upper
/// bound. Immutable after construction.
class BangProfile {
public:
    /// Default cutoff: max(N, 64) for a weight truncated at N, else 64.
    BangProfile(CertifiedFunction f, const mpq_class& lo, const mpq_class& hi, FullWeight w,
                std::optional<std::uint64_t> cutoff = std::nullopt);

    const CertifiedFunction& function() const { return derivs_.front(); }
    const FullWeight& weight() const { return w_; }
    std::uint64_t cutoff() const { return cutoff_; }
    const mpq_class& lo() const { return lo_; }
    const mpq_class& hi() const { return hi_; }
    /// |I| = hi - lo
    Real length() const { return Real(mpq_class(hi_ - lo_)); }
    bool contains(double t) const;

    /// f^(j)(t) for j <= cutoff.
    Ival derivative_at(std::uint64_t j, double t) const;
    /// |f^(j)(t)| / (e^j M_j); zero when M_j = inf.
    Ival term(std::uint64_t j, double t) const;
    /// Enclosure of M_j (upper +inf when M_j = inf).
    const Ival& M(std::uint64_t j) const { return m_.at(j); }

    BangValue value(std::uint64_t n, double t) const;

private:
    void check_point(double t) const;

    std::vector<CertifiedFunction> derivs_;
    FullWeight w_;
    mpq_class lo_;
    mpq_class hi_;
    std::uint64_t cutoff_;
    std::vector<Ival> m_;
    std::vector<Ival> scale_;  // e^j M_j
};

BangValue bang_value(const BangProfile& p, std::uint64_t n, double t);

enum class Verdict { Holds, Violated, Inconclusive };

const char* to_string(Verdict v);

/// b_n(s) < max{b_n(t), e^-k} e^{e |t - s| mu_k} for k > n, decided from the
/// upper side of the left-hand side and the lower side of the right-hand side.
Verdict check_bang_lemma(const BangProfile& p, std::uint64_t n, std::uint64_t k, double t, double s);

struct ChainResult {
    /// sum_{j=0}^m |x_{j-1} - x_j|
    Ival lhs;
    /// (1/e) Sigma_mu(j0 + 1, m + 1)
    double rhs_lo = 0;
    double rhs_hi = 0;
    std::uint64_t j0 = 0;
    /// lhs >= rhs (lower side of lhs against upper side of rhs).
    bool holds = false;
    /// True when j0 <= m, where the inequality is strict.
    bool strict_expected = false;
    /// lhs > rhs on the same safe sides; only meaningful when strict_expected.
    bool strict_holds = false;
};

/// Relative zero tolerance: f^(j)(x) counts as zero when |f^(j)(x)| <= 1e-12 M_j.
inline constexpr double chain_zero_tolerance = 1e-12;

/// Checks the chain inequality for points x = (x_{-1}, x_0, ..., x_m) with
/// f^(j)(x_j) = 0. Throws ChainInvalid when some x_j is not a zero within the
/// tolerance.
ChainResult verify_bang_chain(const BangProfile& p, const std::vector<double>& x);

/// Builds (x_{-1}, x_0, ..., x_m): each x_j is the zero of f^(j) nearest to
/// x_{j-1} among those found on a grid, refined by bisection. Throws
/// ChainInvalid when some f^(j) has no detectable zero in I.
std::vector<double> rolle_chain(const BangProfile& p, double x_minus1, std::size_t m);

struct ZeroBoundReport {
    std::uint64_t bound_one_sided = 0;
    std::uint64_t bound_total = 0;
    std::uint64_t j0_used = 0;
    double base_point = 0;
    double b0_lower = 0;
    /// Truncation index for re-deriving the bound from finitely many derivatives.
    ExtNat n_bootstrap;
};

/// Upper bound for the number of zeros (with multiplicity) of f in I from
/// the Bang function at x_base. The total bound is halved when x_base is an
/// endpoint of I. Throws ConditionFails when Sigma_mu(j0+1, inf) > |I| e
/// cannot be certified.
ZeroBoundReport zero_count_bound(const BangProfile& p, double x_base);

/// Radius (1/e) Sigma_mu(ceil(log(M0/|f(x)|))_N + 1, m) around x_base free of
/// zeros of multiplicity >= m (lower side).
double distance_to_m_fold_zero(const BangProfile& p, double x_base, std::uint64_t m);

/// Bound 2(N - 1) on critical points of f on I, N = d_{2|I| mu}(b / (2 M0)) + 1.
/// For a restriction g(t) = f(x0 + t(x1 - x0)) the profile lives on [0, 1] and
/// its weight is already scaled by the segment length. Requires
/// Sigma_mu(j0+1, inf) > 2|I| e and either a zero on the line or
/// oscillation >= 2b; throws ConditionFails otherwise.
std::uint64_t critical_point_bound(const BangProfile& p, const Real& b, bool has_zero_on_line,
                                   double oscillation);

} // namespace tamebounds

#endif
