#ifndef TAMEBOUNDS_REMEZ_HPP
#define TAMEBOUNDS_REMEZ_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tamebounds/geometry.hpp"
#include "tamebounds/weights.hpp"

namespace tamebounds {

/// Increasing continuous extension s -> mu~(s) of a weight to s >= 1 with
/// mu~(k) = mu_k. Either piecewise linear through knots (left derivatives at
/// the knots) or one of the closed forms c s^p and c r^s.
class WeightExtension {
public:
    enum class Kind { PiecewiseLinear, Power, Exponential };

    /// Knots (s_i, mu~(s_i)) with increasing s_i >= 1 and nondecreasing values.
    static WeightExtension piecewise_linear(std::vector<std::pair<mpq_class, Real>> knots);
    /// Piecewise linear through (1, mu_1), ..., (n, mu_n), n >= 2.
    /// Throws ExtensionUnavailable if some mu_k, k <= n, is infinite.
    static WeightExtension canonical(const WeightSpec& mu, std::uint64_t n);
    /// Closed-form extension of Const, Linear and Power (c s^p) and of
    /// Geometric (c r^s). Throws ExtensionUnavailable for tables.
    static WeightExtension smooth(const WeightSpec& mu);

    Kind kind() const { return kind_; }
    /// p for c s^p, r for c r^s.
    const mpq_class& exponent() const { return exponent_; }
    const std::vector<std::pair<mpq_class, Real>>& knots() const { return knots_; }
    /// Largest s covered (infinite for closed forms).
    std::optional<mpq_class> reach() const;

private:
    Kind kind_ = Kind::PiecewiseLinear;
    std::vector<std::pair<mpq_class, Real>> knots_;
    mpq_class exponent_;  // p for Power, r for Exponential
};

/// gamma(n) = sup_{1 <= s <= n} s mu~'(s) / mu~(s).
Enclosure gamma_of(const WeightExtension& ext, std::uint64_t n, mpfr_prec_t prec = default_precision());

/// sup_{s >= 1} s mu~'(s) / mu~(s) when it is finite (power-type closed forms).
std::optional<Enclosure> gamma_bar(const WeightExtension& ext, mpfr_prec_t prec = default_precision());

struct RemezConstants {
    std::uint64_t n = 1;
    std::uint64_t j0 = 0;
    Enclosure gamma;
    /// Gamma = 4 e^{4 + gamma}
    Enclosure big_gamma;
    /// C_N = Gamma(2(N - 1)); every bound built from it is infinite (or zero
    /// for lower bounds) when N - 1 = 0.
    Enclosure c_n;
    /// Sigma_mu(j0 + 1, inf) / delta, compared against e.
    Enclosure tail;

    bool degenerate() const { return n == 1; }
    /// 2(N - 1)
    std::uint64_t exponent() const { return 2 * (n - 1); }
};

struct RemezOptions {
    /// Use the closed-form extension (and its global gamma when finite)
    /// instead of the piecewise linear one through integer knots.
    bool smooth_extension = false;
};

/// Constants for admissible data: Sigma_mu(j0+1, inf) > delta e with
/// j0 = j0(b / M0), N = d_{delta mu}(b / M0) + 1. Throws ConditionFails when
/// the data are not admissible.
RemezConstants remez_constants(const FullWeight& w, const Real& delta, const Real& b, const RemezOptions& opts = {});

/// (C_N |I| / |E|)^{2(N-1)} sup_E, rounded up; +inf when N - 1 = 0.
double remez_univariate(const RemezConstants& c, const Body& interval, const MeasurableSet& e, double sup_e);

/// (C_N |L|^{1/d} / (|L|^{1/d} - (|L| - |E|)^{1/d}))^{2(N-1)}, rounded up.
double remez_multivariate(const RemezConstants& c, const Body& l, const MeasurableSet& e);
/// Same factor with |E| given directly.
double remez_multivariate(const RemezConstants& c, const Body& l, const Real& e_measure);

struct Remez2 {
    RemezConstants constants;
    double factor = 0;
};

/// sup_K |f| <= factor sup_E |f| for f with ||f||_{j,K} <= ||f||_K mu_1...mu_j.
Remez2 remez2(const WeightSpec& mu, const Body& k, const MeasurableSet& e, const RemezOptions& opts = {});

/// C_N d |K| (t / sup_K)^{1/(2(N-1))}, rounded up. sup_k should be a lower bound.
double sublevel_volume_bound(const RemezConstants& c, const Body& k, double t, double sup_k);

/// sup_K (|E| / |K| (1 - lambda) / (C_N d))^{2(N-1)}, rounded down; 0 when N - 1 = 0.
double rearrangement_lower_bound(const RemezConstants& c, const Body& k, const Real& e_measure, double lambda,
                                 double sup_k);

/// Exponent in (0, inf]; infinity is kept symbolic so that q/p = 0 exactly.
struct LpExponent {
    mpq_class value;
    bool infinite = false;

    static LpExponent finite(double p);
    static LpExponent inf() { return {mpq_class(0), true}; }
};

struct LpFactors {
    double master = 0;
    double k = 0;
    double e = 0;
};

/// Constants of the L^p / L^q comparison for 0 < q < p <= inf (rounded up).
/// Throws BadExponents unless 0 < q < p.
LpFactors lp_comparison_bound(const RemezConstants& c, const Body& k, const Real& e_measure, const LpExponent& p,
                              double q);

/// 4(N-1)(log(C_N d |K| / |B|) + 1), or 4(N-1)(log(C_N d) + 1) when the ball
/// carries the sup of f over K. Rounded up; +inf when N - 1 = 0.
double mean_oscillation_bound(const RemezConstants& c, const Body& k, const Real& b_measure, bool same_sup);

} // namespace tamebounds

#endif
