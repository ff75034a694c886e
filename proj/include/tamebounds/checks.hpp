#ifndef TAMEBOUNDS_CHECKS_HPP
#define TAMEBOUNDS_CHECKS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tamebounds/bang.hpp"
#include "tamebounds/oracle.hpp"
#include "tamebounds/remez.hpp"

namespace tamebounds {

enum class CheckVerdict { Holds, Violated, Inconclusive, Skipped };

const char* to_string(CheckVerdict v);

/// One verified instance: a bound from the library against an oracle value.
struct CheckRecord {
    std::string check;
    /// Spec strings and parameters, in insertion order.
    std::vector<std::pair<std::string, std::string>> inputs;
    /// "[lo,hi]" brackets; a one-sided bound b prints as "[b,b]".
    std::string bound;
    std::string oracle;
    CheckVerdict verdict = CheckVerdict::Skipped;
    std::string note;

    void input(const std::string& key, const std::string& value) { inputs.emplace_back(key, value); }
};

/// "[lo,hi]" with 17 significant digits, which round-trips doubles exactly.
std::string bracket_string(double lo, double hi);
std::string number_string(double x);

/// Verdict for "oracle <= bound": holds when the upper side is below, violated
/// when the lower side is above.
CheckVerdict upper_verdict(const Bracket& oracle, double bound);
/// Verdict for "oracle >= bound".
CheckVerdict lower_verdict(const Bracket& oracle, double bound);
/// Violated if any is violated, holds if all hold, inconclusive otherwise.
CheckVerdict combine(const std::vector<CheckVerdict>& verdicts);

/// Constants for f on K relative to its own sup norm: (mu, M0 = 1) with mu
/// from relative_weight, delta = diam K, b = 1.
RemezConstants relative_constants(const CertifiedFunction& f, const Body& k, const RemezOptions& opts = {});

/// Zeros of f on I (with multiplicity for polynomials) against bound_total.
/// Without a base point the grid point with the largest certified |f| is used.
CheckRecord check_zero_bound(const CertifiedFunction& f, const Body& interval, std::optional<double> base = {});

/// Chain inequality along a Rolle chain of length m started at x_minus1.
CheckRecord check_bang_chain(const CertifiedFunction& f, const Body& interval, double x_minus1, std::size_t m);

/// b_n(s) <= max(b_n(t), e^{-k}) exp(e |t - s| mu_k).
CheckRecord check_bang_lemma(const CertifiedFunction& f, const Body& interval, std::uint64_t n, std::uint64_t k,
                             double t, double s);

/// sup_I |f| <= (C_N |I| / |E|)^{2(N-1)} sup_E |f|
CheckRecord check_remez_1d(const CertifiedFunction& f, const Body& interval, const MeasurableSet& e);

/// sup_K |f| <= factor sup_E |f| (multivariate Remez inequality).
CheckRecord check_remez_nd(const CertifiedFunction& f, const Body& k, const MeasurableSet& e);

/// |S_t| <= C_N d |K| (t / sup_K)^{1/(2(N-1))}
CheckRecord check_sublevel(const CertifiedFunction& f, const Body& k, double t);

/// (f|_E)^*(lambda |E|) >= sup_K (|E|/|K| (1 - lambda)/(C_N d))^{2(N-1)}
CheckRecord check_rearrangement(const CertifiedFunction& f, const Body& k, const MeasurableSet& e, double lambda);

/// The three L^p / L^q comparisons (master, on K, against E).
CheckRecord check_lp(const CertifiedFunction& f, const Body& k, const MeasurableSet& e, const LpExponent& p,
                     double q);

/// mo_B(log |f|) <= 4(N-1)(log(C_N d |K| / |B|) + 1). Skipped when min_B |f| > 0
/// cannot be certified.
CheckRecord check_mean_oscillation(const CertifiedFunction& f, const Body& k, const Body& ball);

/// Critical points of f on I against critical_point_bound at level b.
CheckRecord check_critical(const CertifiedFunction& f, const Body& interval, const Real& b);

/// Verdicts of the multivariate Remez check for f and c f agree, with equal N
/// and factor.
CheckRecord check_scaling(const CertifiedFunction& f, const Body& k, const MeasurableSet& e, const Real& c);

/// Names accepted by run_check.
const std::vector<std::string>& check_names();

} // namespace tamebounds

#endif
