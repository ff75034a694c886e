#ifndef TAMEBOUNDS_WEIGHTS_HPP
#define TAMEBOUNDS_WEIGHTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tamebounds/ext_real.hpp"
#include "tamebounds/real.hpp"

namespace tamebounds {

enum class WeightKind { Table, Const, Linear, Power, Geometric };

const char* to_string(WeightKind kind);

/// Increasing weight sequence mu_1 <= mu_2 <= ..., finite up to index N and
/// +inf beyond it.
///
/// Families:
///   Table(v_1..v_N)   mu_j = v_j, N = table length
///   Const(c)          mu_j = c
///   Linear(c)         mu_j = c j
///   Power(c, s)       mu_j = c j^s
///   Geometric(c, r)   mu_j = c r^j, r > 1
/// Every family carries an extra positive factor `scale` (default 1) so that
/// a*mu stays a WeightSpec for irrational a (diameters of balls, simplices).
class WeightSpec {
public:
    static WeightSpec table(std::vector<mpq_class> entries);
    static WeightSpec constant(const Real& c);
    static WeightSpec linear(const Real& c);
    static WeightSpec power(const Real& c, const mpq_class& s);
    static WeightSpec geometric(const Real& c, const mpq_class& r);

    WeightKind kind() const { return kind_; }
    /// Index of the last finite entry (INF for untruncated closed forms).
    ExtNat last_finite() const { return last_; }
    const Real& scale() const { return scale_; }
    const mpq_class& coefficient() const { return c_; }
    const mpq_class& exponent() const { return s_; }  // Power: s, Geometric: r
    const std::vector<mpq_class>& entries() const { return table_; }

    /// mu with entries of index >= n + 1 set to +inf.
    WeightSpec truncated(std::uint64_t n) const;
    /// (a mu_j)_j.
    WeightSpec scaled(const Real& a) const;
    /// The same family without truncation (tables are returned unchanged).
    WeightSpec untruncated() const;

    /// mu_j for j >= 1.
    ExtReal mu(std::uint64_t j) const;
    bool is_finite_at(std::uint64_t j) const { return last_.is_inf() || j <= last_.get(); }
    /// 1/mu_j exactly, when the family and scale allow it.
    std::optional<mpq_class> reciprocal_exact(std::uint64_t j) const;
    Enclosure reciprocal(std::uint64_t j, mpfr_prec_t prec) const;
    Enclosure mu_enclosure(std::uint64_t j, mpfr_prec_t prec) const;

    /// Entries are all equal (Const, or a Table of identical values).
    bool is_constant_like() const;

    /// Grammar string: const:<c> | linear:<c> | power:<c>,<s> | geom:<c>,<r> |
    /// table:<v1>,<v2>,... ; truncation is appended as "|N".
    std::string to_spec() const;

    friend bool operator==(const WeightSpec& a, const WeightSpec& b);

private:
    WeightSpec(WeightKind kind, mpq_class c, mpq_class s, std::vector<mpq_class> table, Real scale,
               ExtNat last);

    WeightKind kind_;
    mpq_class c_;
    mpq_class s_;
    std::vector<mpq_class> table_;
    Real scale_;
    ExtNat last_;
};

/// Parse a weight spec string (see WeightSpec::to_spec). Numbers accept
/// decimals, p/q and the symbolic constants e and pi, e.g. "const:1/(2e)".
WeightSpec parse_weight(const std::string& text);
/// Parse a positive real expression in the same number grammar.
Real parse_real(const std::string& text);

/// Full admissible weight (mu, M0): M_j = M0 mu_1 ... mu_j.
struct FullWeight {
    WeightSpec mu;
    mpq_class m0;

    FullWeight(WeightSpec mu_, mpq_class m0_);

    ExtReal M(std::uint64_t j) const;
    Enclosure M_enclosure(std::uint64_t j, mpfr_prec_t prec) const;
    FullWeight truncated(std::uint64_t n) const { return {mu.truncated(n), m0}; }
    FullWeight scaled(const Real& a) const { return {mu.scaled(a), m0}; }
};

/// Sigma_mu(m, n) = sum_{j=m}^n 1/mu_j. An index of nullopt means +inf.
struct SumResult {
    std::optional<mpq_class> exact;
    Enclosure enclosure;
    bool infinite = false;
};

SumResult sigma(const WeightSpec& mu, std::optional<std::uint64_t> m, std::optional<std::uint64_t> n,
                mpfr_prec_t prec = default_precision());

/// j0(b) = max(0, ceil(log(1/b))), natural log.
std::uint64_t j0(const Real& b);

struct DegreeOptions {
    std::uint64_t max_terms = 10'000'000;
};

enum class DegreeStatus { Finite, Infinite, Unresolved };

struct DegreeResult {
    std::uint64_t j0 = 0;
    DegreeStatus status = DegreeStatus::Finite;
    /// Valid for Finite; for Unresolved the degree is at least this value.
    std::uint64_t value = 0;
    /// Enclosure of Sigma_{scale*mu}(j0+1, decided_at), compared against e.
    Enclosure partial_sum;
    std::uint64_t decided_at = 0;

    bool finite() const { return status == DegreeStatus::Finite; }
    ExtNat degree() const;
};

/// d_{scale*mu}(b) = sup{n : Sigma_{scale*mu}(j0(b)+1, n) < e}.
DegreeResult degree(const WeightSpec& mu, const Real& scale, const Real& b,
                    const DegreeOptions& options = {});

struct AdmissibleData {
    bool admissible = false;
    std::uint64_t j0 = 0;
    /// Associated integer N = d_{delta mu}(b') + 1 when admissible.
    std::optional<std::uint64_t> n;
    /// Enclosure of Sigma_mu(j0+1, inf) / delta (compared against e).
    Enclosure tail;
};

/// Admissibility test Sigma_mu(j0+1, inf) > delta e with j0 = j0(b/(2 M0))
/// (halving) or j0 = j0(b/M0).
AdmissibleData admissible_data(const FullWeight& w, const Real& delta, const Real& b, bool halving);

struct QuasianalyticVerdict {
    bool quasianalytic = false;
    /// False when the weight is truncated: quasianalyticity presupposes N = inf.
    bool meaningful = true;
};

QuasianalyticVerdict is_quasianalytic(const WeightSpec& mu);

/// Necessary condition for an M-smooth f with ||f|| >= b compactly supported
/// in a body of diameter delta: Sigma_mu(j0+1, inf) <= delta e,
/// j0 = j0(b/(2 M0)). Requires a non-quasianalytic weight.
bool bump_necessary_condition(const FullWeight& w, const Real& delta, const Real& b);

/// Certified sign of Sigma_mu(m, inf) - target (escalating precision).
int compare_tail(const WeightSpec& mu, std::uint64_t m, const Real& target);

} // namespace tamebounds

#endif
