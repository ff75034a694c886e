#include "tamebounds/bang.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tamebounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kMaxCutoff = 4096;

Ival to_ival(const Enclosure& e) { return {e.lower(), e.upper()}; }

// e^-k
Ival neg_exp(std::uint64_t k) { return exp(Ival(-static_cast<double>(k))); }

Ival e_ival() { return {down(M_E), up(M_E)}; }

Ival mu_ival(const WeightSpec& mu, std::uint64_t k) { return to_ival(mu.mu_enclosure(k, 128)); }

bool is_endpoint(const BangProfile& p, double x)
{
    mpq_class q = rational_from_double(x);
    return q == p.lo() || q == p.hi();
}

} // namespace

BangProfile::BangProfile(CertifiedFunction f, const mpq_class& lo, const mpq_class& hi, FullWeight w,
                         std::optional<std::uint64_t> cutoff)
    : w_(std::move(w)), lo_(lo), hi_(hi)
{
    if (f.dim() != 1) {
        throw Error(ErrorKind::DerivativeUnavailable, "Bang functions need a univariate function");
    }
    if (!(lo < hi)) {
        throw Error(ErrorKind::InvalidRange, "Bang profile needs a non-trivial interval");
    }
    ExtNat n = w_.mu.last_finite();
    cutoff_ = cutoff.value_or(n.is_inf() ? 64 : std::max<std::uint64_t>(n.get(), 64));
    if (cutoff_ > kMaxCutoff) {
        throw Error(ErrorKind::DerivativeUnavailable,
                    "derivative cutoff " + std::to_string(cutoff_) + " exceeds " + std::to_string(kMaxCutoff));
    }
    derivs_.reserve(cutoff_ + 1);
    derivs_.push_back(f);
    for (std::uint64_t j = 1; j <= cutoff_; ++j) {
        derivs_.push_back(f.derivative(static_cast<unsigned>(j)));
    }
    Enclosure e = Enclosure::e(128);
    Enclosure ej = Enclosure::exact(1L, 128);
    // running product, in the same order as FullWeight::M_enclosure
    Enclosure product = Enclosure::exact(w_.m0, 128);
    for (std::uint64_t j = 0; j <= cutoff_; ++j) {
        if (j > 0) {
            ej = ej * e;
            if (w_.mu.is_finite_at(j)) {
                product *= w_.mu.mu_enclosure(j, 128);
            }
        }
        Enclosure mj = j > 0 && !w_.mu.is_finite_at(j) ? Enclosure::infinity(128) : product;
        m_.push_back(to_ival(mj));
        scale_.push_back(j > 0 && !w_.mu.is_finite_at(j) ? Ival(kInf) : to_ival(ej * mj));
    }
}

bool BangProfile::contains(double t) const
{
    if (!std::isfinite(t)) {
        return false;
    }
    mpq_class q = rational_from_double(t);
    return lo_ <= q && q <= hi_;
}

void BangProfile::check_point(double t) const
{
    if (!contains(t)) {
        throw Error(ErrorKind::OutsideDomain, "point " + std::to_string(t) + " is outside the interval");
    }
}

Ival BangProfile::derivative_at(std::uint64_t j, double t) const
{
    if (j > cutoff_) {
        throw Error(ErrorKind::DerivativeUnavailable,
                    "derivative order " + std::to_string(j) + " is beyond the cutoff " + std::to_string(cutoff_));
    }
    return derivs_[j].eval({t});
}

Ival BangProfile::term(std::uint64_t j, double t) const
{
    if (j > 0 && !w_.mu.is_finite_at(j)) {
        return Ival(0.0);
    }
    Ival r = abs(derivative_at(j, t)) / scale_.at(j);
    return {std::max(r.lo, 0.0), r.hi};
}

BangValue BangProfile::value(std::uint64_t n, double t) const
{
    check_point(t);
    ExtNat last = w_.mu.last_finite();
    BangValue out;
    if (!last.is_inf() && n > last.get()) {
        out.exact_zero = true;
        out.upper = neg_exp(std::max(n, cutoff_ + 1)).hi;
        return out;
    }
    for (std::uint64_t j = n; j <= cutoff_; ++j) {
        Ival r = term(j, t);
        out.lower = std::max(out.lower, r.lo);
        out.upper = std::max(out.upper, r.hi);
    }
    bool tail_vanishes = !last.is_inf() && last.get() <= cutoff_;
    if (!tail_vanishes) {
        out.upper = std::max(out.upper, neg_exp(std::max(n, cutoff_ + 1)).hi);
    }
    return out;
}

BangValue bang_value(const BangProfile& p, std::uint64_t n, double t) { return p.value(n, t); }

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds:
        return "holds";
    case Verdict::Violated:
        return "violated";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

Verdict check_bang_lemma(const BangProfile& p, std::uint64_t n, std::uint64_t k, double t, double s)
{
    if (k <= n) {
        throw Error(ErrorKind::InvalidRange, "the lemma needs k > n");
    }
    if (t == s) {
        throw Error(ErrorKind::InvalidRange, "the lemma needs distinct points");
    }
    BangValue at_s = p.value(n, s);
    BangValue at_t = p.value(n, t);
    if (!p.weight().mu.is_finite_at(k)) {
        return Verdict::Holds;
    }
    Ival dist = abs(Ival(t) - Ival(s));
    Ival growth = exp(e_ival() * dist * mu_ival(p.weight().mu, k));
    Ival floor_k = neg_exp(k);
    Ival base{std::max(at_t.lower, floor_k.lo), std::max(at_t.upper, floor_k.hi)};
    Ival rhs = base * growth;
    if (at_s.upper < rhs.lo) {
        return Verdict::Holds;
    }
    if (at_s.lower >= rhs.hi) {
        return Verdict::Violated;
    }
    return Verdict::Inconclusive;
}

ChainResult verify_bang_chain(const BangProfile& p, const std::vector<double>& x)
{
    if (x.size() < 2) {
        throw Error(ErrorKind::InvalidRange, "a chain needs x_-1 and at least x_0");
    }
    std::uint64_t m = x.size() - 2;
    const WeightSpec& mu = p.weight().mu;
    if (!mu.is_finite_at(m + 1)) {
        throw Error(ErrorKind::InvalidRange, "chain length m needs m + 1 <= N");
    }
    for (double xi : x) {
        if (!p.contains(xi)) {
            throw Error(ErrorKind::OutsideDomain, "chain point outside the interval");
        }
    }
    for (std::uint64_t j = 0; j <= m; ++j) {
        Ival v = abs(p.derivative_at(j, x[j + 1]));
        if (v.lo > chain_zero_tolerance * p.M(j).hi) {
            throw Error(ErrorKind::ChainInvalid, "f^(" + std::to_string(j) + ") does not vanish at x_" +
                                                     std::to_string(j) + " = " + std::to_string(x[j + 1]));
        }
    }
    ChainResult out;
    out.lhs = Ival(0.0);
    for (std::uint64_t j = 0; j <= m; ++j) {
        out.lhs += abs(Ival(x[j]) - Ival(x[j + 1]));
    }
    double b0 = p.value(0, x[0]).lower;
    if (b0 <= 0) {
        // j0 = inf: the right-hand side is an empty sum
        out.j0 = std::numeric_limits<std::uint64_t>::max();
        out.holds = true;
        return out;
    }
    out.j0 = j0(Real::from_double(b0));
    SumResult s = sigma(mu, out.j0 + 1, m + 1);
    Enclosure rhs = s.enclosure / Enclosure::e(128);
    out.rhs_lo = rhs.lower();
    out.rhs_hi = rhs.upper();
    out.holds = out.lhs.lo >= out.rhs_hi;
    out.strict_expected = out.j0 <= m;
    out.strict_holds = out.lhs.lo > out.rhs_hi;
    return out;
}

namespace {

// Zero of f^(j) in [a, b] with a sign change between the endpoints.
double bisect(const BangProfile& p, std::uint64_t j, double a, double b, int sign_a, double tol)
{
    while (true) {
        double mid = a + 0.5 * (b - a);
        if (mid <= a || mid >= b) {
            return mid;
        }
        Ival v = p.derivative_at(j, mid);
        if (b - a <= 1e-14 && v.mag() <= tol) {
            return mid;
        }
        int s = v.sign();
        if (s == 0) {
            return mid;
        }
        (s == sign_a ? a : b) = mid;
    }
}

} // namespace

std::vector<double> rolle_chain(const BangProfile& p, double x_minus1, std::size_t m)
{
    constexpr int kGrid = 2048;
    double lo = Ival::from_rational(p.lo()).hi;
    double hi = Ival::from_rational(p.hi()).lo;
    std::vector<double> grid(kGrid + 1);
    for (int i = 0; i <= kGrid; ++i) {
        grid[i] = i == kGrid ? hi : lo + (hi - lo) * i / kGrid;
    }
    std::vector<double> chain{x_minus1};
    for (std::uint64_t j = 0; j <= m; ++j) {
        double tol = chain_zero_tolerance * p.M(j).lo;
        double anchor = chain.back();
        std::vector<double> candidates;
        Ival prev = p.derivative_at(j, grid[0]);
        if (prev.mag() <= tol) {
            candidates.push_back(grid[0]);
        }
        for (int i = 1; i <= kGrid; ++i) {
            Ival cur = p.derivative_at(j, grid[i]);
            if (cur.mag() <= tol) {
                candidates.push_back(grid[i]);
            } else if (prev.sign() != 0 && cur.sign() != 0 && prev.sign() != cur.sign()) {
                candidates.push_back(bisect(p, j, grid[i - 1], grid[i], prev.sign(), tol));
            }
            prev = cur;
        }
        if (candidates.empty()) {
            throw Error(ErrorKind::ChainInvalid, "no zero of f^(" + std::to_string(j) + ") found in the interval");
        }
        chain.push_back(*std::min_element(candidates.begin(), candidates.end(), [&](double a, double b) {
            return std::fabs(a - anchor) < std::fabs(b - anchor);
        }));
    }
    return chain;
}

ZeroBoundReport zero_count_bound(const BangProfile& p, double x_base)
{
    ZeroBoundReport out;
    out.base_point = x_base;
    out.b0_lower = p.value(0, x_base).lower;
    if (out.b0_lower <= 0) {
        throw Error(ErrorKind::ConditionFails, "b_0 at the base point is not certified positive");
    }
    Real b0 = Real::from_double(out.b0_lower);
    out.j0_used = j0(b0);
    Real len = p.length();
    if (compare_tail(p.weight().mu, out.j0_used + 1, len * Real::e()) <= 0) {
        throw Error(ErrorKind::ConditionFails, "Sigma_mu(j0+1, inf) > |I| e is not certified");
    }
    DegreeResult d = degree(p.weight().mu, len, b0);
    if (!d.finite()) {
        throw Error(ErrorKind::BoundaryUndecidable, "degree of |I| mu at b_0 was not resolved");
    }
    out.bound_one_sided = d.value;
    out.bound_total = is_endpoint(p, x_base) ? d.value : 2 * d.value;
    // Truncating at d + 1 keeps the partial sums up to the first index where
    // they reach e, so the degree and hence the bound are unchanged.
    out.n_bootstrap = ExtNat::of(d.value + 1);
    return out;
}

double distance_to_m_fold_zero(const BangProfile& p, double x_base, std::uint64_t m)
{
    const FullWeight& w = p.weight();
    if (m > 0 && !w.mu.is_finite_at(m)) {
        throw Error(ErrorKind::InvalidRange, "multiplicity m needs m <= N");
    }
    if (!p.contains(x_base)) {
        throw Error(ErrorKind::OutsideDomain, "base point outside the interval");
    }
    Ival v = abs(p.derivative_at(0, x_base));
    if (!(v.lo > chain_zero_tolerance * Ival::from_rational(w.m0).hi)) {
        throw Error(ErrorKind::ConditionFails, "f(x_base) is not certified nonzero");
    }
    Real ratio = Real::from_double(v.lo) / Real(w.m0);
    std::uint64_t j = j0(ratio);
    if (m == 0) {
        return 0.0;
    }
    SumResult s = sigma(w.mu, j + 1, m);
    return (s.enclosure / Enclosure::e(128)).lower();
}

std::uint64_t critical_point_bound(const BangProfile& p, const Real& b, bool has_zero_on_line, double oscillation)
{
    if (!has_zero_on_line) {
        if (!std::isfinite(oscillation) || compare(Real::from_double(oscillation), Real(2L) * b) < 0) {
            throw Error(ErrorKind::ConditionFails, "need a zero on the line or oscillation >= 2b");
        }
    }
    const FullWeight& w = p.weight();
    Real reduced = b / Real(mpq_class(2 * w.m0));
    std::uint64_t j = j0(reduced);
    Real twice = Real(2L) * p.length();
    if (compare_tail(w.mu, j + 1, twice * Real::e()) <= 0) {
        throw Error(ErrorKind::ConditionFails, "Sigma_mu(j0+1, inf) > 2|I| e is not certified");
    }
    DegreeResult d = degree(w.mu, twice, reduced);
    if (!d.finite()) {
        throw Error(ErrorKind::BoundaryUndecidable, "degree of 2|I| mu was not resolved");
    }
    return 2 * d.value;
}

} // namespace tamebounds
