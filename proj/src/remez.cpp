#include "tamebounds/remez.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tamebounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr mpfr_prec_t kPrec = 128;

Enclosure exact(const mpq_class& q) { return Enclosure::exact(q, kPrec); }

Enclosure enclose(const Real& r) { return r.enclose(kPrec); }

Enclosure from_double(double x) { return Enclosure::from_double(x, kPrec); }

void require_positive_measure(const Real& m, const char* what)
{
    if (compare(m, Real(0L)) <= 0) {
        throw Error(ErrorKind::EmptySet, std::string(what) + " has measure zero");
    }
}

Enclosure measure_ratio(const Body& k, const Real& e_measure)
{
    require_positive_measure(e_measure, "the subset");
    if (compare(e_measure, k.volume()) > 0) {
        throw Error(ErrorKind::InvalidRange, "the subset is larger than the body");
    }
    return enclose(k.volume()) / enclose(e_measure);
}

Enclosure dim_factor(const RemezConstants& c, const Body& k)
{
    return c.c_n * Enclosure::exact(static_cast<long>(k.dim()), kPrec);
}

// Sup of s mu~'(s) / mu~(s) over the linear piece [sa, sb] cut at `top`.
// On a linear piece the ratio s b / (a + b s) is monotone, so the piece ends
// suffice; the slope used at a knot is that of the piece to its left, and the
// limit from the right is covered by the next piece.
Enclosure piece_sup(const mpq_class& sa, const Enclosure& mua, const mpq_class& sb, const Enclosure& mub,
                    const mpq_class& top, mpfr_prec_t prec)
{
    Enclosure slope = ((mub - mua) / Enclosure::exact(mpq_class(sb - sa), prec)).clamp_nonnegative();
    mpq_class end = std::max(sa, std::min(sb, top));
    Enclosure at_a = Enclosure::exact(sa, prec) * slope / mua;
    Enclosure mu_end = mua + slope * Enclosure::exact(mpq_class(end - sa), prec);
    Enclosure at_end = Enclosure::exact(end, prec) * slope / mu_end;
    return max(at_a, at_end);
}

// gamma(n) of the piecewise linear extension through (k, mu_k), evaluated
// from enclosures of the weight directly; a single knot is a constant
// extension. Const and Linear weights are affine through their knots.
Enclosure canonical_gamma(const WeightSpec& mu, std::uint64_t n, mpfr_prec_t prec)
{
    std::uint64_t knots = n == 1 && !mu.is_finite_at(2) ? 1 : std::max<std::uint64_t>(n, 2);
    if (!mu.is_finite_at(knots)) {
        throw Error(ErrorKind::ExtensionUnavailable,
                    "mu_" + std::to_string(knots) + " is infinite; the extension needs it to be finite");
    }
    if (mu.kind() == WeightKind::Const || mu.is_constant_like()) {
        return Enclosure::exact(0L, prec);
    }
    if (mu.kind() == WeightKind::Linear) {
        return Enclosure::exact(1L, prec);
    }
    mpq_class top(static_cast<long>(n));
    Enclosure best = Enclosure::exact(0L, prec);
    Enclosure prev = mu.mu_enclosure(1, prec);
    for (std::uint64_t k = 1; k < knots; ++k) {
        if (k >= n && k > 1) {
            break;
        }
        Enclosure next = mu.mu_enclosure(k + 1, prec);
        best = max(best, piece_sup(mpq_class(static_cast<long>(k)), prev, mpq_class(static_cast<long>(k + 1)), next,
                                   top, prec));
        prev = next;
    }
    return best;
}

} // namespace

WeightExtension WeightExtension::piecewise_linear(std::vector<std::pair<mpq_class, Real>> knots)
{
    if (knots.empty()) {
        throw Error(ErrorKind::InvalidRange, "an extension needs at least one knot");
    }
    if (knots.front().first < 1) {
        throw Error(ErrorKind::InvalidRange, "extension knots start at s >= 1");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i - 1].first < knots[i].first)) {
            throw Error(ErrorKind::InvalidRange, "extension knots must be strictly increasing");
        }
        if (compare(knots[i - 1].second, knots[i].second) > 0) {
            throw Error(ErrorKind::InvalidRange, "extension values must be nondecreasing");
        }
    }
    for (const auto& [s, v] : knots) {
        if (compare(v, Real(0L)) <= 0) {
            throw Error(ErrorKind::InvalidRange, "extension values must be positive");
        }
    }
    WeightExtension out;
    out.knots_ = std::move(knots);
    return out;
}

WeightExtension WeightExtension::canonical(const WeightSpec& mu, std::uint64_t n)
{
    std::vector<std::pair<mpq_class, Real>> knots;
    for (std::uint64_t k = 1; k <= std::max<std::uint64_t>(n, 1); ++k) {
        ExtReal v = mu.mu(k);
        if (v.is_inf()) {
            throw Error(ErrorKind::ExtensionUnavailable,
                        "mu_" + std::to_string(k) + " is infinite; the extension needs it to be finite");
        }
        knots.emplace_back(mpq_class(static_cast<long>(k)), v.value());
    }
    return piecewise_linear(std::move(knots));
}

WeightExtension WeightExtension::smooth(const WeightSpec& mu)
{
    WeightExtension out;
    switch (mu.kind()) {
    case WeightKind::Const:
        out.kind_ = Kind::Power;
        out.exponent_ = 0;
        return out;
    case WeightKind::Linear:
        out.kind_ = Kind::Power;
        out.exponent_ = 1;
        return out;
    case WeightKind::Power:
        out.kind_ = Kind::Power;
        out.exponent_ = mu.exponent();
        return out;
    case WeightKind::Geometric:
        out.kind_ = Kind::Exponential;
        out.exponent_ = mu.exponent();
        return out;
    case WeightKind::Table:
        break;
    }
    throw Error(ErrorKind::ExtensionUnavailable, "table weights have no closed-form extension");
}

std::optional<mpq_class> WeightExtension::reach() const
{
    if (kind_ != Kind::PiecewiseLinear) {
        return std::nullopt;
    }
    return knots_.back().first;
}

Enclosure gamma_of(const WeightExtension& ext, std::uint64_t n, mpfr_prec_t prec)
{
    if (n == 0) {
        throw Error(ErrorKind::InvalidRange, "gamma needs n >= 1");
    }
    mpq_class top(static_cast<long>(n));
    switch (ext.kind()) {
    case WeightExtension::Kind::Power:
        return Enclosure::exact(ext.exponent(), prec);
    case WeightExtension::Kind::Exponential:
        // s log r, increasing in s
        return Enclosure::exact(top, prec) * log(Enclosure::exact(ext.exponent(), prec));
    case WeightExtension::Kind::PiecewiseLinear:
        break;
    }
    const auto& knots = ext.knots();
    if (knots.back().first < top) {
        throw Error(ErrorKind::ExtensionUnavailable, "the extension does not cover [1, " + std::to_string(n) + "]");
    }
    Enclosure best = Enclosure::exact(0L, prec);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const auto& [sa, va] = knots[i];
        const auto& [sb, vb] = knots[i + 1];
        if (sa >= top && i > 0) {
            break;
        }
        best = max(best, piece_sup(sa, va.enclose(prec), sb, vb.enclose(prec), top, prec));
    }
    return best;
}

std::optional<Enclosure> gamma_bar(const WeightExtension& ext, mpfr_prec_t prec)
{
    if (ext.kind() == WeightExtension::Kind::Power) {
        return Enclosure::exact(ext.exponent(), prec);
    }
    return std::nullopt;
}

RemezConstants remez_constants(const FullWeight& w, const Real& delta, const Real& b, const RemezOptions& opts)
{
    AdmissibleData data = admissible_data(w, delta, b, false);
    if (!data.admissible) {
        throw Error(ErrorKind::ConditionFails, "Sigma_mu(j0+1, inf) / delta = " + data.tail.to_string(8) +
                                                   " does not exceed e (j0 = " + std::to_string(data.j0) + ")",
                    data.tail.lower(), data.tail.upper());
    }
    RemezConstants out;
    out.n = *data.n;
    out.j0 = data.j0;
    out.tail = data.tail;
    std::uint64_t span = std::max<std::uint64_t>(out.exponent(), 1);
    std::optional<Enclosure> gamma;
    if (opts.smooth_extension) {
        WeightExtension ext = WeightExtension::smooth(w.mu);
        gamma = gamma_bar(ext, kPrec);
        if (!gamma) {
            gamma = gamma_of(ext, span, kPrec);
        }
    } else {
        gamma = canonical_gamma(w.mu, span, kPrec);
    }
    out.gamma = *gamma;
    out.big_gamma = Enclosure::exact(4L, kPrec) * exp(Enclosure::exact(4L, kPrec) + out.gamma);
    out.c_n = out.big_gamma;
    return out;
}

double remez_univariate(const RemezConstants& c, const Body& interval, const MeasurableSet& e, double sup_e)
{
    if (interval.dim() != 1 || e.dim() != 1) {
        throw Error(ErrorKind::ShapeUnsupported, "the univariate Remez bound needs an interval and a 1-D set");
    }
    if (!e.within(interval)) {
        throw Error(ErrorKind::OutsideDomain, "the set is not contained in the interval");
    }
    Enclosure ratio = measure_ratio(interval, Real(e.measure()));
    if (c.degenerate()) {
        return kInf;
    }
    Enclosure factor = pow(c.c_n * ratio, static_cast<long>(c.exponent()));
    return (factor * from_double(sup_e)).upper();
}

double remez_multivariate(const RemezConstants& c, const Body& l, const MeasurableSet& e)
{
    if (e.dim() != l.dim()) {
        throw Error(ErrorKind::InvalidRange, "set and body dimensions differ");
    }
    if (!e.within(l)) {
        throw Error(ErrorKind::OutsideDomain, "the set is not contained in the body");
    }
    return remez_multivariate(c, l, Real(e.measure()));
}

double remez_multivariate(const RemezConstants& c, const Body& l, const Real& e_measure)
{
    measure_ratio(l, e_measure);
    if (c.degenerate()) {
        return kInf;
    }
    auto d = static_cast<unsigned long>(l.dim());
    Enclosure lv = enclose(l.volume());
    Enclosure rest = (lv - enclose(e_measure)).clamp_nonnegative();
    Enclosure lr = root(lv, d);
    Enclosure denom = lr - root(rest, d);
    if (!(denom.lower() > 0)) {
        return kInf;
    }
    return pow(c.c_n * lr / denom, static_cast<long>(c.exponent())).upper();
}

Remez2 remez2(const WeightSpec& mu, const Body& k, const MeasurableSet& e, const RemezOptions& opts)
{
    Remez2 out{remez_constants(FullWeight(mu, 1), k.diameter(), Real(1L), opts), 0};
    out.factor = remez_multivariate(out.constants, k, e);
    return out;
}

double sublevel_volume_bound(const RemezConstants& c, const Body& k, double t, double sup_k)
{
    if (!(t > 0) || !(sup_k > 0)) {
        throw Error(ErrorKind::InvalidRange, "the sublevel bound needs t > 0 and sup_K > 0");
    }
    if (c.degenerate()) {
        return kInf;
    }
    Enclosure frac = pow(from_double(t) / from_double(sup_k), exact(mpq_class(1, c.exponent())));
    return (dim_factor(c, k) * enclose(k.volume()) * frac).upper();
}

double rearrangement_lower_bound(const RemezConstants& c, const Body& k, const Real& e_measure, double lambda,
                                 double sup_k)
{
    if (!(lambda > 0 && lambda < 1)) {
        throw Error(ErrorKind::InvalidRange, "lambda must lie in (0, 1)");
    }
    Enclosure ratio = measure_ratio(k, e_measure);
    if (c.degenerate()) {
        return 0.0;
    }
    Enclosure base = (exact(1) - from_double(lambda)) / (ratio * dim_factor(c, k));
    return std::max(0.0, (from_double(sup_k) * pow(base, static_cast<long>(c.exponent()))).lower());
}

LpExponent LpExponent::finite(double p)
{
    if (!(p > 0) || !std::isfinite(p)) {
        throw Error(ErrorKind::BadExponents, "exponents must be positive");
    }
    return {rational_from_double(p), false};
}

LpFactors lp_comparison_bound(const RemezConstants& c, const Body& k, const Real& e_measure, const LpExponent& p,
                              double q)
{
    if (!(q > 0) || !std::isfinite(q) || (!p.infinite && !(rational_from_double(q) < p.value))) {
        throw Error(ErrorKind::BadExponents, "need 0 < q < p");
    }
    Enclosure ratio = measure_ratio(k, e_measure);
    if (c.degenerate()) {
        return {kInf, kInf, kInf};
    }
    mpq_class qq = rational_from_double(q);
    mpq_class inv_p = p.infinite ? mpq_class(0) : mpq_class(1 / p.value);
    mpq_class holder = 1 - qq * inv_p;   // 1 - q/p
    mpq_class gap = 1 / qq - inv_p;      // 1/q - 1/p
    mpq_class m = c.exponent();
    Enclosure base_e = dim_factor(c, k) * ratio;
    Enclosure base_k = dim_factor(c, k);
    Enclosure moment = exact(2 * qq * (c.n - 1) + 1);
    LpFactors out;
    out.master = (pow(base_e, exact(m * holder)) * pow(moment, exact(gap))).upper();
    out.k = (pow(base_k, exact(m * holder)) * pow(moment, exact(gap))).upper();
    out.e = (pow(base_e, exact(m)) * pow(moment, exact(1 / qq))).upper();
    return out;
}

double mean_oscillation_bound(const RemezConstants& c, const Body& k, const Real& b_measure, bool same_sup)
{
    Enclosure ratio = measure_ratio(k, b_measure);
    if (c.degenerate()) {
        return kInf;
    }
    Enclosure inside = same_sup ? dim_factor(c, k) : dim_factor(c, k) * ratio;
    Enclosure four_m = exact(mpq_class(4 * (c.n - 1)));
    return (four_m * (log(inside) + exact(1))).upper();
}

} // namespace tamebounds
