#include "tamebounds/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tamebounds/errors.hpp"

namespace tamebounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double to_double(const mpq_class& q) { return q.get_d(); }

std::string sizes_string(const ZeroCount& z)
{
    std::string hi = z.hi == SIZE_MAX ? "inf" : std::to_string(z.hi);
    return "[" + std::to_string(z.lo) + "," + hi + "]";
}

std::string count_string(std::uint64_t n) { return "[" + std::to_string(n) + "," + std::to_string(n) + "]"; }

void require_interval(const CertifiedFunction& f, const Body& interval)
{
    if (f.dim() != 1 || interval.shape() != Shape::Interval) {
        throw Error(ErrorKind::ShapeUnsupported, "this check needs a 1-D function on an interval");
    }
}

BangProfile profile_on(const CertifiedFunction& f, const Body& interval)
{
    require_interval(f, interval);
    return BangProfile(f, interval.lower(), interval.upper(), certified_weight(f, interval));
}

void describe(CheckRecord& r, const CertifiedFunction& f, const Body& k)
{
    r.input("f", f.to_spec());
    r.input(k.shape() == Shape::Interval ? "I" : "K", k.to_spec());
}

void describe_constants(CheckRecord& r, const RemezConstants& c)
{
    r.input("N", std::to_string(c.n));
}

// x * y rounded up for nonnegative operands.
double times_up(double x, double y) { return mul_up(x, y); }

// Upper bound for a^e with a >= 0; libm pow is widened by a few ulps.
double pow_up(double a, double e)
{
    if (a == 0) {
        return e == 0 ? 1.0 : 0.0;
    }
    return up(std::pow(a, e), 4);
}

// Upper bound for a^r over r within an ulp of `r` (a^r is monotone in r).
double pow_up_near(double a, double r) { return std::max(pow_up(a, down(r)), pow_up(a, up(r))); }

} // namespace

const char* to_string(CheckVerdict v)
{
    switch (v) {
    case CheckVerdict::Holds:
        return "holds";
    case CheckVerdict::Violated:
        return "violated";
    case CheckVerdict::Inconclusive:
        return "inconclusive";
    case CheckVerdict::Skipped:
        return "skipped";
    }
    return "?";
}

std::string number_string(double x)
{
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string bracket_string(double lo, double hi) { return "[" + number_string(lo) + "," + number_string(hi) + "]"; }

CheckVerdict upper_verdict(const Bracket& oracle, double bound)
{
    if (oracle.hi <= bound) {
        return CheckVerdict::Holds;
    }
    if (oracle.lo > bound) {
        return CheckVerdict::Violated;
    }
    return CheckVerdict::Inconclusive;
}

CheckVerdict lower_verdict(const Bracket& oracle, double bound)
{
    if (oracle.lo >= bound) {
        return CheckVerdict::Holds;
    }
    if (oracle.hi < bound) {
        return CheckVerdict::Violated;
    }
    return CheckVerdict::Inconclusive;
}

CheckVerdict combine(const std::vector<CheckVerdict>& verdicts)
{
    bool all = true;
    for (CheckVerdict v : verdicts) {
        if (v == CheckVerdict::Violated) {
            return v;
        }
        all = all && v == CheckVerdict::Holds;
    }
    return all ? CheckVerdict::Holds : CheckVerdict::Inconclusive;
}

RemezConstants relative_constants(const CertifiedFunction& f, const Body& k, const RemezOptions& opts)
{
    return remez_constants(FullWeight(relative_weight(f, k), 1), k.diameter(), Real(1L), opts);
}

CheckRecord check_zero_bound(const CertifiedFunction& f, const Body& interval, std::optional<double> base)
{
    CheckRecord r;
    r.check = "zero-bound";
    describe(r, f, interval);
    BangProfile p = profile_on(f, interval);
    if (!base) {
        // largest certified |f| on a grid of 33 points (endpoints included)
        double a = to_double(interval.lower());
        double b = to_double(interval.upper());
        double best = -1;
        for (int i = 0; i <= 32; ++i) {
            double x = i == 32 ? b : a + (b - a) * i / 32.0;
            double v = abs(f.eval({x})).lo;
            if (v > best) {
                best = v;
                base = x;
            }
        }
    }
    r.input("x", number_string(*base));
    ZeroBoundReport z = zero_count_bound(p, *base);
    bool poly = f.family() == Family::Polynomial || f.family() == Family::Chebyshev;
    ZeroCount actual = count_zeros(f, interval.lower(), interval.upper(), poly);
    r.bound = count_string(z.bound_total);
    r.oracle = sizes_string(actual);
    if (actual.hi <= z.bound_total) {
        r.verdict = CheckVerdict::Holds;
    } else if (actual.lo > z.bound_total) {
        r.verdict = CheckVerdict::Violated;
    } else {
        r.verdict = CheckVerdict::Inconclusive;
    }
    if (!poly) {
        r.note = "distinct zeros";
    }
    return r;
}

CheckRecord check_bang_chain(const CertifiedFunction& f, const Body& interval, double x_minus1, std::size_t m)
{
    CheckRecord r;
    r.check = "bang-chain";
    describe(r, f, interval);
    r.input("x", number_string(x_minus1));
    r.input("m", std::to_string(m));
    BangProfile p = profile_on(f, interval);
    std::vector<double> x = rolle_chain(p, x_minus1, m);
    ChainResult c = verify_bang_chain(p, x);
    // lower side of the path length against the sum
    r.bound = bracket_string(c.rhs_lo, c.rhs_hi);
    r.oracle = bracket_string(c.lhs.lo, c.lhs.hi);
    if (c.holds) {
        r.verdict = CheckVerdict::Holds;
    } else if (c.lhs.hi < c.rhs_lo) {
        r.verdict = CheckVerdict::Violated;
    } else {
        r.verdict = CheckVerdict::Inconclusive;
    }
    if (c.strict_expected && !c.strict_holds) {
        r.note = "strict inequality not certified";
    }
    return r;
}

CheckRecord check_bang_lemma(const CertifiedFunction& f, const Body& interval, std::uint64_t n, std::uint64_t k,
                             double t, double s)
{
    CheckRecord r;
    r.check = "bang-lemma";
    describe(r, f, interval);
    r.input("n", std::to_string(n));
    r.input("k", std::to_string(k));
    r.input("t", number_string(t));
    r.input("s", number_string(s));
    BangProfile p = profile_on(f, interval);
    BangValue at_s = bang_value(p, n, s);
    BangValue at_t = bang_value(p, n, t);
    r.oracle = bracket_string(at_s.lower, at_s.upper);
    r.bound = bracket_string(at_t.lower, at_t.upper);
    r.note = "bound holds b_n(t), oracle holds b_n(s)";
    switch (check_bang_lemma(p, n, k, t, s)) {
    case Verdict::Holds:
        r.verdict = CheckVerdict::Holds;
        break;
    case Verdict::Violated:
        r.verdict = CheckVerdict::Violated;
        break;
    case Verdict::Inconclusive:
        r.verdict = CheckVerdict::Inconclusive;
        break;
    }
    return r;
}

CheckRecord check_remez_1d(const CertifiedFunction& f, const Body& interval, const MeasurableSet& e)
{
    CheckRecord r;
    r.check = "remez-1d";
    require_interval(f, interval);
    describe(r, f, interval);
    r.input("E", e.to_spec());
    if (!e.within(interval)) {
        throw Error(ErrorKind::InvalidRange, "E must lie in I");
    }
    RemezConstants c = relative_constants(f, interval);
    describe_constants(r, c);
    Bracket sup_e = sup_norm(f, e);
    Bracket sup_i = sup_norm(f, interval);
    double bound = remez_univariate(c, interval, e, sup_e.hi);
    r.bound = bracket_string(bound, bound);
    r.oracle = bracket_string(sup_i.lo, sup_i.hi);
    r.verdict = upper_verdict(sup_i, bound);
    return r;
}

CheckRecord check_remez_nd(const CertifiedFunction& f, const Body& k, const MeasurableSet& e)
{
    CheckRecord r;
    r.check = "remez-nd";
    describe(r, f, k);
    r.input("E", e.to_spec());
    if (!e.within(k)) {
        throw Error(ErrorKind::InvalidRange, "E must lie in K");
    }
    Remez2 rz = remez2(relative_weight(f, k), k, e);
    describe_constants(r, rz.constants);
    Bracket sup_e = sup_norm(f, e);
    Bracket sup_k = sup_norm(f, k);
    double bound = times_up(rz.factor, sup_e.hi);
    r.bound = bracket_string(bound, bound);
    r.oracle = bracket_string(sup_k.lo, sup_k.hi);
    r.verdict = upper_verdict(sup_k, bound);
    return r;
}

CheckRecord check_sublevel(const CertifiedFunction& f, const Body& k, double t)
{
    CheckRecord r;
    r.check = "sublevel";
    describe(r, f, k);
    r.input("t", number_string(t));
    RemezConstants c = relative_constants(f, k);
    describe_constants(r, c);
    Bracket sup_k = sup_norm(f, k);
    Bracket level = measure_sublevel(f, k, t);
    double bound = sublevel_volume_bound(c, k, t, sup_k.lo);
    r.bound = bracket_string(bound, bound);
    r.oracle = bracket_string(level.lo, level.hi);
    r.verdict = upper_verdict(level, bound);
    return r;
}

CheckRecord check_rearrangement(const CertifiedFunction& f, const Body& k, const MeasurableSet& e, double lambda)
{
    CheckRecord r;
    r.check = "rearrange";
    describe(r, f, k);
    r.input("E", e.to_spec());
    r.input("lambda", number_string(lambda));
    if (!e.within(k)) {
        throw Error(ErrorKind::InvalidRange, "E must lie in K");
    }
    RemezConstants c = relative_constants(f, k);
    describe_constants(r, c);
    Bracket sup_k = sup_norm(f, k);
    // y = lambda |E| rounded down keeps the oracle side valid: f* is decreasing
    double y = mul_down(lambda, to_double(e.measure()));
    Bracket value = rearrangement_value(f, e, y);
    double bound = rearrangement_lower_bound(c, k, Real(e.measure()), lambda, sup_k.lo);
    r.bound = bracket_string(bound, bound);
    r.oracle = bracket_string(value.lo, value.hi);
    r.verdict = lower_verdict(value, bound);
    return r;
}

CheckRecord check_lp(const CertifiedFunction& f, const Body& k, const MeasurableSet& e, const LpExponent& p,
                     double q)
{
    CheckRecord r;
    r.check = "lp";
    describe(r, f, k);
    r.input("E", e.to_spec());
    r.input("p", p.infinite ? "inf" : number_string(p.value.get_d()));
    r.input("q", number_string(q));
    if (!e.within(k)) {
        throw Error(ErrorKind::InvalidRange, "E must lie in K");
    }
    RemezConstants c = relative_constants(f, k);
    describe_constants(r, c);
    LpFactors fac = lp_comparison_bound(c, k, Real(e.measure()), p, q);
    double pd = p.infinite ? kInf : p.value.get_d();
    Bracket kp = lp_norm(f, k, pd);
    Bracket kq = lp_norm(f, k, q);
    Bracket eq = lp_norm(f, e, q);
    // q/p and 1 - q/p carry rounding errors below an ulp, covered by pow_up_near
    double ratio = p.infinite ? 0.0 : q / pd;
    double master = times_up(fac.master, times_up(pow_up_near(kq.hi, ratio), pow_up_near(eq.hi, 1 - ratio)));
    double on_k = times_up(fac.k, kq.hi);
    double on_e = times_up(fac.e, eq.hi);
    r.bound = "[" + number_string(master) + "," + number_string(on_k) + "," + number_string(on_e) + "]";
    r.oracle = bracket_string(kp.lo, kp.hi);
    r.verdict = combine({upper_verdict(kp, master), upper_verdict(kp, on_k), upper_verdict(kp, on_e)});
    r.note = "bound lists the master, K and E right-hand sides";
    return r;
}

CheckRecord check_mean_oscillation(const CertifiedFunction& f, const Body& k, const Body& ball)
{
    CheckRecord r;
    r.check = "mo";
    describe(r, f, k);
    r.input("B", ball.to_spec());
    RemezConstants c = relative_constants(f, k);
    describe_constants(r, c);
    double bound = mean_oscillation_bound(c, k, ball.volume(), false);
    r.bound = bracket_string(bound, bound);
    Bracket mo;
    try {
        mo = mean_oscillation(f, ball);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroInBall) {
            throw;
        }
        r.verdict = CheckVerdict::Skipped;
        r.oracle = "[0,inf]";
        r.note = "min |f| on B not certified positive";
        return r;
    }
    r.oracle = bracket_string(mo.lo, mo.hi);
    r.verdict = upper_verdict(mo, bound);
    return r;
}

CheckRecord check_critical(const CertifiedFunction& f, const Body& interval, const Real& b)
{
    CheckRecord r;
    r.check = "critical";
    describe(r, f, interval);
    r.input("b", b.label());
    BangProfile p = profile_on(f, interval);
    ZeroCount zeros = count_zeros(f, interval.lower(), interval.upper(), false);
    bool has_zero = zeros.lo > 0;
    // certified lower bound of the oscillation from grid values
    double a = to_double(interval.lower());
    double w = to_double(interval.upper()) - a;
    double max_lo = -kInf;
    double min_hi = kInf;
    for (int i = 0; i <= 256; ++i) {
        double x = i == 256 ? to_double(interval.upper()) : a + w * i / 256.0;
        if (!p.contains(x)) {
            continue;
        }
        Ival v = f.eval({x});
        max_lo = std::max(max_lo, v.lo);
        min_hi = std::min(min_hi, v.hi);
    }
    double osc = std::max(0.0, add_down(max_lo, -min_hi));
    std::uint64_t bound = critical_point_bound(p, b, has_zero, osc);
    ZeroCount crit = count_zeros(f.derivative(1), interval.lower(), interval.upper(), false);
    r.bound = count_string(bound);
    r.oracle = sizes_string(crit);
    if (crit.hi <= bound) {
        r.verdict = CheckVerdict::Holds;
    } else if (crit.lo > bound) {
        r.verdict = CheckVerdict::Violated;
    } else {
        r.verdict = CheckVerdict::Inconclusive;
    }
    return r;
}

CheckRecord check_scaling(const CertifiedFunction& f, const Body& k, const MeasurableSet& e, const Real& c)
{
    CertifiedFunction g = f.scaled(c);
    CheckRecord a = check_remez_nd(f, k, e);
    CheckRecord b = check_remez_nd(g, k, e);
    CheckRecord r;
    r.check = "scaling";
    describe(r, f, k);
    r.input("E", e.to_spec());
    r.input("c", c.label());
    r.bound = a.bound + " " + to_string(a.verdict);
    r.oracle = b.bound + " " + to_string(b.verdict);
    Remez2 ra = remez2(relative_weight(f, k), k, e);
    Remez2 rb = remez2(relative_weight(g, k), k, e);
    bool same = ra.constants.n == rb.constants.n && ra.factor == rb.factor && a.verdict == b.verdict;
    r.verdict = same ? CheckVerdict::Holds : CheckVerdict::Violated;
    return r;
}

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names{"zero-bound", "bang-chain", "remez-1d", "remez-nd", "sublevel",
                                                "rearrange",  "lp",         "mo",       "critical"};
    return names;
}

} // namespace tamebounds
