#include "tamebounds/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "tamebounds/corpus.hpp"
#include "tamebounds/degrees.hpp"
#include "tamebounds/errors.hpp"

namespace tamebounds {

namespace {

using json = nlohmann::ordered_json;

mpq_class ratio(long num, long den)
{
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

std::string q_string(const mpq_class& q) { return q.get_str(); }

struct Ctx {
    const SuiteConfig& config;
    std::vector<WeightSpec> weights;
    std::vector<CertifiedFunction> functions;
    std::vector<Body> bodies;
    Body fallback = Body::interval(-1, 1);
};

// ---- draws -----------------------------------------------------------------

WeightSpec random_table(Rng& rng)
{
    long len = rng.between(3, 12);
    std::vector<mpq_class> v;
    mpq_class x = ratio(rng.between(1, 8), 8);
    for (long i = 0; i < len; ++i) {
        v.push_back(x);
        x += ratio(rng.between(0, 8), 4);
    }
    return WeightSpec::table(std::move(v));
}

// Long tables of small entries, so that the degree is usually finite.
WeightSpec random_dense_table(Rng& rng)
{
    long len = rng.between(8, 30);
    std::vector<mpq_class> v;
    mpq_class x = ratio(rng.between(1, 8), 16);
    for (long i = 0; i < len; ++i) {
        v.push_back(x);
        x += ratio(rng.between(0, 4), 16);
    }
    return WeightSpec::table(std::move(v));
}

WeightSpec weight_for(const Ctx& ctx, Rng& rng)
{
    if (ctx.weights.empty() || rng.coin()) {
        return random_table(rng);
    }
    return rng.pick(ctx.weights);
}

const Body& body_for(const Ctx& ctx, Rng& rng, bool interval_only)
{
    std::vector<const Body*> pool;
    for (const auto& b : ctx.bodies) {
        if (!interval_only || b.shape() == Shape::Interval) {
            pool.push_back(&b);
        }
    }
    if (pool.empty()) {
        return ctx.fallback;
    }
    return *rng.pick(pool);
}

CertifiedFunction function_for(const Ctx& ctx, Rng& rng, std::size_t d)
{
    std::vector<const CertifiedFunction*> own;
    for (const auto& f : ctx.functions) {
        if (f.dim() == d) {
            own.push_back(&f);
        }
    }
    long choice = rng.between(0, 2);
    if (choice == 0 && !own.empty()) {
        return *rng.pick(own);
    }
    if (d == 1 && choice != 2) {
        return random_polynomial(rng, 6);
    }
    return random_waves(rng, d, 3, d == 1 ? 8 : 4);
}

double random_in(Rng& rng, const Body& interval)
{
    return random_point(rng, interval)[0].get_d();
}

BangProfile profile_for(const CertifiedFunction& f, const Body& interval)
{
    return BangProfile(f, interval.lower(), interval.upper(), certified_weight(f, interval));
}

CheckVerdict le_verdict(const Enclosure& a, const Enclosure& b)
{
    if (a.certainly_less_equal(b)) {
        return CheckVerdict::Holds;
    }
    if (b.certainly_less(a)) {
        return CheckVerdict::Violated;
    }
    return CheckVerdict::Inconclusive;
}

CheckVerdict le_verdict(const SumResult& a, const SumResult& b)
{
    if (a.exact && b.exact) {
        return *a.exact <= *b.exact ? CheckVerdict::Holds : CheckVerdict::Violated;
    }
    return le_verdict(a.enclosure, b.enclosure);
}

std::string degree_string(const DegreeResult& d)
{
    switch (d.status) {
    case DegreeStatus::Finite:
        return std::to_string(d.value);
    case DegreeStatus::Infinite:
        return "INF";
    case DegreeStatus::Unresolved:
        break;
    }
    return ">=" + std::to_string(d.value);
}

std::string count_bracket(std::uint64_t n) { return "[" + std::to_string(n) + "," + std::to_string(n) + "]"; }

// ---- weights ---------------------------------------------------------------

CheckRecord sigma_monotone(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "sigma-monotone";
    WeightSpec mu = weight_for(ctx, rng);
    long m = rng.between(1, 20);
    long m2 = m + rng.between(1, 10);
    long n = m2 + rng.between(0, 10);
    long n2 = n + rng.between(1, 10);
    r.input("mu", mu.to_spec());
    r.input("m", std::to_string(m));
    r.input("m2", std::to_string(m2));
    r.input("n", std::to_string(n));
    r.input("n2", std::to_string(n2));
    SumResult base = sigma(mu, m, n);
    SumResult later_start = sigma(mu, m2, n);
    SumResult later_end = sigma(mu, m, n2);
    r.bound = base.enclosure.to_string();
    r.oracle = later_start.enclosure.to_string() + " " + later_end.enclosure.to_string();
    r.note = "oracle lists sigma(m2,n) and sigma(m,n2)";
    r.verdict = combine({le_verdict(later_start, base), le_verdict(base, later_end)});
    return r;
}

CheckRecord degree_monotone(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "degree-monotone";
    WeightSpec mu = weight_for(ctx, rng);
    mpq_class a1 = ratio(rng.between(1, 16), 8);
    mpq_class a2 = a1 + ratio(rng.between(1, 16), 8);
    mpq_class b1 = ratio(rng.between(1, 64), 32);
    mpq_class b2 = b1 + ratio(rng.between(1, 64), 32);
    r.input("mu", mu.to_spec());
    r.input("a1", q_string(a1));
    r.input("a2", q_string(a2));
    r.input("b1", q_string(b1));
    r.input("b2", q_string(b2));
    DegreeResult d11 = degree(mu, Real(a1), Real(b1));
    DegreeResult d21 = degree(mu, Real(a2), Real(b1));
    DegreeResult d12 = degree(mu, Real(a1), Real(b2));
    r.bound = degree_string(d11);
    r.oracle = degree_string(d21) + " " + degree_string(d12);
    r.note = "oracle lists d(a2,b1) and d(a1,b2)";
    if (d11.status == DegreeStatus::Unresolved || d21.status == DegreeStatus::Unresolved ||
        d12.status == DegreeStatus::Unresolved) {
        r.verdict = CheckVerdict::Inconclusive;
        return r;
    }
    bool ok = d11.degree() <= d21.degree() && d12.degree() <= d11.degree();
    r.verdict = ok ? CheckVerdict::Holds : CheckVerdict::Violated;
    return r;
}

// Tables whose entry mu_{j0+1} sits just below or just above 1/e.
CheckRecord degree_j0(Ctx&, Rng& rng, CheckRecord& r)
{
    r.check = "degree-j0";
    long k = rng.between(0, 5);
    bool below = rng.coin();
    mpq_class pivot = ratio(below ? 36 : 37, 100);
    std::vector<mpq_class> head;
    for (long i = 0; i < k; ++i) {
        head.push_back(ratio(rng.between(1, 36), 100));
    }
    std::sort(head.begin(), head.end());
    head.push_back(pivot);
    mpq_class x = pivot;
    for (long i = rng.between(0, 6); i > 0; --i) {
        x += ratio(rng.between(0, 100), 100);
        head.push_back(x);
    }
    WeightSpec mu = WeightSpec::table(head);
    Real b = Real::exp_of(mpq_class(-k) + ratio(1, 2));
    r.input("mu", mu.to_spec());
    r.input("b", b.label());
    DegreeResult d = degree(mu, Real(1L), b);
    r.bound = std::to_string(d.j0);
    r.oracle = degree_string(d);
    r.note = below ? "mu_{j0+1} < 1/e, expect degree = j0" : "mu_{j0+1} > 1/e, expect degree > j0";
    if (d.status == DegreeStatus::Unresolved) {
        r.verdict = CheckVerdict::Inconclusive;
        return r;
    }
    bool at_least = ExtNat::of(d.j0) <= d.degree();
    bool equal = d.finite() && d.value == d.j0;
    r.verdict = d.j0 == static_cast<std::uint64_t>(k) && at_least && equal == below ? CheckVerdict::Holds
                                                                                    : CheckVerdict::Violated;
    return r;
}

CheckRecord truncation(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "truncation";
    WeightSpec mu = weight_for(ctx, rng);
    mpq_class delta = ratio(rng.between(1, 8), 4);
    mpq_class b = ratio(rng.between(1, 32), 16);
    r.input("mu", mu.to_spec());
    r.input("delta", q_string(delta));
    r.input("b", q_string(b));
    AdmissibleData a = admissible_data(FullWeight(mu, 1), Real(delta), Real(b), false);
    if (!a.admissible || !a.n) {
        r.verdict = CheckVerdict::Skipped;
        r.note = "data not admissible";
        return r;
    }
    r.input("N", std::to_string(*a.n));
    DegreeResult full = degree(mu, Real(delta), Real(b));
    DegreeResult cut = degree(mu.truncated(*a.n), Real(delta), Real(b));
    r.bound = degree_string(full);
    r.oracle = degree_string(cut);
    if (!full.finite() || !cut.finite()) {
        r.verdict = CheckVerdict::Inconclusive;
        return r;
    }
    r.verdict = full.value == cut.value ? CheckVerdict::Holds : CheckVerdict::Violated;
    return r;
}

// ---- degrees ---------------------------------------------------------------

CheckRecord bracket_two_mu(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "bracket-2mu";
    WeightSpec mu = ctx.weights.empty() || rng.coin() ? random_dense_table(rng) : rng.pick(ctx.weights);
    static const std::vector<mpq_class> levels{1, ratio(1, 2), ratio(1, 3), ratio(1, 100)};
    mpq_class b = rng.pick(levels);
    r.input("mu", mu.to_spec());
    r.input("b", q_string(b));
    BracketTwoMu t = bracket_2mu(mu, Real(b));
    r.bound = "[" + std::to_string(2 * t.d_mu) + "," + std::to_string(2 * t.d_mu + 1) + "]";
    r.oracle = count_bracket(t.d_two_mu);
    r.note = "j0 = " + std::to_string(t.j0);
    bool ok = t.shifted_ok && (t.j0 > 0 || t.lhs_ok) && t.const_upper_ok.value_or(true);
    r.verdict = ok ? CheckVerdict::Holds : CheckVerdict::Violated;
    return r;
}

// e lies in [s, s + 2/21!] with s the 20th Taylor partial sum
std::pair<mpq_class, mpq_class> e_bracket()
{
    mpq_class s = 0;
    mpz_class fact = 1;
    for (int k = 0; k <= 20; ++k) {
        if (k > 0) {
            fact *= k;
        }
        s += mpq_class(1) / mpq_class(fact);
    }
    return {s, s + mpq_class(2) / mpq_class(fact * 21)};
}

mpz_class floor_of(const mpq_class& q)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

CheckRecord markov_degree(Ctx&, Rng& rng, CheckRecord& r)
{
    r.check = "markov-degree";
    long n = rng.between(1, 30);
    r.input("n", std::to_string(n));
    DegreeResult d = degree(markov_weight(static_cast<std::uint64_t>(n)).mu, Real(1L), Real(1L));
    auto [lo, hi] = e_bracket();
    mpz_class a = floor_of(lo * n * n);
    mpz_class b = floor_of(hi * n * n);
    r.bound = degree_string(d);
    r.oracle = "[" + a.get_str() + "," + b.get_str() + "]";
    if (a != b) {
        r.verdict = CheckVerdict::Inconclusive;
    } else {
        r.verdict = d.finite() && mpz_class(std::to_string(d.value)) == a ? CheckVerdict::Holds
                                                                           : CheckVerdict::Violated;
    }
    return r;
}

CheckRecord comtet(Ctx&, Rng& rng, CheckRecord& r)
{
    r.check = "comtet";
    mpq_class x = 2 + ratio(rng.between(0, 18 * 4096), 4096);
    r.input("x", q_string(x));
    ComtetBracket c = comtet_bracket(Real(x));
    std::uint64_t n = harmonic_index(x);
    r.bound = "[" + c.lo.get_str() + "," + c.hi.get_str() + "]";
    r.oracle = count_bracket(n);
    mpz_class nz(std::to_string(n));
    bool ok = c.lo <= nz && nz <= c.hi && c.hi - c.lo <= 1;
    r.verdict = ok ? CheckVerdict::Holds : CheckVerdict::Violated;
    return r;
}

// ---- bang ------------------------------------------------------------------

CheckRecord bang_basic(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "bang-sequence";
    const Body& interval = body_for(ctx, rng, true);
    CertifiedFunction f = function_for(ctx, rng, 1);
    auto n = static_cast<std::uint64_t>(rng.between(1, 30));
    double t = random_in(rng, interval);
    r.input("f", f.to_spec());
    r.input("I", interval.to_spec());
    r.input("n", std::to_string(n));
    r.input("t", number_string(t));
    BangProfile p = profile_for(f, interval);
    BangValue now = bang_value(p, n, t);
    BangValue before = bang_value(p, n - 1, t);
    double cap = up(std::exp(-static_cast<double>(n)), 4);
    r.bound = bracket_string(cap, cap);
    r.oracle = bracket_string(now.lower, now.upper);
    r.note = "also b_{n-1}(t) >= b_n(t) on lower sides";
    CheckVerdict decay = upper_verdict(Bracket{now.lower, now.upper}, cap);
    CheckVerdict order = before.lower >= now.lower ? CheckVerdict::Holds : CheckVerdict::Violated;
    r.verdict = combine({decay, order});
    return r;
}

CheckRecord bang_lemma(Ctx& ctx, Rng& rng, CheckRecord&)
{
    const Body& interval = body_for(ctx, rng, true);
    CertifiedFunction f = function_for(ctx, rng, 1);
    auto n = static_cast<std::uint64_t>(rng.between(0, 30));
    auto k = n + static_cast<std::uint64_t>(rng.between(1, 31));
    double t = random_in(rng, interval);
    double s = random_in(rng, interval);
    while (s == t) {
        s = random_in(rng, interval);
    }
    return check_bang_lemma(f, interval, n, k, t, s);
}

CheckRecord zero_bound(Ctx& ctx, Rng& rng, CheckRecord&)
{
    const Body& interval = body_for(ctx, rng, true);
    CertifiedFunction f = function_for(ctx, rng, 1);
    std::optional<double> base;
    if (rng.coin()) {
        base = random_in(rng, interval);
    }
    return check_zero_bound(f, interval, base);
}

// |I| > (1/e) Sigma_mu(j0 + 1, m) for the m zeros right of the left endpoint.
CheckRecord interval_length(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "interval-length";
    const Body& interval = body_for(ctx, rng, true);
    CertifiedFunction f = rng.coin() ? random_root_polynomial(rng, 8, interval.lower(), interval.upper())
                                     : function_for(ctx, rng, 1);
    r.input("f", f.to_spec());
    r.input("I", interval.to_spec());
    BangProfile p = profile_for(f, interval);
    double a = interval.lower().get_d();
    BangValue b0 = bang_value(p, 0, a);
    bool poly = f.family() == Family::Polynomial || f.family() == Family::Chebyshev;
    ZeroCount z = count_zeros(f, interval.lower(), interval.upper(), poly);
    r.input("x", number_string(a));
    if (b0.lower <= 0) {
        r.verdict = CheckVerdict::Skipped;
        r.note = "b_0 at the base point not certified positive";
        return r;
    }
    ExtNat last = p.weight().mu.last_finite();
    if (!last.is_inf() && z.lo > last.get()) {
        r.verdict = CheckVerdict::Skipped;
        r.note = "more zeros than the smoothness index";
        return r;
    }
    // lower side of b_0 gives a larger j0 and a smaller, still valid sum
    std::uint64_t j = j0(Real::from_double(b0.lower));
    std::uint64_t m = z.lo;
    r.input("m", std::to_string(m));
    r.input("j0", std::to_string(j));
    Enclosure len = Enclosure::exact(interval.upper() - interval.lower(), default_precision());
    r.oracle = len.to_string();
    if (m <= j) {
        r.bound = "[0,0]";
        r.verdict = CheckVerdict::Holds;
        return r;
    }
    SumResult s = sigma(p.weight().mu, j + 1, m);
    Enclosure rhs = s.enclosure / Enclosure::e(default_precision());
    r.bound = rhs.to_string();
    if (rhs.certainly_less(len)) {
        r.verdict = CheckVerdict::Holds;
    } else if (len.certainly_less_equal(rhs)) {
        r.verdict = CheckVerdict::Violated;
    } else {
        r.verdict = CheckVerdict::Inconclusive;
    }
    if (!poly) {
        r.note = "distinct zeros";
    }
    return r;
}

CheckRecord bootstrap(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "bootstrap";
    const Body& interval = body_for(ctx, rng, true);
    CertifiedFunction f = function_for(ctx, rng, 1);
    double x = random_in(rng, interval);
    r.input("f", f.to_spec());
    r.input("I", interval.to_spec());
    r.input("x", number_string(x));
    BangProfile p = profile_for(f, interval);
    ZeroBoundReport z = zero_count_bound(p, x);
    if (z.n_bootstrap.is_inf()) {
        r.verdict = CheckVerdict::Skipped;
        r.note = "no finite truncation index";
        return r;
    }
    r.input("N", z.n_bootstrap.to_string());
    BangProfile cut(f, interval.lower(), interval.upper(), p.weight().truncated(z.n_bootstrap.get()));
    ZeroBoundReport z2 = zero_count_bound(cut, x);
    r.bound = count_bracket(z.bound_total);
    r.oracle = count_bracket(z2.bound_total);
    r.verdict = z.bound_total == z2.bound_total ? CheckVerdict::Holds : CheckVerdict::Violated;
    return r;
}

CheckRecord chain(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    const Body& interval = body_for(ctx, rng, true);
    // roots inside I make Rolle chains exist more often
    CertifiedFunction f = rng.coin() ? random_root_polynomial(rng, 8, interval.lower(), interval.upper())
                                     : function_for(ctx, rng, 1);
    double x = random_in(rng, interval);
    auto m = static_cast<std::size_t>(rng.between(0, 4));
    r.check = "bang-chain";
    r.input("f", f.to_spec());
    r.input("I", interval.to_spec());
    r.input("x", number_string(x));
    r.input("m", std::to_string(m));
    return check_bang_chain(f, interval, x, m);
}

CheckRecord critical(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    const Body& interval = body_for(ctx, rng, true);
    CertifiedFunction f = function_for(ctx, rng, 1);
    long frac = rng.between(1, 8);
    r.check = "critical";
    r.input("f", f.to_spec());
    r.input("I", interval.to_spec());
    Bracket sup = sup_norm(f, interval);
    if (!(sup.lo > 0)) {
        r.verdict = CheckVerdict::Skipped;
        r.note = "sup norm not certified positive";
        return r;
    }
    Real b(rational_from_double(sup.lo) * ratio(frac, 16));
    return check_critical(f, interval, b);
}

// ---- remez -----------------------------------------------------------------

// Bound-producing arithmetic against a 1024-bit evaluation from the lower side
// of C_N: the double result must not fall below it.
CheckRecord rounding(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "rounding";
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    MeasurableSet e = random_set(rng, k);
    r.input("f", f.to_spec());
    r.input("K", k.to_spec());
    r.input("E", e.to_spec());
    RemezConstants c = relative_constants(f, k);
    r.input("N", std::to_string(c.n));
    if (c.degenerate()) {
        r.verdict = CheckVerdict::Skipped;
        r.note = "N - 1 = 0";
        return r;
    }
    constexpr mpfr_prec_t kRef = 1024;
    Enclosure cn = Enclosure::exact(rational_from_double(c.c_n.lower()), kRef);
    Enclosure vol = k.volume().enclose(kRef);
    Enclosure em = Enclosure::exact(e.measure(), kRef);
    auto d = static_cast<unsigned long>(k.dim());
    auto ex = static_cast<long>(c.exponent());
    Enclosure l = root(vol, d);
    Enclosure multi_ref = pow(cn * l / (l - root(vol - em, d)), ex);
    double multi = remez_multivariate(c, k, e);
    std::vector<CheckVerdict> verdicts{lower_verdict(Bracket{multi, multi}, multi_ref.lower())};
    r.bound = bracket_string(multi, multi);
    r.oracle = bracket_string(multi_ref.lower(), multi_ref.upper());
    if (k.shape() == Shape::Interval) {
        Enclosure uni_ref = pow(cn * vol / em, ex);
        double uni = remez_univariate(c, k, e, 1.0);
        verdicts.push_back(lower_verdict(Bracket{uni, uni}, uni_ref.lower()));
        r.bound += " " + bracket_string(uni, uni);
        r.oracle += " " + bracket_string(uni_ref.lower(), uni_ref.upper());
    }
    r.note = "multivariate factor, then the univariate one for intervals";
    r.verdict = combine(verdicts);
    return r;
}

CheckRecord remez_1d(Ctx& ctx, Rng& rng, CheckRecord&)
{
    const Body& interval = body_for(ctx, rng, true);
    CertifiedFunction f = function_for(ctx, rng, 1);
    return check_remez_1d(f, interval, random_set(rng, interval));
}

CheckRecord remez_nd(Ctx& ctx, Rng& rng, CheckRecord&)
{
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    return check_remez_nd(f, k, random_set(rng, k));
}

CheckRecord sublevel(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    double decades = 6 * rng.unit();
    r.check = "sublevel";
    r.input("f", f.to_spec());
    r.input("K", k.to_spec());
    Bracket sup = sup_norm(f, k);
    double t = sup.lo * std::pow(10.0, -decades);
    if (!(t > 0)) {
        r.verdict = CheckVerdict::Skipped;
        r.note = "sup norm not certified positive";
        return r;
    }
    return check_sublevel(f, k, t);
}

CheckRecord rearrange(Ctx& ctx, Rng& rng, CheckRecord&)
{
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    MeasurableSet e = random_set(rng, k);
    double lambda = 0.05 + 0.9 * rng.unit();
    return check_rearrangement(f, k, e, lambda);
}

CheckRecord lp(Ctx& ctx, Rng& rng, CheckRecord&)
{
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    MeasurableSet e = random_set(rng, k);
    long which = rng.between(0, 2);
    LpExponent p = which == 0 ? LpExponent::inf() : LpExponent::finite(which == 1 ? 4.0 : 2.0);
    static const std::vector<double> below_two{0.5, 1.0, 1.5};
    double q = rng.pick(below_two);
    return check_lp(f, k, e, p, q);
}

CheckRecord mo(Ctx& ctx, Rng& rng, CheckRecord&)
{
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = rng.coin() ? random_offset_waves(rng, k.dim(), k.dim() == 1 ? 6 : 3)
                                     : function_for(ctx, rng, k.dim());
    Body ball = random_ball(rng, k);
    return check_mean_oscillation(f, k, ball);
}

CheckRecord scaling(Ctx& ctx, Rng& rng, CheckRecord&)
{
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    MeasurableSet e = random_set(rng, k);
    return check_scaling(f, k, e, Real(ratio(73, 10)));
}

CheckRecord factor_monotone(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "factor-monotone";
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    long u1 = rng.between(1, 62);
    long u2 = rng.between(u1 + 1, 63);
    r.input("f", f.to_spec());
    r.input("K", k.to_spec());
    r.input("E1", q_string(ratio(u1, 64)) + "|K|");
    r.input("E2", q_string(ratio(u2, 64)) + "|K|");
    RemezConstants c = relative_constants(f, k);
    r.input("N", std::to_string(c.n));
    double small = remez_multivariate(c, k, Real(ratio(u1, 64)) * k.volume());
    double large = remez_multivariate(c, k, Real(ratio(u2, 64)) * k.volume());
    r.bound = bracket_string(small, small);
    r.oracle = bracket_string(large, large);
    r.note = "bound is the factor for the smaller set";
    r.verdict = large <= small ? CheckVerdict::Holds : CheckVerdict::Violated;
    return r;
}

// ---- oracle ----------------------------------------------------------------

CheckRecord weight_cert(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "weight-cert";
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    r.input("f", f.to_spec());
    r.input("K", k.to_spec());
    FullWeight w = certified_weight(f, k);
    std::uint64_t top = 12;
    if (!w.mu.last_finite().is_inf()) {
        top = std::min<std::uint64_t>(top, w.mu.last_finite().get());
    }
    double slack = 1 + ctx.config.weight_spot_check;
    double worst_lo = 0;
    double worst_hi = 0;
    CheckVerdict v = CheckVerdict::Holds;
    for (int i = 0; i < 16; ++i) {
        Point q = random_point(rng, k);
        std::vector<double> x;
        for (const auto& c : q) {
            x.push_back(c.get_d());
        }
        if (!k.contains(x)) {
            continue;
        }
        for (std::uint64_t j = 0; j <= top; ++j) {
            double mj = w.M_enclosure(j, default_precision()).upper() * slack;
            Ival norm = f.frechet_at(static_cast<unsigned>(j), x);
            worst_lo = std::max(worst_lo, norm.lo / mj);
            worst_hi = std::max(worst_hi, norm.hi / mj);
            v = combine({v, upper_verdict(Bracket{norm.lo, norm.hi}, mj)});
        }
    }
    r.input("j_max", std::to_string(top));
    r.bound = "[1,1]";
    r.oracle = bracket_string(worst_lo, worst_hi);
    r.note = "oracle is the largest ratio ||f||_j(x) / (M_j (1 + slack))";
    r.verdict = v;
    return r;
}

CheckRecord zero_measure(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "zero-measure";
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    r.input("f", f.to_spec());
    r.input("K", k.to_spec());
    // the hypotheses of the zero-set theorem are the admissibility of the data
    relative_constants(f, k);
    FullWeight w = certified_weight(f, k);
    double t = 1e-6 * w.m0.get_d();
    r.input("t", number_string(t));
    Bracket level = measure_sublevel(f, k, t);
    double cap = ctx.config.zero_measure_fraction * k.volume().lower();
    r.bound = bracket_string(cap, cap);
    r.oracle = bracket_string(level.lo, level.hi);
    r.verdict = upper_verdict(level, cap);
    return r;
}

Poly compose_affine(const Poly& p, const mpq_class& x0, const mpq_class& v)
{
    Poly line({x0, v});
    const auto& c = p.coefficients();
    Poly out = Poly::constant(c.empty() ? mpq_class(0) : c.back());
    for (std::size_t i = c.size(); i-- > 1;) {
        out = out * line + Poly::constant(c[i - 1]);
    }
    return out;
}

CheckRecord restriction(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "restriction";
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    bool poly = f.family() == Family::Polynomial || f.family() == Family::Chebyshev;
    Point x0;
    Point x1;
    if (poly) {
        // the whole interval, in either direction
        x0 = {k.lower()};
        x1 = {k.upper()};
        if (rng.coin()) {
            std::swap(x0, x1);
        }
    } else {
        x0 = random_point(rng, k);
        x1 = random_point(rng, k);
        if (x0 == x1) {
            x1 = random_point(rng, k);
        }
    }
    r.input("f", f.to_spec());
    r.input("K", k.to_spec());
    std::string seg;
    for (const auto* pt : {&x0, &x1}) {
        std::string s;
        for (const auto& c : *pt) {
            s += (s.empty() ? "" : ",") + q_string(c);
        }
        seg += (seg.empty() ? "" : "|") + s;
    }
    r.input("segment", seg);
    if (x0 == x1) {
        r.verdict = CheckVerdict::Skipped;
        r.note = "degenerate segment";
        return r;
    }
    FullWeight w = certified_weight(f, k);
    Restriction res = restrict_to_line(f, w, x0, x1);
    FullWeight direct = certified_weight(res.g, Body::interval(0, 1));
    std::vector<CheckVerdict> verdicts;
    // values agree along the segment
    for (int i = 0; i <= 4; ++i) {
        double t = i / 4.0;
        std::vector<double> x;
        for (std::size_t j = 0; j < x0.size(); ++j) {
            x.push_back(mpq_class(x0[j] + (x1[j] - x0[j]) * ratio(i, 4)).get_d());
        }
        Ival a = res.g.eval({t});
        Ival b = f.eval(x);
        verdicts.push_back(a.hi < b.lo || b.hi < a.lo ? CheckVerdict::Violated : CheckVerdict::Holds);
    }
    Enclosure restricted = res.weight.mu.mu(1).enclose(256);
    Enclosure ref = direct.mu.mu(1).enclose(256);
    r.bound = restricted.to_string();
    r.oracle = ref.to_string();
    if (poly) {
        r.note = "polynomial coefficients and mu_1 compared exactly";
        Poly expected = compose_affine(f.poly(), x0[0], x1[0] - x0[0]);
        verdicts.push_back(res.g.poly() == expected ? CheckVerdict::Holds : CheckVerdict::Violated);
        auto a = res.weight.mu.mu(1).value().rational();
        auto b = direct.mu.mu(1).value().rational();
        if (a && b) {
            verdicts.push_back(*a == *b ? CheckVerdict::Holds : CheckVerdict::Violated);
        } else {
            verdicts.push_back(CheckVerdict::Inconclusive);
        }
    } else {
        // the direct weight of the restricted waves never exceeds the scaled one
        r.note = "direct weight of the restriction against the scaled weight";
        verdicts.push_back(le_verdict(ref, restricted));
    }
    r.verdict = combine(verdicts);
    return r;
}

// ---- cli -------------------------------------------------------------------

CheckRecord roundtrip(Ctx& ctx, Rng& rng, CheckRecord& r)
{
    r.check = "roundtrip";
    const Body& k = body_for(ctx, rng, false);
    CertifiedFunction f = function_for(ctx, rng, k.dim());
    WeightSpec mu = weight_for(ctx, rng);
    if (rng.coin() && mu.last_finite().is_inf()) {
        mu = mu.truncated(static_cast<std::uint64_t>(rng.between(1, 20)));
    }
    MeasurableSet e = random_set(rng, k);
    std::vector<CheckVerdict> verdicts;
    auto same = [&](const std::string& a, const std::string& b) {
        verdicts.push_back(a == b ? CheckVerdict::Holds : CheckVerdict::Violated);
    };
    std::string fs = f.to_spec();
    CertifiedFunction f2 = parse_function(fs);
    same(fs, f2.to_spec());
    std::vector<double> x;
    for (const auto& c : random_point(rng, k)) {
        x.push_back(c.get_d());
    }
    Ival a = f.eval(x);
    Ival b = f2.eval(x);
    verdicts.push_back(a.lo == b.lo && a.hi == b.hi ? CheckVerdict::Holds : CheckVerdict::Violated);
    Body k2 = parse_body(k.to_spec());
    same(k.to_spec(), k2.to_spec());
    // volumes may be irrational (balls), so compare their enclosures
    verdicts.push_back(k.volume().enclose(256).to_string() == k2.volume().enclose(256).to_string()
                           ? CheckVerdict::Holds
                           : CheckVerdict::Violated);
    WeightSpec mu2 = parse_weight(mu.to_spec());
    verdicts.push_back(mu == mu2 ? CheckVerdict::Holds : CheckVerdict::Violated);
    MeasurableSet e2 = parse_set(e.to_spec(), e.dim());
    same(e.to_spec(), e2.to_spec());
    verdicts.push_back(e.measure() == e2.measure() ? CheckVerdict::Holds : CheckVerdict::Violated);
    r.input("f", fs);
    r.input("K", k.to_spec());
    r.input("mu", mu.to_spec());
    r.input("E", e.to_spec());
    r.bound = "[" + std::to_string(verdicts.size()) + "," + std::to_string(verdicts.size()) + "]";
    std::size_t equal = std::count(verdicts.begin(), verdicts.end(), CheckVerdict::Holds);
    r.oracle = "[" + std::to_string(equal) + "," + std::to_string(equal) + "]";
    r.note = "re-parsed values equal to the originals";
    r.verdict = combine(verdicts);
    return r;
}

// ---- registry --------------------------------------------------------------

using Property = CheckRecord (*)(Ctx&, Rng&, CheckRecord&);

const std::vector<std::pair<std::string, Property>>& registry()
{
    static const std::vector<std::pair<std::string, Property>> props{
        {"weights.sigma-monotone", sigma_monotone},
        {"weights.degree-monotone", degree_monotone},
        {"weights.degree-j0", degree_j0},
        {"weights.truncation", truncation},
        {"degrees.bracket-2mu", bracket_two_mu},
        {"degrees.markov", markov_degree},
        {"degrees.comtet", comtet},
        {"bang.sequence", bang_basic},
        {"bang.lemma", bang_lemma},
        {"bang.zero-bound", zero_bound},
        {"bang.interval-length", interval_length},
        {"bang.bootstrap", bootstrap},
        {"bang.chain", chain},
        {"bang.critical", critical},
        {"remez.rounding", rounding},
        {"remez.remez-1d", remez_1d},
        {"remez.remez-nd", remez_nd},
        {"remez.sublevel", sublevel},
        {"remez.rearrange", rearrange},
        {"remez.lp", lp},
        {"remez.mo", mo},
        {"remez.scaling", scaling},
        {"remez.monotone", factor_monotone},
        {"oracle.weight-cert", weight_cert},
        {"oracle.zero-measure", zero_measure},
        {"oracle.restriction", restriction},
        {"cli.roundtrip", roundtrip},
    };
    return props;
}

CheckRecord run_one(Ctx& ctx, const std::string& id, Property prop, std::uint64_t trial)
{
    Rng rng(ctx.config.seed, id, trial);
    CheckRecord draw;
    draw.check = id.substr(id.find('.') + 1);
    CheckRecord out;
    try {
        out = prop(ctx, rng, draw);
    } catch (const Error& e) {
        bool undecided = e.kind() == ErrorKind::Inconclusive || e.kind() == ErrorKind::BoundaryUndecidable;
        draw.verdict = undecided ? CheckVerdict::Inconclusive : CheckVerdict::Skipped;
        draw.note = e.what();
        if (draw.oracle.empty() && e.bracket()) {
            draw.oracle = bracket_string(e.bracket()->first, e.bracket()->second);
        }
        out = std::move(draw);
    }
    // records that stopped before computing a side carry the uninformative bracket
    for (auto* side : {&out.bound, &out.oracle}) {
        if (side->empty()) {
            *side = "[0,inf]";
        }
    }
    return out;
}

void tally(SuiteSummary& s, CheckVerdict v)
{
    ++s.total;
    switch (v) {
    case CheckVerdict::Holds:
        ++s.holds;
        break;
    case CheckVerdict::Violated:
        ++s.violated;
        break;
    case CheckVerdict::Inconclusive:
        ++s.inconclusive;
        break;
    case CheckVerdict::Skipped:
        ++s.skipped;
        break;
    }
}

std::vector<std::string> string_list(const json& j, const char* key)
{
    std::vector<std::string> out;
    if (!j.contains(key)) {
        return out;
    }
    if (!j[key].is_array()) {
        throw Error(ErrorKind::ParseError, std::string(key) + " must be a list of strings");
    }
    for (const auto& v : j[key]) {
        if (!v.is_string()) {
            throw Error(ErrorKind::ParseError, std::string(key) + " must be a list of strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::uint64_t natural(const json& j, const std::string& what)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        throw Error(ErrorKind::ParseError, what + " must be a nonnegative integer");
    }
    return j.get<std::uint64_t>();
}

double positive(const json& j, const std::string& what)
{
    if (!j.is_number() || !(j.get<double>() > 0)) {
        throw Error(ErrorKind::ParseError, what + " must be a positive number");
    }
    return j.get<double>();
}

json config_json(const SuiteConfig& c)
{
    json j;
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    json over = json::object();
    for (const auto& [k, v] : c.trial_overrides) {
        over[k] = v;
    }
    j["trial_overrides"] = over;
    j["weights"] = c.weights;
    j["functions"] = c.functions;
    j["bodies"] = c.bodies;
    j["tolerances"] = {{"weight_spot_check", c.weight_spot_check},
                       {"zero_measure_fraction", c.zero_measure_fraction}};
    j["precision_cap"] = c.precision_cap;
    return j;
}

json record_object(const CheckRecord& r)
{
    json j;
    j["check"] = r.check;
    json in = json::object();
    for (const auto& [k, v] : r.inputs) {
        in[k] = v;
    }
    j["inputs"] = in;
    j["bound"] = r.bound;
    j["oracle"] = r.oracle;
    j["verdict"] = to_string(r.verdict);
    if (!r.note.empty()) {
        j["note"] = r.note;
    }
    return j;
}

} // namespace

std::uint64_t SuiteConfig::trials_for(const std::string& id) const
{
    auto it = trial_overrides.find(id);
    return it == trial_overrides.end() ? trials : it->second;
}

SuiteConfig parse_suite_config(const std::string& json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw Error(ErrorKind::ParseError, "config must be a JSON object");
    }
    static const std::set<std::string> known{"seed",   "trials",     "trial_overrides", "weights",
                                             "functions", "bodies",  "tolerances",      "precision_cap"};
    for (const auto& [k, v] : j.items()) {
        if (!known.count(k)) {
            throw Error(ErrorKind::ParseError, "unknown config key '" + k + "'");
        }
    }
    SuiteConfig c;
    if (j.contains("seed")) {
        c.seed = natural(j["seed"], "seed");
    }
    if (j.contains("trials")) {
        c.trials = natural(j["trials"], "trials");
    }
    if (j.contains("trial_overrides")) {
        if (!j["trial_overrides"].is_object()) {
            throw Error(ErrorKind::ParseError, "trial_overrides must be an object");
        }
        const auto& ids = property_ids();
        for (const auto& [k, v] : j["trial_overrides"].items()) {
            if (std::find(ids.begin(), ids.end(), k) == ids.end()) {
                throw Error(ErrorKind::ParseError, "unknown property '" + k + "'");
            }
            c.trial_overrides[k] = natural(v, "trial_overrides." + k);
        }
    }
    c.weights = string_list(j, "weights");
    c.functions = string_list(j, "functions");
    c.bodies = string_list(j, "bodies");
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) {
            throw Error(ErrorKind::ParseError, "tolerances must be an object");
        }
        for (const auto& [k, v] : t.items()) {
            if (k == "weight_spot_check") {
                c.weight_spot_check = positive(v, k);
            } else if (k == "zero_measure_fraction") {
                c.zero_measure_fraction = positive(v, k);
            } else {
                throw Error(ErrorKind::ParseError, "unknown tolerance '" + k + "'");
            }
        }
    }
    if (j.contains("precision_cap")) {
        std::uint64_t cap = natural(j["precision_cap"], "precision_cap");
        if (cap < 128 || cap > (1u << 20)) {
            throw Error(ErrorKind::ParseError, "precision_cap must lie in [128, 1048576]");
        }
        c.precision_cap = static_cast<long>(cap);
    }
    // specs must parse now rather than halfway through a run
    for (const auto& s : c.weights) {
        parse_weight(s);
    }
    for (const auto& s : c.functions) {
        parse_function(s);
    }
    for (const auto& s : c.bodies) {
        parse_body(s);
    }
    return c;
}

const std::vector<std::string>& property_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& [id, prop] : registry()) {
            out.push_back(id);
        }
        return out;
    }();
    return ids;
}

SuiteReport run_suite(const SuiteConfig& config, const std::vector<std::string>& only,
                      const std::function<void(const std::string&, const SuiteSummary&)>& progress)
{
    Ctx ctx{config, {}, {}, {}};
    for (const auto& s : config.weights) {
        ctx.weights.push_back(parse_weight(s));
    }
    for (const auto& s : config.functions) {
        ctx.functions.push_back(parse_function(s));
    }
    for (const auto& s : config.bodies) {
        ctx.bodies.push_back(parse_body(s));
    }
    mpfr_prec_t saved_cap = precision_cap();
    set_precision_cap(config.precision_cap);
    SuiteReport report{config, {}, {}};
    try {
        for (const auto& [id, prop] : registry()) {
            if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) {
                continue;
            }
            SuiteSummary mine;
            std::uint64_t n = config.trials_for(id);
            for (std::uint64_t trial = 0; trial < n; ++trial) {
                auto start = std::chrono::steady_clock::now();
                CheckRecord rec = run_one(ctx, id, prop, trial);
                std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
                char suffix[24];
                std::snprintf(suffix, sizeof suffix, "/%04llu", static_cast<unsigned long long>(trial));
                tally(report.summary, rec.verdict);
                tally(mine, rec.verdict);
                report.records.push_back({id + suffix, std::move(rec), took.count()});
            }
            if (progress) {
                progress(id, mine);
            }
        }
    } catch (...) {
        set_precision_cap(saved_cap);
        throw;
    }
    set_precision_cap(saved_cap);
    return report;
}

std::string record_json(const CheckRecord& record) { return record_object(record).dump(2); }

std::string report_json(const SuiteReport& report, bool timing)
{
    json j;
    j["tool"] = "tamebounds";
    j["version"] = tool_version();
    j["seed"] = report.config.seed;
    j["config"] = config_json(report.config);
    json records = json::array();
    for (const auto& r : report.records) {
        json o;
        o["id"] = r.id;
        json fields = record_object(r.record);
        for (const auto& [k, v] : fields.items()) {
            o[k] = v;
        }
        if (timing) {
            o["seconds"] = r.seconds;
        }
        records.push_back(std::move(o));
    }
    j["records"] = std::move(records);
    const SuiteSummary& s = report.summary;
    j["summary"] = {{"total", s.total},
                    {"holds", s.holds},
                    {"violated", s.violated},
                    {"inconclusive", s.inconclusive},
                    {"skipped", s.skipped}};
    return j.dump(2) + "\n";
}

const char* tool_version() { return TAMEBOUNDS_VERSION; }

} // namespace tamebounds
