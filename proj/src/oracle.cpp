#include "tamebounds/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace tamebounds {

namespace {

struct Node {
    Cell cell;
    CellClass cls;
    int depth;
};

std::vector<Node> start_nodes(const Region& s)
{
    std::vector<Node> out;
    for (auto& [cell, cls] : s.initial_cells()) {
        if (cls != CellClass::Outside) {
            out.push_back({cell, cls, 0});
        }
    }
    return out;
}

std::vector<Node> children(const Region& s, const Node& n)
{
    auto [l, r] = bisect(n.cell);
    std::vector<Node> out;
    for (auto* c : {&l, &r}) {
        CellClass cls = n.cls == CellClass::Inside ? CellClass::Inside : s.classify(*c);
        if (cls != CellClass::Outside) {
            out.push_back({std::move(*c), cls, n.depth + 1});
        }
    }
    return out;
}

// the depth cap counts bisections per axis
int depth_limit(const OracleOptions& opts, std::size_t dim) { return opts.depth_cap * static_cast<int>(dim); }

double sum_up(double a, double b) { return (Ival(a) + Ival(b)).hi; }

mpq_class rational_up(double x) { return rational_from_double(x); }

void require_1d(const Body& k, const char* what)
{
    if (k.dim() != 1) {
        throw Error(ErrorKind::ShapeUnsupported, std::string(what) + " needs a 1-D interval");
    }
}

mpq_class wave_frequency_bound(const CertifiedFunction& f)
{
    mpq_class best = 0;
    for (const auto& w : f.wave_list()) {
        mpq_class s = 0;
        for (const auto& a : w.a) {
            s += abs_upper(a);
        }
        best = std::max(best, s);
    }
    return best;
}

mpq_class wave_coefficient_bound(const CertifiedFunction& f)
{
    mpq_class s = 0;
    for (const auto& w : f.wave_list()) {
        s += abs_upper(w.c);
    }
    return s;
}

} // namespace

mpq_class abs_upper(const Real& r)
{
    if (r.is_rational()) {
        return abs(*r.rational());
    }
    return rational_up(Ival::from_real(r).mag());
}

FullWeight certified_weight(const CertifiedFunction& f, const Body& k, const OracleOptions& opts)
{
    if (f.dim() != k.dim()) {
        throw Error(ErrorKind::OutsideDomain, "function and body dimensions differ");
    }
    switch (f.family()) {
    case Family::Polynomial:
    case Family::Chebyshev: {
        require_1d(k, "a polynomial weight");
        int n = f.poly().degree();
        mpq_class len = k.upper() - k.lower();
        WeightSpec mu = n <= 0 ? WeightSpec::constant(Real(mpq_class(1)))
                               : WeightSpec::constant(Real(mpq_class(2 * n * n) / len));
        if (f.family() == Family::Chebyshev && k.lower() == -1 && k.upper() == 1) {
            return {mu, abs_upper(f.amplitude())};
        }
        return {mu, rational_up(sup_norm(f, k, opts).hi)};
    }
    case Family::Waves: {
        mpq_class a = wave_frequency_bound(f);
        WeightSpec mu = WeightSpec::constant(Real(a == 0 ? mpq_class(1) : a));
        return {mu, abs_upper(f.amplitude()) * wave_coefficient_bound(f)};
    }
    case Family::Exp: {
        require_1d(k, "an exponential weight");
        mpq_class a = abs(f.rate());
        WeightSpec mu = WeightSpec::constant(Real(a == 0 ? mpq_class(1) : a));
        mpq_class top = std::max(f.rate() * k.lower(), f.rate() * k.upper());
        return {mu, abs_upper(f.amplitude()) * abs_upper(Real::exp_of(top))};
    }
    }
    throw Error(ErrorKind::DomainError, "unknown family");
}

WeightSpec relative_weight(const CertifiedFunction& f, const Body& k, const OracleOptions& opts)
{
    if (f.dim() != k.dim()) {
        throw Error(ErrorKind::OutsideDomain, "function and body dimensions differ");
    }
    switch (f.family()) {
    case Family::Polynomial:
    case Family::Chebyshev:
    case Family::Exp:
        return certified_weight(f.base(), k, opts).mu;
    case Family::Waves: {
        mpq_class a = wave_frequency_bound(f);
        if (a == 0) {
            return WeightSpec::constant(Real(mpq_class(1)));
        }
        OracleOptions coarse = opts;
        coarse.rel_tol = 1e-3;
        double sup_lo = sup_norm(f.base(), k, coarse).lo;
        if (!(sup_lo > 0)) {
            throw Error(ErrorKind::Inconclusive, "cannot certify a positive sup norm for " + f.to_spec());
        }
        Ival ratio = Ival::from_rational(wave_coefficient_bound(f)) / Ival(sup_lo);
        mpq_class rho = std::max(mpq_class(1), rational_up(ratio.hi));
        return WeightSpec::constant(Real(mpq_class(a * rho)));
    }
    }
    throw Error(ErrorKind::DomainError, "unknown family");
}

Bracket sup_norm(const CertifiedFunction& f, const Region& s, const OracleOptions& opts)
{
    struct Item {
        double upper;
        Node node;
        bool operator<(const Item& o) const { return upper < o.upper; }
    };
    double lower = 0;
    auto sample = [&](const Cell& c) {
        auto x = cell_center(c);
        if (s.contains(x)) {
            lower = std::max(lower, abs(f.eval(x)).lo);
        }
    };
    std::priority_queue<Item> queue;
    for (auto& n : start_nodes(s)) {
        sample(n.cell);
        double up = abs(f.range(n.cell)).hi;
        queue.push({up, std::move(n)});
    }
    double frozen = 0;
    std::size_t processed = 0;
    while (!queue.empty()) {
        const Item& top = queue.top();
        double tol = opts.rel_tol * lower;
        if (top.upper <= lower + tol) {
            break;
        }
        if (top.node.depth >= depth_limit(opts, s.dim())) {
            frozen = std::max(frozen, top.upper);
            queue.pop();
            continue;
        }
        if (++processed > opts.max_cells) {
            break;
        }
        Node n = top.node;
        queue.pop();
        for (auto& c : children(s, n)) {
            sample(c.cell);
            double up = abs(f.range(c.cell)).hi;
            queue.push({up, std::move(c)});
        }
    }
    Bracket out;
    out.lo = lower;
    out.hi = std::max({frozen, lower, queue.empty() ? 0.0 : queue.top().upper});
    out.converged = out.hi <= lower + opts.rel_tol * lower;
    return out;
}

Bracket measure_sublevel(const CertifiedFunction& f, const Region& s, double t, OracleOptions opts)
{
    struct Item {
        double vol;
        Node node;
        bool operator<(const Item& o) const { return vol < o.vol; }
    };
    Ival total = s.measure();
    Ival inside(0.0);
    std::priority_queue<Item> undecided;
    std::vector<double> parked;
    double gap = 0;
    auto consider = [&](Node n) {
        Ival r = abs(f.range(n.cell));
        if (r.lo > t) {
            return;
        }
        Ival v = cell_volume(n.cell);
        if (r.hi <= t && n.cls == CellClass::Inside) {
            inside += v;
            return;
        }
        gap += v.hi;
        undecided.push({v.hi, std::move(n)});
    };
    for (auto& n : start_nodes(s)) {
        consider(std::move(n));
    }
    std::size_t processed = 0;
    double target = opts.rel_tol * total.hi;
    while (!undecided.empty() && gap > target) {
        Item top = undecided.top();
        undecided.pop();
        gap -= top.vol;
        if (top.node.depth >= depth_limit(opts, s.dim()) || ++processed > opts.max_cells) {
            parked.push_back(top.vol);
            continue;
        }
        for (auto& c : children(s, top.node)) {
            consider(std::move(c));
        }
    }
    Ival upper = inside;
    while (!undecided.empty()) {
        upper += Ival(undecided.top().vol);
        undecided.pop();
    }
    for (double v : parked) {
        upper += Ival(v);
    }
    Bracket out;
    out.lo = std::max(0.0, inside.lo);
    out.hi = std::min(upper.hi, total.hi);
    out.converged = out.hi - out.lo <= 2 * target;
    return out;
}

Bracket lp_norm(const CertifiedFunction& f, const Region& s, double p, OracleOptions opts)
{
    if (!(p > 0)) {
        throw Error(ErrorKind::BadExponents, "L^p norm needs p > 0");
    }
    if (std::isinf(p)) {
        return sup_norm(f, s, opts);
    }
    struct Item {
        double gap;
        Ival contribution;
        Node node;
        bool operator<(const Item& o) const { return gap < o.gap; }
    };
    Ival pi(p);
    auto make = [&](Node n) {
        Ival r = abs(f.range(n.cell));
        Ival c = cell_volume(n.cell) * pow(r, pi);
        if (n.cls != CellClass::Inside) {
            c.lo = 0;
        }
        return Item{c.hi - c.lo, c, std::move(n)};
    };
    std::priority_queue<Item> queue;
    double gap = 0;
    double upper = 0;
    for (auto& n : start_nodes(s)) {
        Item it = make(std::move(n));
        gap += it.gap;
        upper += it.contribution.hi;
        queue.push(std::move(it));
    }
    std::size_t processed = 0;
    std::vector<Item> done;
    while (!queue.empty() && gap > opts.rel_tol * upper) {
        Item top = queue.top();
        queue.pop();
        if (top.node.depth >= depth_limit(opts, s.dim()) || ++processed > opts.max_cells) {
            done.push_back(std::move(top));
            if (processed > opts.max_cells) {
                break;
            }
            continue;
        }
        gap -= top.gap;
        upper -= top.contribution.hi;
        for (auto& c : children(s, top.node)) {
            Item it = make(std::move(c));
            gap += it.gap;
            upper += it.contribution.hi;
            queue.push(std::move(it));
        }
    }
    Ival integral(0.0);
    for (const auto& it : done) {
        integral += it.contribution;
    }
    while (!queue.empty()) {
        integral += queue.top().contribution;
        queue.pop();
    }
    integral.lo = std::max(0.0, integral.lo);
    Ival mean = integral / s.measure();
    mean.lo = std::max(0.0, mean.lo);
    Ival norm = pow(mean, Ival(1.0) / pi);
    Bracket out{norm.lo, norm.hi, norm.hi - norm.lo <= 2 * opts.rel_tol * norm.hi / p + 1e-300};
    return out;
}

Bracket rearrangement_value(const CertifiedFunction& f, const Region& e, double y, OracleOptions opts)
{
    struct Leaf {
        Node node;
        Ival r;
        Ival vol;
    };
    std::vector<Leaf> leaves;
    auto make = [&](Node n) {
        Ival r = abs(f.range(n.cell));
        Ival v = cell_volume(n.cell);
        return Leaf{std::move(n), r, v};
    };
    for (auto& n : start_nodes(e)) {
        leaves.push_back(make(std::move(n)));
    }
    auto bounds = [&]() {
        std::vector<const Leaf*> order;
        for (const auto& l : leaves) {
            order.push_back(&l);
        }
        // upper: smallest u_k whose strictly larger cells fit into y
        std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->r.hi > b->r.hi; });
        double acc = 0;
        double t_hi = order.empty() ? 0.0 : order.front()->r.hi;
        for (const auto* l : order) {
            if (acc > y) {
                break;
            }
            t_hi = l->r.hi;
            acc = sum_up(acc, l->vol.hi);
        }
        if (acc <= y) {
            t_hi = 0;
        }
        // lower: largest l_k such that cells with |f| >= l_k already exceed y
        std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->r.lo > b->r.lo; });
        double t_lo = 0;
        Ival sure(0.0);
        for (const auto* l : order) {
            if (l->node.cls == CellClass::Inside) {
                sure += l->vol;
            }
            if (sure.lo > y) {
                t_lo = l->r.lo;
                break;
            }
        }
        return std::make_pair(t_lo, t_hi);
    };
    auto [t_lo, t_hi] = bounds();
    while (t_hi - t_lo > opts.rel_tol * t_hi && leaves.size() < opts.max_cells) {
        std::vector<Leaf> next;
        bool split = false;
        for (auto& l : leaves) {
            bool straddles = l.r.hi >= t_lo && l.r.lo <= t_hi;
            if (straddles && l.node.depth < depth_limit(opts, e.dim()) && leaves.size() + next.size() < opts.max_cells) {
                for (auto& c : children(e, l.node)) {
                    next.push_back(make(std::move(c)));
                }
                split = true;
            } else {
                next.push_back(std::move(l));
            }
        }
        leaves = std::move(next);
        if (!split) {
            break;
        }
        std::tie(t_lo, t_hi) = bounds();
    }
    return {t_lo, t_hi, t_hi - t_lo <= opts.rel_tol * t_hi};
}

Bracket mean_oscillation(const CertifiedFunction& f, const Body& b, OracleOptions opts)
{
    Region s(b);
    struct Leaf {
        Node node;
        Ival g;
        Ival vol;
    };
    // certify that f has no zero on B
    std::vector<Node> pending = start_nodes(s);
    std::vector<Leaf> leaves;
    int signs = 0;
    std::size_t processed = 0;
    while (!pending.empty()) {
        Node n = std::move(pending.back());
        pending.pop_back();
        auto x = cell_center(n.cell);
        if (b.contains(x)) {
            int sg = f.eval(x).sign();
            if (sg != 0 && signs != 0 && sg != signs) {
                throw Error(ErrorKind::ZeroInBall, "f changes sign in " + b.to_spec());
            }
            if (sg != 0) {
                signs = sg;
            }
        }
        Ival r = f.range(n.cell);
        if (!r.contains_zero()) {
            leaves.push_back({n, log(abs(r)), cell_volume(n.cell)});
            continue;
        }
        if (n.depth >= depth_limit(opts, s.dim()) || ++processed > opts.max_cells) {
            throw Error(ErrorKind::ZeroInBall, "cannot certify min |f| > 0 on " + b.to_spec());
        }
        for (auto& c : children(s, n)) {
            pending.push_back(std::move(c));
        }
    }
    Ival measure = s.measure();
    auto evaluate = [&]() {
        Ival v_in(0.0);
        Ival ig(0.0);
        bool any_partial = false;
        Ival g_partial;
        for (const auto& l : leaves) {
            if (l.node.cls == CellClass::Inside) {
                v_in += l.vol;
                ig += l.vol * l.g;
            } else {
                g_partial = any_partial ? hull(g_partial, l.g) : l.g;
                any_partial = true;
            }
        }
        Ival rest = measure - v_in;
        rest.lo = std::max(0.0, rest.lo);
        if (any_partial) {
            ig += rest * g_partial;
        }
        Ival gb = ig / measure;
        Ival im(0.0);
        bool have = false;
        Ival dev_partial;
        for (const auto& l : leaves) {
            Ival dev = abs(l.g - gb);
            if (l.node.cls == CellClass::Inside) {
                im += l.vol * dev;
            } else {
                dev_partial = have ? hull(dev_partial, dev) : dev;
                have = true;
            }
        }
        if (have) {
            im += rest * Ival(0.0, dev_partial.hi);
        }
        Ival mo = im / measure;
        mo.lo = std::max(0.0, mo.lo);
        return mo;
    };
    Ival mo = evaluate();
    auto done = [&](const Ival& m) { return m.hi - m.lo <= opts.rel_tol * std::max(1.0, m.hi); };
    while (!done(mo) && leaves.size() < opts.max_cells) {
        std::vector<std::pair<double, std::size_t>> score;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            const auto& l = leaves[i];
            double w = l.g.width() + (l.node.cls == CellClass::Inside ? 0.0 : 1.0 + l.g.mag());
            score.emplace_back(l.vol.hi * w, i);
        }
        std::sort(score.begin(), score.end(), [](auto& a, auto& c) { return a.first > c.first; });
        std::size_t budget = std::min(score.size() / 4 + 1, opts.max_cells - leaves.size());
        std::vector<bool> chosen(leaves.size(), false);
        std::size_t picked = 0;
        for (const auto& [w, i] : score) {
            if (picked >= budget) {
                break;
            }
            if (leaves[i].node.depth < depth_limit(opts, s.dim()) && w > 0) {
                chosen[i] = true;
                ++picked;
            }
        }
        if (picked == 0) {
            break;
        }
        std::vector<Leaf> next;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            if (!chosen[i]) {
                next.push_back(std::move(leaves[i]));
                continue;
            }
            for (auto& c : children(s, leaves[i].node)) {
                // the child lies in the parent, so the parent's enclosure stays valid
                Ival r = f.range(c.cell);
                Ival g = r.contains_zero() ? leaves[i].g : log(abs(r));
                Ival vol = cell_volume(c.cell);
                next.push_back({std::move(c), intersect(g, leaves[i].g), vol});
            }
        }
        leaves = std::move(next);
        mo = evaluate();
    }
    return {mo.lo, mo.hi, done(mo)};
}

ZeroCount count_zeros(const CertifiedFunction& f, const mpq_class& a, const mpq_class& b, bool with_multiplicity,
                      const OracleOptions& opts)
{
    if (f.dim() != 1) {
        throw Error(ErrorKind::ShapeUnsupported, "zero counting needs a 1-D function");
    }
    if (a > b) {
        throw Error(ErrorKind::InvalidRange, "interval endpoints out of order");
    }
    if (f.family() == Family::Polynomial || f.family() == Family::Chebyshev) {
        const Poly& p = f.poly();
        if (p.degree() <= 0) {
            return {0, 0};
        }
        std::size_t n = with_multiplicity ? count_roots_with_multiplicity(p, a, b) : count_distinct_roots(p, a, b);
        return {n, n};
    }
    double ad = a.get_d();
    double bd = b.get_d();
    if (mpq_class(ad) != a || mpq_class(bd) != b) {
        throw Error(ErrorKind::DomainError, "grid zero counting needs endpoints that are exact doubles");
    }
    constexpr unsigned kMaxOrder = 8;
    std::vector<CertifiedFunction> d;
    for (unsigned j = 0; j <= kMaxOrder; ++j) {
        d.push_back(f.derivative(j));
    }
    enum class Kind { Free, Mono, Stuck, Unknown };
    struct Leaf {
        double lo, hi;
        Kind kind;
        int sign;  // sign of f (Free) or of f' (Mono)
        unsigned k;
    };
    std::vector<Leaf> leaves;
    struct Task {
        double lo, hi;
        int depth;
    };
    std::vector<Task> stack{{ad, bd, 0}};
    std::size_t processed = 0;
    while (!stack.empty()) {
        Task t = stack.back();
        stack.pop_back();
        Cell c{Ival(t.lo, t.hi)};
        Ival r = d[0].range(c);
        if (!r.contains_zero()) {
            leaves.push_back({t.lo, t.hi, Kind::Free, r.sign(), 0});
            continue;
        }
        Ival dr = d[1].range(c);
        if (!dr.contains_zero()) {
            leaves.push_back({t.lo, t.hi, Kind::Mono, dr.sign(), 1});
            continue;
        }
        double m = c[0].mid();
        if (t.depth < opts.depth_cap && ++processed <= opts.max_cells && m > t.lo && m < t.hi) {
            // right half first so the left half is processed next
            stack.push_back({m, t.hi, t.depth + 1});
            stack.push_back({t.lo, m, t.depth + 1});
            continue;
        }
        unsigned k = 0;
        for (unsigned j = 2; j <= kMaxOrder; ++j) {
            if (!d[j].range(c).contains_zero()) {
                k = j;
                break;
            }
        }
        leaves.push_back({t.lo, t.hi, k ? Kind::Stuck : Kind::Unknown, 0, k});
    }
    auto sign_at = [&](double x) { return f.eval({x}).sign(); };

    // lower count: alternations among certified signs, in order
    std::size_t lo = 0;
    int last = 0;
    auto note = [&](int s) {
        if (s == 0) {
            return;
        }
        if (last != 0 && s != last) {
            ++lo;
        }
        last = s;
    };
    note(sign_at(ad));
    for (const auto& l : leaves) {
        if (l.kind == Kind::Free) {
            note(l.sign);
        }
        note(sign_at(l.hi));
    }

    // upper count: one zero per maximal monotone run, k per stuck cell
    std::size_t hi = 0;
    std::size_t i = 0;
    while (i < leaves.size()) {
        const Leaf& l = leaves[i];
        if (l.kind == Kind::Unknown) {
            return {lo, SIZE_MAX};
        }
        if (l.kind == Kind::Free) {
            ++i;
            continue;
        }
        if (l.kind == Kind::Stuck) {
            hi += l.k;
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < leaves.size() && leaves[j + 1].kind == Kind::Mono && leaves[j + 1].sign == l.sign) {
            ++j;
        }
        int s0 = sign_at(l.lo);
        int s1 = sign_at(leaves[j].hi);
        if (!(s0 != 0 && s0 == s1)) {
            hi += 1;
        }
        i = j + 1;
    }
    return {lo, std::max(lo, hi)};
}

Restriction restrict_to_line(const CertifiedFunction& f, const FullWeight& w, const Point& x0, const Point& x1)
{
    mpq_class sq = 0;
    for (std::size_t i = 0; i < x0.size(); ++i) {
        sq += (x1[i] - x0[i]) * (x1[i] - x0[i]);
    }
    if (sq == 0) {
        throw Error(ErrorKind::DegenerateBody, "segment endpoints coincide");
    }
    return {f.restricted(x0, x1), w.scaled(sqrt(Real(sq)))};
}

Real ball_radius_bound(const FullWeight& w, const Body& k, const Real& b)
{
    if (k.shape() != Shape::Ball) {
        throw Error(ErrorKind::ShapeUnsupported, "the radius bound is stated for balls");
    }
    ExtReal mu1 = w.mu.mu(1);
    Real r(k.radius());
    Real half(mpq_class(1, 2));
    if (mu1.is_inf()) {
        return half * r;
    }
    Real s = b / (Real(mpq_class(3) * w.m0) * mu1.value());
    return half * (compare(s, r) <= 0 ? s : r);
}

namespace {

// -1, 0, +1: H_n certainly below x, undecided, certainly above x.
int harmonic_versus(unsigned long n, const mpq_class& x)
{
    mpfr_t lo, hi, g;
    mpfr_inits2(256, lo, hi, g, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(lo, n + 1, MPFR_RNDN);
    mpfr_set_ui(hi, n + 1, MPFR_RNDN);
    mpfr_digamma(lo, lo, MPFR_RNDD);
    mpfr_digamma(hi, hi, MPFR_RNDU);
    mpfr_const_euler(g, MPFR_RNDD);
    mpfr_add(lo, lo, g, MPFR_RNDD);
    mpfr_const_euler(g, MPFR_RNDU);
    mpfr_add(hi, hi, g, MPFR_RNDU);
    int r = mpfr_cmp_q(hi, x.get_mpq_t()) < 0 ? -1 : (mpfr_cmp_q(lo, x.get_mpq_t()) > 0 ? 1 : 0);
    mpfr_clears(lo, hi, g, static_cast<mpfr_ptr>(nullptr));
    return r;
}

} // namespace

std::uint64_t harmonic_index(const mpq_class& x)
{
    if (x < 1) {
        throw Error(ErrorKind::DomainError, "harmonic index needs x >= 1");
    }
    constexpr unsigned long kExact = 5000;
    double guess = std::exp(x.get_d() - 0.5772156649015329);
    if (guess < kExact) {
        mpq_class h = 0;
        for (unsigned long n = 0; n < 2 * kExact; ++n) {
            mpq_class next = h + mpq_class(1, n + 1);
            if (next > x) {
                return n;
            }
            h = next;
        }
    }
    if (!(guess < 1e18)) {
        throw Error(ErrorKind::InvalidRange, "harmonic index beyond 64 bits");
    }
    auto n = static_cast<unsigned long>(std::max(1.0, guess));
    for (int steps = 0; steps < 256; ++steps) {
        int here = harmonic_versus(n, x);
        int next = harmonic_versus(n + 1, x);
        if (here == 0 || next == 0) {
            break;
        }
        if (here < 0 && next > 0) {
            return n;
        }
        n = here > 0 ? n - 1 : n + 1;
    }
    throw Error(ErrorKind::Inconclusive, "harmonic index of " + x.get_str() + " not separated");
}

} // namespace tamebounds
