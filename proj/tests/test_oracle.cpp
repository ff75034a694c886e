#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tamebounds/oracle.hpp"

using namespace tamebounds;

namespace {

double dmax(const CertifiedFunction& f, double a, double b, int n = 20000)
{
    double best = 0;
    for (int i = 0; i <= n; ++i) {
        double x = a + (b - a) * i / n;
        best = std::max(best, std::fabs(f.eval({x}).mid()));
    }
    return best;
}

// sin(k pi t + phi) has zeros at t = (m pi - phi) / (k pi); count them in [a, b]
int wave_zero_count(int k, double phi, double a, double b)
{
    int count = 0;
    for (int m = -1000; m <= 1000; ++m) {
        double t = (m * M_PI - phi) / (k * M_PI);
        if (t >= a && t <= b) {
            ++count;
        }
    }
    return count;
}

} // namespace

TEST_CASE("derivative evaluation")
{
    CHECK(parse_function("cheb:5").eval({1.0}).contains(1.0));
    Ival w = parse_function("waves:1@pi@0").partial({2}, {0.0});
    CHECK(w.contains(0.0));
    CHECK(w.width() < 1e-15);
    Ival p = parse_function("poly:-1,0,1").partial({1}, {0.5});
    CHECK(p.lo == 1.0);
    CHECK(p.hi == 1.0);
    // d/dt e^{2t} at 0 is 2
    CHECK(parse_function("exp:2").partial({1}, {0.0}).contains(2.0));
    // mixed partial of sin(x + 2y): d^2/dxdy = -2 sin(x + 2y)
    auto f = parse_function("waves:1@1;2@0");
    CHECK(f.partial({1, 1}, {0.3, 0.2}).contains(-2 * std::sin(0.7)));
    // derivative functions agree with partials
    auto g = parse_function("waves:2@3@1/2+1/2@5@0");
    for (unsigned j = 0; j < 7; ++j) {
        Ival a = g.derivative(j).eval({0.37});
        Ival b = g.partial({j}, {0.37});
        CHECK(intersect(a, b).lo <= intersect(a, b).hi);
        CHECK(a.lo <= b.hi);
        CHECK(b.lo <= a.hi);
    }
}

TEST_CASE("function specs round-trip")
{
    for (const char* s : {"poly:-1,0,1", "cheb:5", "exp:-3/2", "waves:1@pi@0", "waves:2@1;-3@1/2+1/3@0;1@pi",
                          "73/10*cheb:4"}) {
        CHECK(parse_function(s).to_spec() == s);
    }
    CHECK_THROWS_AS(parse_function("nope:1"), Error);
    CHECK_THROWS_AS(parse_function("waves:1@1"), Error);
    CHECK_THROWS_AS(parse_function("poly:0"), Error);
    CHECK_THROWS_AS(parse_function("cheb:1/2"), Error);
}

TEST_CASE("ranges enclose sampled values")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    for (const char* s : {"cheb:7", "poly:1/3,-2,0,5,1", "exp:3", "waves:1@7@1/5+1/2@-3@2"}) {
        auto f = parse_function(s);
        for (int i = 0; i < 300; ++i) {
            double a = u(rng);
            double b = a + std::fabs(u(rng)) * 0.3;
            Ival r = f.range({Ival(a, b)});
            for (int k = 0; k <= 20; ++k) {
                double x = a + (b - a) * k / 20;
                Ival v = f.eval({x});
                CHECK(r.lo <= v.hi);
                CHECK(v.lo <= r.hi);
            }
        }
    }
    auto g = parse_function("waves:1@3;-2@1/5+2@1;1@0");
    for (int i = 0; i < 300; ++i) {
        double a = u(rng);
        double b = u(rng);
        double w = std::fabs(u(rng)) * 0.4;
        Cell c{Ival(a, a + w), Ival(b, b + w)};
        Ival r = g.range(c);
        for (int k = 0; k <= 5; ++k) {
            for (int l = 0; l <= 5; ++l) {
                Ival v = g.eval({a + w * k / 5, b + w * l / 5});
                CHECK(r.lo <= v.hi);
                CHECK(v.lo <= r.hi);
            }
        }
    }
}

TEST_CASE("zero counts")
{
    CHECK(count_zeros(parse_function("cheb:5"), -1, 1, false).lo == 5);
    CHECK(count_zeros(parse_function("cheb:5"), -1, 1, false).exact());
    auto sq = CertifiedFunction::polynomial(Poly({mpq_class(1, 9), mpq_class(-2, 3), 1}));
    CHECK(count_zeros(sq, 0, 1, true).lo == 2);
    CHECK(count_zeros(sq, 0, 1, false).lo == 1);
    CHECK(count_zeros(parse_function("poly:1"), 0, 1, false).hi == 0);
    CHECK(count_zeros(parse_function("exp:1"), 0, 1, false).hi == 0);
    // closed interval: roots at both endpoints count
    CHECK(count_zeros(parse_function("poly:0,-1,1"), 0, 1, false).lo == 2);

    // polynomials built from known rational roots
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> cnt(1, 6);
    for (int trial = 0; trial < 100; ++trial) {
        Poly p({1});
        std::vector<mpq_class> roots;
        int n = cnt(rng);
        for (int i = 0; i < n; ++i) {
            mpq_class r(num(rng), 8);
            roots.push_back(r);
            p = p * Poly({mpq_class(-r), 1});
        }
        std::sort(roots.begin(), roots.end());
        std::size_t with = 0;
        std::size_t distinct = 0;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (roots[i] >= -1 && roots[i] <= 1) {
                ++with;
                if (i == 0 || roots[i] != roots[i - 1]) {
                    ++distinct;
                }
            }
        }
        auto f = CertifiedFunction::polynomial(p);
        CHECK(count_zeros(f, -1, 1, true).lo == with);
        CHECK(count_zeros(f, -1, 1, false).lo == distinct);
    }

    // plane waves with known zeros
    for (int k = 1; k <= 6; ++k) {
        for (double phi : {0.3, 1.1, 2.5}) {
            auto f = CertifiedFunction::waves({Wave{Real(mpq_class(1)), {Real(mpq_class(k)) * Real::pi()},
                                                    Real(rational_from_double(phi))}});
            ZeroCount z = count_zeros(f, -1, 1, false);
            int expect = wave_zero_count(k, phi, -1, 1);
            CHECK(z.lo == static_cast<std::size_t>(expect));
            CHECK(z.hi == static_cast<std::size_t>(expect));
        }
    }
    // zeros sitting on the endpoints and at dyadic points stay bracketed
    ZeroCount z = count_zeros(parse_function("waves:1@pi@0"), 0, 2, false);
    CHECK(z.lo <= 3);
    CHECK(z.hi >= 3);
}

TEST_CASE("sup norms")
{
    Body unit = parse_body("interval:0,1");
    Body sym = parse_body("interval:-1,1");
    Bracket s = sup_norm(parse_function("waves:1@pi@0"), unit);
    CHECK(s.contains(1.0));
    CHECK(s.converged);
    CHECK(s.width() <= 1e-6);
    CHECK(sup_norm(parse_function("cheb:5"), sym).contains(1.0));
    MeasurableSet e = parse_set("0,1/10", 1);
    Bracket t = sup_norm(parse_function("cheb:5"), e);
    CHECK(t.contains(0.48016));

    // 2-D: dense samples never exceed the upper bound
    auto g = parse_function("waves:1@3;-2@1/5+1/2@1;1@0");
    for (const char* spec : {"ball:0,0|1", "box:-1,0|1,1/2", "simplex:0,0|1,0|0,1"}) {
        Body k = parse_body(spec);
        Bracket b = sup_norm(g, k);
        CHECK(b.converged);
        double best = 0;
        for (int i = 0; i <= 200; ++i) {
            for (int j = 0; j <= 200; ++j) {
                std::vector<double> x{-1 + 2.0 * i / 200, -1 + 2.0 * j / 200};
                if (k.contains(x)) {
                    best = std::max(best, std::fabs(g.eval(x).mid()));
                }
            }
        }
        CHECK(best <= b.hi);
        CHECK(b.lo >= best - 1e-2);
    }
}

TEST_CASE("sublevel measures")
{
    Body unit = parse_body("interval:0,1");
    auto s = parse_function("waves:1@pi@0");
    Bracket m = measure_sublevel(s, unit, std::sin(0.05 * M_PI));
    CHECK(m.lo <= 0.1 + 1e-12);
    CHECK(m.hi >= 0.1 - 1e-12);
    CHECK(m.width() <= 2e-4);
    Bracket all = measure_sublevel(s, unit, 2.0);
    CHECK(all.lo == 1.0);
    CHECK(measure_sublevel(parse_function("exp:1"), unit, 0.5).hi == 0.0);
    Bracket lin = measure_sublevel(parse_function("poly:0,1"), unit, 1.0);
    CHECK(lin.contains(1.0));
    // |x| <= 1/2 on the unit disk: a disk of radius 1/2
    auto r2 = parse_function("waves:1@1;0@0");  // sin(x): |sin x| <= t is a vertical band
    Body disk = parse_body("ball:0,0|1");
    double t = std::sin(0.5);
    double band = 2 * (0.5 * std::sqrt(1 - 0.25) + std::asin(0.5));  // area of |x| <= 1/2 in the disk
    Bracket d = measure_sublevel(r2, disk, t, {.max_cells = 400000, .rel_tol = 1e-3});
    CHECK(d.lo <= band);
    CHECK(d.hi >= band);
}

TEST_CASE("normalized Lp norms")
{
    Body unit = parse_body("interval:0,1");
    for (double p : {0.5, 1.0, 2.0, 3.5}) {
        CHECK(lp_norm(parse_function("poly:3"), unit, p).contains(3.0));
    }
    Bracket l2 = lp_norm(parse_function("poly:0,1"), unit, 2.0);
    CHECK(l2.contains(1 / std::sqrt(3.0)));
    CHECK(l2.width() < 1e-2);
    // Hoelder ordering on midpoints
    auto g = parse_function("waves:1@3;-2@1/5+1/2@1;1@0");
    Body disk = parse_body("ball:0,0|1");
    double prev = 0;
    for (double p : {0.5, 1.0, 2.0, 4.0, double(INFINITY)}) {
        Bracket b = lp_norm(g, disk, p);
        double mid = 0.5 * (b.lo + b.hi);
        CHECK(mid >= prev - 1e-2);
        prev = mid;
    }
}

TEST_CASE("decreasing rearrangement")
{
    MeasurableSet e = parse_set("0,1", 1);
    auto f = parse_function("poly:0,1");
    CHECK(rearrangement_value(f, e, 0.5).contains(0.5));
    CHECK(rearrangement_value(f, e, 0.0).contains(1.0));
    // the distribution function never drops below |E| for t > 0, so f*(|E|) = 0
    CHECK(rearrangement_value(f, e, 1.0).lo == 0.0);
    MeasurableSet two = parse_set("0,1/4;1/2,1", 1);
    // |f| > t on E has measure (1/4 - t)_+ + (1 - max(t, 1/2)); value at y = 0.3 is 0.7
    CHECK(rearrangement_value(f, two, 0.3).contains(0.7));
}

TEST_CASE("mean oscillation of log|f|")
{
    Body unit = parse_body("interval:0,1");
    CHECK(mean_oscillation(parse_function("poly:5"), unit).contains(0.0));
    Bracket m = mean_oscillation(parse_function("exp:1"), unit);
    CHECK(m.contains(0.25));
    CHECK(m.width() < 1e-2);
    CHECK_THROWS_AS(mean_oscillation(parse_function("poly:0,1"), parse_body("interval:-1,1")), Error);
    Bracket disk = mean_oscillation(parse_function("waves:1@1;1@1"), parse_body("ball:0,0|1/2"));
    CHECK(disk.lo >= 0.0);
    CHECK(disk.hi < 1.0);
}

TEST_CASE("certified weights dominate sampled derivative norms")
{
    struct Case {
        const char* f;
        const char* k;
    };
    for (const Case& c : {Case{"cheb:5", "interval:-1,1"}, Case{"poly:1,-3,0,2", "interval:-1/2,2"},
                          Case{"waves:2@3@1/5+1/2@-7@0", "interval:0,1"}, Case{"exp:-2", "interval:-1,1"},
                          Case{"waves:1@3;-2@1/5+1/2@1;1@0", "ball:0,0|1"},
                          Case{"7/2*waves:1@1;1@0", "box:0,0|1,2"}}) {
        auto f = parse_function(c.f);
        Body k = parse_body(c.k);
        FullWeight w = certified_weight(f, k);
        Cell bb = k.bounding_box();
        for (unsigned j = 0; j <= 12; ++j) {
            double mj = w.M_enclosure(j, 128).upper();
            for (int i = 0; i < 400; ++i) {
                std::vector<double> x;
                for (std::size_t d = 0; d < k.dim(); ++d) {
                    x.push_back(bb[d].lo + (bb[d].hi - bb[d].lo) * ((i * (d + 3) * 37) % 401) / 400.0);
                }
                if (!k.contains(x)) {
                    continue;
                }
                CHECK(f.frechet_at(j, x).lo <= mj * (1 + 1e-9));
            }
        }
    }
    // Chebyshev on its home interval has M0 = 1 and the Markov weight n^2
    FullWeight t5 = certified_weight(parse_function("cheb:5"), parse_body("interval:-1,1"));
    CHECK(t5.m0 == 1);
    CHECK(t5.mu == WeightSpec::constant(Real(mpq_class(25))));
}

TEST_CASE("relative weights ignore the amplitude")
{
    Body k = parse_body("ball:0,0|1");
    auto f = parse_function("waves:1@3;-2@1/5+1/2@1;1@0");
    CHECK(relative_weight(f, k) == relative_weight(f.scaled(Real(mpq_class(73, 10))), k));
    Body i = parse_body("interval:0,1");
    CHECK(relative_weight(parse_function("cheb:3"), i) == WeightSpec::constant(Real(mpq_class(18))));
}

TEST_CASE("restriction to lines")
{
    // sin(<a,x>) along e_1 from the origin is sin(a_1 t)
    auto f = parse_function("waves:1@3;5@0");
    FullWeight w = certified_weight(f, parse_body("ball:0,0|1"));
    Restriction r = restrict_to_line(f, w, {0, 0}, {1, 0});
    for (double t : {0.1, 0.4, 0.9}) {
        CHECK(r.g.eval({t}).contains(std::sin(3 * t)));
    }
    CHECK(*r.weight.mu.mu(1).value().rational() == 8);
    // a segment of length 2 doubles every mu_j
    Restriction r2 = restrict_to_line(f, w, {-1, 0}, {1, 0});
    CHECK(*r2.weight.mu.mu(3).value().rational() == 16);
    CHECK(r2.g.eval({0.25}).contains(std::sin(3 * -0.5)));

    // polynomial restriction: the Markov weight of the restricted polynomial on [0, 1]
    // equals the weight on [x0, x1] scaled by the segment length
    auto p = parse_function("cheb:6");
    Body i = parse_body("interval:-1,1/2");
    FullWeight wp = certified_weight(p, i);
    Restriction rp = restrict_to_line(p, wp, {-1}, {mpq_class(1, 2)});
    FullWeight direct = certified_weight(rp.g, parse_body("interval:0,1"));
    CHECK(*direct.mu.mu(1).value().rational() == *rp.weight.mu.mu(1).value().rational());
    CHECK(count_zeros(rp.g, 0, 1, false).lo == count_zeros(p, -1, mpq_class(1, 2), false).lo);

    auto e = parse_function("exp:2");
    Restriction re = restrict_to_line(e, certified_weight(e, parse_body("interval:0,1")), {mpq_class(1, 2)}, {1});
    CHECK(re.g.eval({0.5}).contains(std::exp(1.5)));
}

TEST_CASE("ball radius bound")
{
    FullWeight w(WeightSpec::constant(Real(mpq_class(1))), 1);
    Body ball = parse_body("ball:0,0|1");
    Real r = ball_radius_bound(w, ball, Real(mpq_class(3, 10)));
    CHECK(*r.rational() == mpq_class(1, 20));
    CHECK(*ball_radius_bound(w, ball, Real(mpq_class(3))).rational() == mpq_class(1, 2));
    CHECK(*ball_radius_bound(w, ball, Real(mpq_class(1, 1000))).rational() == mpq_class(1, 6000));
    CHECK_THROWS_AS(ball_radius_bound(w, parse_body("box:0,0|1,1"), Real(mpq_class(1))), Error);
}

TEST_CASE("sublevel sets of tiny height have tiny measure")
{
    for (const char* s : {"cheb:5", "waves:1@7@1/5", "poly:1,-3,0,2"}) {
        auto f = parse_function(s);
        Body k = parse_body("interval:-1,1");
        FullWeight w = certified_weight(f, k);
        Bracket m = measure_sublevel(f, k, 1e-6 * w.m0.get_d());
        CHECK(m.hi < 1e-3);
    }
}
