#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tamebounds/weights.hpp"

using namespace tamebounds;

namespace {

bool encloses(const Enclosure& e, const mpq_class& q) { return e.contains(q); }

// a <= b is consistent with both results (exact when both sums are exact)
bool consistent_leq(const SumResult& a, const SumResult& b)
{
    if (a.exact && b.exact) {
        return *a.exact <= *b.exact;
    }
    return !b.enclosure.certainly_less(a.enclosure);
}

WeightSpec random_table(std::mt19937_64& rng, std::size_t len)
{
    std::uniform_int_distribution<int> step(0, 5);
    std::uniform_int_distribution<int> den(1, 8);
    std::vector<mpq_class> v;
    mpq_class cur(step(rng) + 1, den(rng));
    for (std::size_t i = 0; i < len; ++i) {
        cur += mpq_class(step(rng), den(rng));
        v.push_back(cur);
    }
    return WeightSpec::table(v);
}

} // namespace

TEST_CASE("partial sums")
{
    auto lin = WeightSpec::linear(1L);
    auto empty = sigma(lin, 4, 3);
    REQUIRE(empty.exact);
    CHECK(*empty.exact == 0);

    auto s = sigma(lin, 1, 3);
    REQUIRE(s.exact);
    CHECK(*s.exact == oracle::harmonic(3));
    CHECK(*s.exact == mpq_class(11, 6));

    auto g = sigma(WeightSpec::geometric(1L, 2), 1, std::nullopt);
    REQUIRE(g.exact);
    CHECK(*g.exact == 1);

    CHECK(sigma(lin, std::nullopt, 10).exact == mpq_class(0));
    CHECK(sigma(lin, 1, 0).exact == mpq_class(0));
    CHECK(sigma(lin, 1, std::nullopt).infinite);
    CHECK_THROWS_AS(sigma(lin, 0, 3), Error);
}

TEST_CASE("long harmonic ranges use certified asymptotics")
{
    auto lin = WeightSpec::linear(1L);
    auto s = sigma(lin, 1, 20000);
    // direct long double sum as a loose cross-check
    long double h = 0;
    for (int j = 20000; j >= 1; --j) {
        h += 1.0L / j;
    }
    CHECK(s.enclosure.lower() <= static_cast<double>(h) + 1e-12);
    CHECK(s.enclosure.upper() >= static_cast<double>(h) - 1e-12);
    CHECK(s.enclosure.upper() - s.enclosure.lower() < 1e-12);
}

TEST_CASE("power tail encloses pi^2/6")
{
    auto p = WeightSpec::power(1L, 2);
    auto t = sigma(p, 1, std::nullopt);
    long double ref = 3.14159265358979323846264338327950288L * 3.14159265358979323846264338327950288L / 6;
    CHECK(t.enclosure.lower() <= static_cast<double>(ref));
    CHECK(t.enclosure.upper() >= static_cast<double>(ref));
    CHECK(t.enclosure.upper() - t.enclosure.lower() < 1e-10);

    auto half = WeightSpec::power(1L, mpq_class(3, 2));
    auto th = sigma(half, 5, std::nullopt);
    // zeta(3/2) - 1 - 2^-1.5 - 3^-1.5 - 4^-1.5
    double z = 2.6123753486854883433 - 1 - std::pow(2.0, -1.5) - std::pow(3.0, -1.5) - std::pow(4.0, -1.5);
    CHECK(th.enclosure.lower() <= z + 1e-12);
    CHECK(th.enclosure.upper() >= z - 1e-12);
}

TEST_CASE("j0")
{
    CHECK(j0(Real(1L)) == 0);
    CHECK(j0(Real::exp_of(-2)) == 2);
    CHECK(j0(Real(mpq_class(1, 2))) == 1);
    CHECK(j0(Real(3L)) == 0);
    CHECK(j0(Real(mpq_class(1, 100))) == 5);  // ln 100 = 4.605...
    CHECK(j0(Real::exp_of(mpq_class(-5, 2))) == 3);
}

TEST_CASE("degree examples")
{
    auto d4 = degree(WeightSpec::constant(4L), 1L, 1L);
    CHECK(d4.finite());
    CHECK(d4.value == oracle::floor_times_e(4));
    CHECK(d4.value == 10);

    // H_8 < e < H_9
    auto [elo, ehi] = oracle::e_bracket();
    REQUIRE(oracle::harmonic(8) < elo);
    REQUIRE(oracle::harmonic(9) > ehi);
    auto dl = degree(WeightSpec::linear(1L), 1L, 1L);
    CHECK(dl.value == 8);
    CHECK(dl.decided_at == 9);
    CHECK(dl.partial_sum.lower() > 2.71828);

    auto dg = degree(WeightSpec::geometric(1L, 2), 1L, 1L);
    CHECK(dg.status == DegreeStatus::Infinite);
    CHECK(dg.degree().is_inf());

    auto boundary = degree(parse_weight("const:1/(2e)"), 1L, 1L);
    CHECK(boundary.value == 0);
    auto exact_boundary = degree(parse_weight("const:1/e"), 1L, 1L);
    CHECK(exact_boundary.value == 0);
    auto just_over = degree(parse_weight("const:2/e"), 1L, 1L);
    CHECK(just_over.value == 1);
}

TEST_CASE("degree of large linear weights")
{
    // n(x) = max{n : H_n < x}; here x = 2e
    auto d = degree(WeightSpec::linear(1L), 2L, 1L);
    REQUIRE(d.finite());
    double x = 2 * std::exp(1.0);
    long double h = 0;
    std::uint64_t n = 0;
    while (h + 1.0L / (n + 1) < x) {
        h += 1.0L / ++n;
    }
    CHECK(d.value == n);

    auto big = degree(WeightSpec::linear(1L), 8L, 1L);  // H_n < 8e, n ~ 1.6e9
    REQUIRE(big.finite());
    double approx = std::exp(8 * std::exp(1.0) - 0.5772156649015329);
    CHECK(std::abs(static_cast<double>(big.value) - approx) / approx < 1e-6);
}

TEST_CASE("truncation")
{
    auto lin = WeightSpec::linear(1L);
    auto t3 = lin.truncated(3);
    CHECK(t3.mu(4).is_inf());
    CHECK(!t3.mu(3).is_inf());
    CHECK(degree(lin.truncated(9), 1L, 1L).value == 8);
    auto s = sigma(t3, 1, std::nullopt);
    REQUIRE(s.exact);
    CHECK(*s.exact == mpq_class(11, 6));
    CHECK(degree(lin.truncated(8), 1L, 1L).status == DegreeStatus::Infinite);
    CHECK(degree(WeightSpec::constant(4L).truncated(5), 1L, 1L).status == DegreeStatus::Infinite);
    CHECK(degree(WeightSpec::constant(4L).truncated(11), 1L, 1L).value == 10);
}

TEST_CASE("admissible data")
{
    auto a = admissible_data(FullWeight(WeightSpec::linear(1L), 1), 1L, 2L, true);
    CHECK(a.admissible);
    CHECK(a.j0 == 0);
    CHECK(a.n == 9u);

    auto g = admissible_data(FullWeight(WeightSpec::geometric(1L, 2), 1), 1L, 2L, true);
    CHECK_FALSE(g.admissible);
    CHECK_FALSE(g.n.has_value());

    // floor(8e) = 21, so the associated integer is 22
    REQUIRE(oracle::floor_times_e(8) == 21);
    auto c = admissible_data(FullWeight(WeightSpec::constant(4L), 3), 2L, 6L, true);
    CHECK(c.admissible);
    CHECK(c.n == 22u);
}

TEST_CASE("quasianalyticity")
{
    CHECK(is_quasianalytic(WeightSpec::linear(3L)).quasianalytic);
    CHECK_FALSE(is_quasianalytic(WeightSpec::power(1L, 2)).quasianalytic);
    CHECK(is_quasianalytic(WeightSpec::power(1L, 1)).quasianalytic);
    CHECK_FALSE(is_quasianalytic(WeightSpec::geometric(5L, 3)).quasianalytic);
    auto t = is_quasianalytic(WeightSpec::linear(1L).truncated(4));
    CHECK_FALSE(t.quasianalytic);
    CHECK_FALSE(t.meaningful);
}

TEST_CASE("bump condition")
{
    FullWeight g(WeightSpec::geometric(1L, 2), 1);
    CHECK(bump_necessary_condition(g, 1L, 2L));
    CHECK_FALSE(bump_necessary_condition(FullWeight(WeightSpec::power(1L, 2), 1), Real(mpq_class(1, 10)), 2L));
    CHECK_FALSE(bump_necessary_condition(g, Real::exp_of(-2), 2L));
    CHECK_THROWS_AS(bump_necessary_condition(FullWeight(WeightSpec::linear(1L), 1), 1L, 2L), Error);
}

TEST_CASE("spec strings round-trip")
{
    for (const char* s : {"const:4", "linear:1/3", "power:2,3/2", "geom:1,2", "table:1,2,5/2", "linear:1|9"}) {
        auto w = parse_weight(s);
        CHECK(w.to_spec() == s);
        CHECK(parse_weight(w.to_spec()) == w);
    }
    CHECK(parse_weight("const:0.25").coefficient() == mpq_class(1, 4));
    CHECK(parse_weight("const:2.5e-1").coefficient() == mpq_class(1, 4));
    CHECK_THROWS_AS(parse_weight("bogus:1"), Error);
    CHECK_THROWS_AS(parse_weight("const:"), Error);
    CHECK_THROWS_AS(parse_weight("table:3,2"), Error);
    CHECK_THROWS_AS(parse_weight("geom:1,1"), Error);
}

TEST_CASE("sigma monotonicity")
{
    std::mt19937_64 rng(7);
    std::vector<WeightSpec> ws = {WeightSpec::linear(1L), WeightSpec::power(1L, 2), WeightSpec::geometric(1L, 3),
                                  WeightSpec::constant(mpq_class(1, 3)), random_table(rng, 30)};
    std::uniform_int_distribution<std::uint64_t> idx(1, 40);
    for (const auto& w : ws) {
        for (int t = 0; t < 40; ++t) {
            std::uint64_t m = idx(rng);
            std::uint64_t m2 = m + idx(rng) % 5;
            std::uint64_t n = idx(rng);
            std::uint64_t n2 = n + idx(rng) % 5;
            INFO(w.to_spec(), " m=", m, " m2=", m2, " n=", n, " n2=", n2);
            CHECK(consistent_leq(sigma(w, m2, n), sigma(w, m, n)));
            CHECK(consistent_leq(sigma(w, m, n), sigma(w, m, n2)));
        }
    }
}

TEST_CASE("degree monotone in scale and b")
{
    std::mt19937_64 rng(11);
    std::vector<WeightSpec> ws = {WeightSpec::linear(1L), WeightSpec::power(mpq_class(1, 2), 2),
                                  WeightSpec::geometric(mpq_class(1, 4), 2), WeightSpec::constant(3L),
                                  random_table(rng, 60)};
    std::vector<mpq_class> scales = {mpq_class(1, 3), mpq_class(1, 2), 1, mpq_class(3, 2), 2, 4};
    std::vector<mpq_class> bs = {mpq_class(1, 1000), mpq_class(1, 10), mpq_class(1, 2), 1, 5};
    for (const auto& w : ws) {
        for (std::size_t i = 0; i < scales.size(); ++i) {
            for (std::size_t k = 0; k < bs.size(); ++k) {
                auto d = degree(w, Real(scales[i]), Real(bs[k]));
                CHECK(ExtNat::of(d.j0) <= d.degree());
                if (i + 1 < scales.size()) {
                    CHECK(d.degree() <= degree(w, Real(scales[i + 1]), Real(bs[k])).degree());
                }
                if (k + 1 < bs.size()) {
                    CHECK(degree(w, Real(scales[i]), Real(bs[k + 1])).degree() <= d.degree());
                }
            }
        }
    }
}

TEST_CASE("degree equals j0 exactly at the 1/e boundary")
{
    // scale * mu_{j0+1} <= 1/e  <=>  degree == j0; tables built around e^-1
    auto [elo, ehi] = oracle::e_bracket();
    for (std::uint64_t j = 0; j < 4; ++j) {
        Real b = Real::exp_of(-mpq_class(static_cast<long>(j)));
        std::vector<mpq_class> below(j + 3, 1 / ehi - mpq_class(1, 1000));
        std::vector<mpq_class> above(j + 3, 1 / elo + mpq_class(1, 1000));
        for (std::size_t i = 0; i < below.size(); ++i) {
            below[i] += mpq_class(static_cast<long>(i), 100000);
            above[i] += mpq_class(static_cast<long>(i), 100000);
        }
        // index j0+1 holds the probed value; entries before may be smaller
        auto lo = degree(WeightSpec::table(below), 1L, b);
        auto hi = degree(WeightSpec::table(above), 1L, b);
        CHECK(lo.j0 == j);
        CHECK(lo.value == j);
        CHECK(hi.value > j);
    }
}

TEST_CASE("truncation at the associated integer keeps the degree")
{
    std::vector<WeightSpec> ws = {WeightSpec::linear(1L), WeightSpec::constant(4L), WeightSpec::power(1L, 1),
                                  WeightSpec::linear(mpq_class(1, 3))};
    for (const auto& w : ws) {
        for (long b : {1L, 2L, 10L}) {
            FullWeight full(w, 1);
            auto a = admissible_data(full, 2L, Real(b), false);
            REQUIRE(a.admissible);
            Real reduced(b);
            CHECK(degree(w, 2L, reduced).degree() == degree(w.truncated(*a.n), 2L, reduced).degree());
        }
    }
}

TEST_CASE("doubling the weight at least doubles the degree")
{
    std::mt19937_64 rng(3);
    std::vector<WeightSpec> ws = {WeightSpec::linear(1L), WeightSpec::constant(4L), WeightSpec::power(1L, 1),
                                  WeightSpec::power(mpq_class(1, 10), 2), WeightSpec::geometric(mpq_class(1, 20), 2)};
    for (int i = 0; i < 50; ++i) {
        ws.push_back(random_table(rng, 80));
    }
    for (const auto& w : ws) {
        auto d1 = degree(w, 1L, 1L);
        auto d2 = degree(w, 2L, 1L);
        if (d1.finite() && d2.finite()) {
            CHECK(2 * d1.value <= d2.value);
        }
        if (w.kind() == WeightKind::Const) {
            CHECK(d2.value <= 2 * d1.value + 1);
        }
        // shifted form for b < 1
        auto s1 = degree(w, 1L, Real(mpq_class(1, 50)));
        auto s2 = degree(w, 2L, Real(mpq_class(1, 50)));
        if (s1.finite() && s2.finite()) {
            CHECK(2 * (s1.value - s1.j0) <= s2.value - s2.j0);
        }
    }
}

TEST_CASE("table degrees agree with exact oracle")
{
    std::mt19937_64 rng(19);
    for (int i = 0; i < 200; ++i) {
        auto w = random_table(rng, 40);
        long ref = oracle::table_degree(w.entries(), 0, 1);
        auto d = degree(w, 1L, 1L);
        if (ref == -1) {
            CHECK(d.status == DegreeStatus::Infinite);
        } else if (ref >= 0) {
            CHECK(d.value == static_cast<std::uint64_t>(ref));
        }
    }
}

TEST_CASE("full weight products")
{
    FullWeight w(WeightSpec::linear(1L), 2);
    auto m3 = w.M(3);
    REQUIRE(m3.value().rational());
    CHECK(*m3.value().rational() == 12);
    CHECK(encloses(w.M_enclosure(3, 128), 12));
    CHECK(w.truncated(2).M(3).is_inf());
}
