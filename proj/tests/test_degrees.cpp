#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "tamebounds/degrees.hpp"
#include "tamebounds/errors.hpp"

using namespace tamebounds;

namespace {

// k-th derivative of T_n at 1, from the coefficient recurrence.
mpq_class chebyshev_derivative_at_one(unsigned n, unsigned k)
{
    std::vector<mpq_class> prev{1};
    std::vector<mpq_class> cur{0, 1};
    if (n == 0) {
        cur = prev;
    }
    for (unsigned m = 2; m <= n; ++m) {
        std::vector<mpq_class> next(m + 1, 0);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i + 1] += 2 * cur[i];
        }
        for (std::size_t i = 0; i < prev.size(); ++i) {
            next[i] -= prev[i];
        }
        prev = cur;
        cur = next;
    }
    for (unsigned d = 0; d < k; ++d) {
        std::vector<mpq_class> der(cur.size() > 1 ? cur.size() - 1 : 1, 0);
        for (std::size_t i = 1; i < cur.size(); ++i) {
            der[i - 1] = cur[i] * static_cast<unsigned long>(i);
        }
        cur = der;
    }
    mpq_class s = 0;
    for (const auto& c : cur) {
        s += c;
    }
    return s;
}

std::uint64_t deg(const WeightSpec& mu, long scale = 1)
{
    DegreeResult d = degree(mu, Real(scale), Real(1L));
    REQUIRE(d.finite());
    return d.value;
}

} // namespace

TEST_CASE("Markov factors")
{
    CHECK(markov_factor(1, 1) == 1);
    CHECK(markov_factor(2, 1) == 4);
    CHECK(markov_factor(2, 2) == 4);
    CHECK(markov_factor(5, 0) == 1);
    CHECK_THROWS_AS(markov_factor(2, 3), Error);
    CHECK(markov_factors(3).size() == 3);
    // Chebyshev polynomials attain the factor at t = 1, and the constant
    // weight n^2 dominates it
    for (unsigned n = 1; n <= 12; ++n) {
        mpq_class n2k = 1;
        for (unsigned k = 1; k <= n; ++k) {
            n2k *= n * n;
            CHECK(markov_factor(n, k) == chebyshev_derivative_at_one(n, k));
            CHECK(markov_factor(n, k) <= n2k);
        }
    }
    FullWeight w = markov_weight(3);
    CHECK(w.m0 == 1);
    CHECK(w.mu.to_spec() == WeightSpec::constant(Real(9L)).to_spec());
    CHECK_THROWS_AS(markov_weight(0), Error);
}

TEST_CASE("polynomial degree formulas")
{
    CHECK(deg(markov_weight(2).mu) == 10);
    for (unsigned n = 1; n <= 30; ++n) {
        long expect = oracle::floor_times_e(mpq_class(n * n));
        REQUIRE(expect >= 0);
        CHECK(deg(markov_weight(n).mu) == static_cast<std::uint64_t>(expect));
    }
    CHECK(deg(bernstein_weight(3).mu) == 8);
    CHECK(deg(bernstein_weight(1).mu) == 2);
    Real tiny = Real(mpq_class(1, 3)) / Real::e();
    CHECK(deg(bernstein_weight(1, tiny).mu) == 0);
    for (unsigned n = 1; n <= 12; ++n) {
        for (long c : {1L, 2L, 5L}) {
            PolyDegreeComparison cmp = compare_polynomial_degrees(n, Real(c));
            CHECK(cmp.degree_markov == static_cast<std::uint64_t>(oracle::floor_times_e(mpq_class(n * n))));
            CHECK(cmp.degree_bernstein == static_cast<std::uint64_t>(oracle::floor_times_e(mpq_class(c * n))));
        }
    }
}

TEST_CASE("analytic degree bound")
{
    // scale 2 against e: sum_{j <= n} 1/(2j) < e, i.e. H_n < 2e
    auto [elo, ehi] = oracle::e_bracket();
    long n = oracle::harmonic_index_exact(2 * elo);
    REQUIRE(n == oracle::harmonic_index_exact(2 * ehi));
    AnalyticDegreeBound a = analytic_degree_bound(1);
    CHECK(a.degree.value == static_cast<std::uint64_t>(n));
    CHECK(a.bound == 10 * a.degree.value);

    // 2 mu_1 = 1/3, first term 3 > e
    CHECK(analytic_degree_bound(1, mpq_class(1, 6)).bound == 0);

    std::uint64_t last = 0;
    mpq_class eps(4);
    // below eps = 1/4 the degree leaves the 64-bit range
    for (int i = 0; i < 5; ++i, eps /= 2) {
        std::uint64_t b = analytic_degree_bound(eps).bound;
        CHECK(b >= last);
        last = b;
    }

    FullWeight w = analytic_weight(mpq_class(1, 2), 3, 5);
    CHECK(w.m0 == 10);
    CHECK(compare(w.mu.mu(2).value(), Real(12L)) == 0);
    CHECK_THROWS_AS(analytic_weight(0, 1, 1), Error);
}

TEST_CASE("harmonic index bracket")
{
    ComtetBracket two = comtet_bracket(Real(2L));
    CHECK(two.lo <= 3);
    CHECK(two.hi >= 3);
    CHECK(oracle::harmonic_index_exact(2) == 3);

    // x = H_n exactly: the index is n itself
    for (long n = 4; n <= 12; ++n) {
        mpq_class h = oracle::harmonic(n);
        REQUIRE(oracle::harmonic_index_exact(h) == n);
        ComtetBracket c = comtet_bracket(Real(h));
        CHECK(c.lo <= n);
        CHECK(c.hi >= n);
    }

    // near e the index and the degree of Linear(1) differ by at most one
    ComtetBracket ce = comtet_bracket(Real::e());
    auto [elo, ehi] = oracle::e_bracket();
    long ne = oracle::harmonic_index_exact(elo);
    REQUIRE(ne == oracle::harmonic_index_exact(ehi));
    CHECK(ce.lo <= ne);
    CHECK(ce.hi >= ne);
    std::uint64_t d = deg(WeightSpec::linear(Real(1L)));
    CHECK(d == 8);
    CHECK(std::labs(ne - 8) <= 1);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(2.0, 20.0);
    for (int i = 0; i < 200; ++i) {
        double x = ux(rng);
        long truth = x < 9.0 ? oracle::harmonic_index_exact(rational_from_double(x))
                             : oracle::harmonic_index_digamma(x);
        REQUIRE(truth > 0);
        if (x < 9.0) {
            CHECK(truth == oracle::harmonic_index_digamma(x));
        }
        ComtetBracket c = comtet_bracket(Real::from_double(x));
        CHECK(c.lo <= truth);
        CHECK(c.hi >= truth);
    }
    for (double x = 2.0; x <= 30.0; x += 0.0625) {
        ComtetBracket c = comtet_bracket(Real::from_double(x));
        CHECK(c.hi - c.lo <= 1);
    }
    CHECK_THROWS_AS(comtet_bracket(Real(mpq_class(199, 100))), Error);
}

TEST_CASE("2 mu bracket")
{
    BracketTwoMu c4 = bracket_2mu(WeightSpec::constant(Real(4L)), Real(1L));
    CHECK(c4.d_mu == 10);
    CHECK(c4.d_two_mu == 21);
    CHECK(c4.lhs_ok);
    REQUIRE(c4.const_upper_ok.has_value());
    CHECK(*c4.const_upper_ok);

    BracketTwoMu lin = bracket_2mu(WeightSpec::linear(Real(1L)), Real(1L));
    CHECK(lin.d_mu == 8);
    CHECK(lin.d_two_mu >= 16);
    CHECK(lin.lhs_ok);
    CHECK(!lin.const_upper_ok.has_value());

    BracketTwoMu flat = bracket_2mu(WeightSpec::table(std::vector<mpq_class>(40, mpq_class(3, 2))), Real(1L));
    CHECK(flat.const_upper_ok.has_value());
    CHECK(flat.d_mu == static_cast<std::uint64_t>(oracle::floor_times_e(mpq_class(3, 2))));

    for (const char* spec : {"const:1/3", "linear:2", "power:1,1/2", "power:1/5,2", "geom:1/10,2", "const:e"}) {
        for (const char* bs : {"1", "1/2", "1/3", "1/100"}) {
            Real b = parse_real(bs);
            BracketTwoMu r{};
            try {
                r = bracket_2mu(parse_weight(spec), b);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::DomainError);
                continue;
            }
            CHECK_MESSAGE(r.shifted_ok, spec);
            if (r.j0 == 0) {
                CHECK_MESSAGE(r.lhs_ok, spec);
                if (r.const_upper_ok) {
                    CHECK_MESSAGE(*r.const_upper_ok, spec);
                }
            }
        }
    }
    // with j0 > 0 the unshifted law fails: d = 2 (no terms), d_{2mu} = 3
    BracketTwoMu off = bracket_2mu(parse_weight("const:1/3"), parse_real("1/3"));
    CHECK(off.j0 == 2);
    CHECK(off.d_mu == 2);
    CHECK(off.d_two_mu == 3);
    CHECK(!off.lhs_ok);
    CHECK(off.shifted_ok);
    CHECK_THROWS_AS(bracket_2mu(parse_weight("geom:1,2"), Real(1L)), Error);

    // random increasing tables, degrees checked against the exact oracle
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> step(0, 4);
    std::uniform_int_distribution<int> start(1, 6);
    int finite = 0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<mpq_class> v;
        mpq_class x(start(rng), 10);
        for (int j = 0; j < 60; ++j) {
            v.push_back(x);
            x += mpq_class(step(rng), 20);
        }
        WeightSpec mu = WeightSpec::table(v);
        long d1 = oracle::table_degree(v, 0, 1);
        long d2 = oracle::table_degree(v, 0, 2);
        if (d1 < 0 || d2 < 0) {
            CHECK_THROWS_AS(bracket_2mu(mu, Real(1L)), Error);
            continue;
        }
        ++finite;
        BracketTwoMu r = bracket_2mu(mu, Real(1L));
        CHECK(r.d_mu == static_cast<std::uint64_t>(d1));
        CHECK(r.d_two_mu == static_cast<std::uint64_t>(d2));
        CHECK(r.lhs_ok);
    }
    CHECK(finite > 500);
}
