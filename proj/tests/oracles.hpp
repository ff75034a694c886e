#ifndef TAMEBOUNDS_TESTS_ORACLES_HPP
#define TAMEBOUNDS_TESTS_ORACLES_HPP

// Reference computations that share no code with the library: exact rational
// arithmetic (GMP) only, plus plain long double and MPFR's digamma where noted.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

namespace oracle {

// e in [lo, hi] from Taylor partial sums: lo = sum_{k<=n} 1/k!,
// hi = lo + 2/(n+1)! (remainder bound for n >= 1).
inline std::pair<mpq_class, mpq_class> e_bracket(int n = 40)
{
    mpq_class sum = 0;
    mpz_class fact = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            fact *= k;
        }
        sum += mpq_class(1, 1) / mpq_class(fact);
    }
    mpq_class tail = mpq_class(2) / mpq_class(fact * (n + 1));
    return {sum, sum + tail};
}

inline mpq_class harmonic(std::uint64_t n)
{
    mpq_class h = 0;
    for (std::uint64_t j = 1; j <= n; ++j) {
        h += mpq_class(1, static_cast<unsigned long>(j));
    }
    return h;
}

// floor(q * e) decided from the bracket; returns -1 if undecided.
inline long floor_times_e(const mpq_class& q)
{
    auto [lo, hi] = e_bracket();
    mpq_class a = q * lo;
    mpq_class b = q * hi;
    mpz_class fa;
    mpz_class fb;
    mpz_fdiv_q(fa.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_fdiv_q(fb.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    return fa == fb ? fa.get_si() : -1;
}

// Largest n >= j0 with sum_{j=j0+1}^n 1/mu_j < scale * e, for a finite table;
// returns -1 if the whole table stays below (degree infinite).
template <class Seq>
long table_degree(const Seq& mu, long j0, const mpq_class& scale)
{
    auto [lo, hi] = e_bracket();
    mpq_class s = 0;
    for (long j = j0 + 1; j <= static_cast<long>(mu.size()); ++j) {
        s += 1 / mu[j - 1];
        if (s >= scale * hi) {
            return j - 1;
        }
        if (!(s < scale * lo)) {
            return -2;  // undecided with this bracket
        }
    }
    return -1;
}

// n(x) with H_n <= x < H_{n+1}, by exact accumulation. Stops at `cap` terms
// and returns -1 then.
inline long harmonic_index_exact(const mpq_class& x, long cap = 20000)
{
    mpq_class h = 0;
    for (long n = 0; n < cap; ++n) {
        mpq_class next = h + mpq_class(1, n + 1);
        if (next > x) {
            return n;
        }
        h = next;
    }
    return -1;
}

// Does H_n = digamma(n + 1) + Euler's constant lie certainly below (-1),
// certainly above (+1) x, or is it undecided (0)? Uses MPFR's correctly
// rounded digamma at 256 bits.
inline int harmonic_vs(unsigned long n, double x)
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
    int r = mpfr_cmp_d(hi, x) < 0 ? -1 : (mpfr_cmp_d(lo, x) > 0 ? 1 : 0);
    mpfr_clears(lo, hi, g, static_cast<mpfr_ptr>(nullptr));
    return r;
}

// n(x) for large x: start from ln n ~ x - 0.5772 and walk until
// H_n < x < H_{n+1} is certified. Returns -1 if undecided.
inline long harmonic_index_digamma(double x)
{
    long n = std::max(1L, static_cast<long>(std::exp(static_cast<long double>(x) - 0.5772156649L)));
    for (int steps = 0; steps < 64; ++steps) {
        int here = harmonic_vs(static_cast<unsigned long>(n), x);
        int next = harmonic_vs(static_cast<unsigned long>(n + 1), x);
        if (here == 0 || next == 0) {
            return -1;
        }
        if (here < 0 && next > 0) {
            return n;
        }
        n += here > 0 ? -1 : 1;
    }
    return -1;
}

} // namespace oracle

#endif
