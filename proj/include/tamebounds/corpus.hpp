#ifndef TAMEBOUNDS_CORPUS_HPP
#define TAMEBOUNDS_CORPUS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tamebounds/functions.hpp"

namespace tamebounds {

/// Deterministic random stream. Streams are keyed by (seed, name, index), so
/// every trial draws from its own substream and results do not depend on the
/// order in which trials run. Draws use only raw engine output, which the
/// standard fixes, so they are identical across library implementations.
class Rng {
public:
    Rng(std::uint64_t seed, const std::string& stream, std::uint64_t index);

    std::uint64_t next() { return gen_(); }
    /// Uniform in [lo, hi].
    long between(long lo, long hi);
    /// Uniform in [0, 1) with 53 random bits.
    double unit();
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    bool coin() { return (next() >> 63) != 0; }

    template <class T>
    const T& pick(const std::vector<T>& items)
    {
        return items.at(static_cast<std::size_t>(between(0, static_cast<long>(items.size()) - 1)));
    }

private:
    std::mt19937_64 gen_;
};

/// Random rational polynomial of degree 1..max_degree with small coefficients.
CertifiedFunction random_polynomial(Rng& rng, int max_degree = 8);

/// Product of (t - r_i) with rational roots r_i drawn from [lo, hi].
CertifiedFunction random_root_polynomial(Rng& rng, int max_degree, const mpq_class& lo, const mpq_class& hi);

/// Sum of up to max_terms plane waves in dimension d with rational
/// amplitudes, frequencies |a_i| <= max_freq and phases.
CertifiedFunction random_waves(Rng& rng, std::size_t d, int max_terms = 3, int max_freq = 8);

/// A plane-wave sum with a dominant constant term, so it has no zeros.
CertifiedFunction random_offset_waves(Rng& rng, std::size_t d, int max_freq = 6);

/// Random point of K with dyadic coordinates (inside the inscribed box for balls
/// and simplices).
std::vector<mpq_class> random_point(Rng& rng, const Body& k);

/// Union of up to max_parts disjoint intervals (d = 1) or boxes inside K, cut
/// from a dyadic grid over a box contained in K.
MeasurableSet random_set(Rng& rng, const Body& k, int max_parts = 8);

/// Ball inside K with radius between 1/16 and 1/4 of K's inner radius.
Body random_ball(Rng& rng, const Body& k);

/// A box with dyadic corners that lies inside K.
std::pair<Point, Point> inner_box(const Body& k);

} // namespace tamebounds

#endif
