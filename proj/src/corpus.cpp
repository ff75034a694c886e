#include "tamebounds/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "tamebounds/errors.hpp"

namespace tamebounds {

namespace {

std::uint32_t fnv1a(const std::string& s)
{
    std::uint32_t h = 2166136261u;
    for (unsigned char c : s) {
        h = (h ^ c) * 16777619u;
    }
    return h;
}

std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

mpq_class ratio(long num, long den)
{
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

bool corners_inside(const Body& k, const Point& lo, const Point& hi)
{
    std::size_t d = lo.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << d); ++mask) {
        Point x(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = (mask >> i) & 1 ? hi[i] : lo[i];
        }
        if (!k.contains(x)) {
            return false;
        }
    }
    return true;
}

Point centre_of(const Body& k)
{
    switch (k.shape()) {
    case Shape::Ball:
        return k.center();
    case Shape::Simplex: {
        Point c(k.dim(), 0);
        for (const auto& v : k.vertices()) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                c[i] += v[i];
            }
        }
        for (auto& x : c) {
            x /= static_cast<unsigned long>(k.vertices().size());
        }
        return c;
    }
    default:
        break;
    }
    Point c(k.dim());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = (k.box_lo()[i] + k.box_hi()[i]) / 2;
    }
    return c;
}

} // namespace

Rng::Rng(std::uint64_t seed, const std::string& stream, std::uint64_t index)
{
    std::seed_seq seq{lo32(seed), hi32(seed), fnv1a(stream), lo32(index), hi32(index)};
    gen_.seed(seq);
}

long Rng::between(long lo, long hi)
{
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1p-53; }

CertifiedFunction random_polynomial(Rng& rng, int max_degree)
{
    int d = static_cast<int>(rng.between(1, max_degree));
    std::vector<mpq_class> c;
    for (int i = 0; i <= d; ++i) {
        c.push_back(ratio(rng.between(-9, 9), rng.between(1, 9)));
    }
    if (c.back() == 0) {
        c.back() = 1;
    }
    return CertifiedFunction::polynomial(Poly(c));
}

CertifiedFunction random_root_polynomial(Rng& rng, int max_degree, const mpq_class& lo, const mpq_class& hi)
{
    int d = static_cast<int>(rng.between(1, max_degree));
    Poly p({mpq_class(1)});
    for (int i = 0; i < d; ++i) {
        mpq_class r = lo + (hi - lo) * ratio(rng.between(0, 64), 64);
        p = p * Poly({-r, mpq_class(1)});
    }
    return CertifiedFunction::polynomial(p);
}

CertifiedFunction random_waves(Rng& rng, std::size_t d, int max_terms, int max_freq)
{
    int terms = static_cast<int>(rng.between(1, max_terms));
    std::vector<Wave> waves;
    for (int t = 0; t < terms; ++t) {
        Wave w{Real(ratio(rng.between(1, 8) * (rng.coin() ? 1 : -1), 4)), {}, Real(ratio(rng.between(0, 16), 8))};
        for (std::size_t i = 0; i < d; ++i) {
            w.a.emplace_back(ratio(rng.between(-2 * max_freq, 2 * max_freq), 2));
        }
        waves.push_back(std::move(w));
    }
    return CertifiedFunction::waves(std::move(waves));
}

CertifiedFunction random_offset_waves(Rng& rng, std::size_t d, int max_freq)
{
    // 3 sin(3/2) > 2.99 dominates the remaining amplitudes (at most 2)
    std::vector<Wave> waves{{Real(3L), std::vector<Real>(d, Real(0L)), Real(ratio(3, 2))}};
    int terms = static_cast<int>(rng.between(1, 2));
    for (int t = 0; t < terms; ++t) {
        Wave w{Real(ratio(rng.between(1, 4) * (rng.coin() ? 1 : -1), 4)), {}, Real(ratio(rng.between(0, 16), 8))};
        for (std::size_t i = 0; i < d; ++i) {
            w.a.emplace_back(ratio(rng.between(-2 * max_freq, 2 * max_freq), 2));
        }
        waves.push_back(std::move(w));
    }
    return CertifiedFunction::waves(std::move(waves));
}

std::pair<Point, Point> inner_box(const Body& k)
{
    if (k.shape() == Shape::Interval || k.shape() == Shape::Box) {
        return {k.box_lo(), k.box_hi()};
    }
    Point c = centre_of(k);
    // start from the bounding box half-width and halve until the cube fits
    Cell bb = k.bounding_box();
    mpq_class h = 0;
    for (const auto& iv : bb) {
        mpq_class w = rational_from_double(iv.hi - iv.lo) / 2;
        h = std::max(h, w);
    }
    for (int i = 0; i < 200; ++i) {
        Point lo(c.size());
        Point hi(c.size());
        for (std::size_t j = 0; j < c.size(); ++j) {
            lo[j] = c[j] - h;
            hi[j] = c[j] + h;
        }
        if (corners_inside(k, lo, hi)) {
            return {lo, hi};
        }
        h /= 2;
    }
    throw Error(ErrorKind::DegenerateBody, "no inner box found for " + k.to_spec());
}

std::vector<mpq_class> random_point(Rng& rng, const Body& k)
{
    auto [lo, hi] = inner_box(k);
    Point x(lo.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = lo[i] + (hi[i] - lo[i]) * ratio(rng.between(0, 1L << 16), 1L << 16);
    }
    return x;
}

MeasurableSet random_set(Rng& rng, const Body& k, int max_parts)
{
    auto [lo, hi] = inner_box(k);
    std::size_t d = lo.size();
    long per_axis = d == 1 ? 64 : (d == 2 ? 8 : 4);
    long cells = 1;
    for (std::size_t i = 0; i < d; ++i) {
        cells *= per_axis;
    }
    long parts = std::min<long>(rng.between(1, max_parts), cells);
    // distinct cells by a partial Fisher-Yates shuffle
    std::vector<long> order(static_cast<std::size_t>(cells));
    std::iota(order.begin(), order.end(), 0L);
    for (long i = 0; i < parts; ++i) {
        long j = rng.between(i, cells - 1);
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    std::vector<long> chosen(order.begin(), order.begin() + parts);
    std::sort(chosen.begin(), chosen.end());
    std::vector<MeasurableSet::Part> out;
    for (long cell : chosen) {
        MeasurableSet::Part part{Point(d), Point(d)};
        long rest = cell;
        for (std::size_t i = 0; i < d; ++i) {
            long idx = rest % per_axis;
            rest /= per_axis;
            mpq_class width = (hi[i] - lo[i]) / per_axis;
            mpq_class start = lo[i] + width * idx;
            long a = rng.between(0, 15);
            long b = rng.between(a + 1, 16);
            part.lo[i] = start + width * ratio(a, 16);
            part.hi[i] = start + width * ratio(b, 16);
        }
        out.push_back(std::move(part));
    }
    return MeasurableSet(d, std::move(out));
}

Body random_ball(Rng& rng, const Body& k)
{
    auto [lo, hi] = inner_box(k);
    std::size_t d = lo.size();
    Point c(d);
    mpq_class half = (hi[0] - lo[0]) / 2;
    for (std::size_t i = 0; i < d; ++i) {
        mpq_class h = (hi[i] - lo[i]) / 2;
        half = std::min(half, h);
        mpq_class mid = (lo[i] + hi[i]) / 2;
        c[i] = mid - h / 2 + h * ratio(rng.between(0, 256), 256);
    }
    // every axis keeps a margin of half/2 around c, and the ball fits in that cube
    mpq_class r = half / 2 * ratio(rng.between(1, 4), 4);
    return Body::ball(c, r);
}

} // namespace tamebounds
