#include "tamebounds/poly.hpp"

#include "tamebounds/errors.hpp"

namespace tamebounds {

namespace {

int sign_of(const mpq_class& q) { return sgn(q); }

// Sturm chain of a square-free polynomial, each member scaled by a positive factor.
std::vector<Poly> sturm_chain(const Poly& p)
{
    std::vector<Poly> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) {
            break;
        }
        mpq_class lc = abs(r.leading());
        chain.push_back(mpq_class(-1 / lc) * r);
    }
    return chain;
}

std::size_t sign_changes(const std::vector<Poly>& chain, const mpq_class& x)
{
    std::size_t changes = 0;
    int last = 0;
    for (const auto& q : chain) {
        int s = sign_of(q(x));
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++changes;
        }
        last = s;
    }
    return changes;
}

} // namespace

Poly::Poly(std::vector<mpq_class> coefficients) : c_(std::move(coefficients))
{
    for (auto& q : c_) {
        q.canonicalize();
    }
    trim();
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

Poly Poly::chebyshev(unsigned n)
{
    Poly t0({1});
    if (n == 0) {
        return t0;
    }
    Poly t1({0, 1});
    Poly two_x({0, 2});
    for (unsigned k = 1; k < n; ++k) {
        Poly next = two_x * t1 - t0;
        t0 = t1;
        t1 = next;
    }
    return t1;
}

mpq_class Poly::operator()(const mpq_class& x) const
{
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Ival Poly::operator()(const Ival& x) const
{
    Ival acc(0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + Ival::from_rational(*it);
    }
    return acc;
}

Poly Poly::derivative(unsigned k) const
{
    Poly p = *this;
    for (unsigned step = 0; step < k && !p.is_zero(); ++step) {
        std::vector<mpq_class> d;
        for (std::size_t i = 1; i < p.c_.size(); ++i) {
            d.push_back(p.c_[i] * static_cast<long>(i));
        }
        p = Poly(std::move(d));
    }
    return p;
}

Poly Poly::compose_affine(const mpq_class& a, const mpq_class& b) const
{
    Poly lin({a, b});
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * lin + Poly({*it});
    }
    return acc;
}

Poly Poly::monic() const
{
    if (is_zero()) {
        return *this;
    }
    return mpq_class(1 / leading()) * *this;
}

Poly operator+(const Poly& a, const Poly& b)
{
    std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = a.coefficient(i) + b.coefficient(i);
    }
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + mpq_class(-1) * b; }

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            c[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return Poly(std::move(c));
}

Poly operator*(const mpq_class& s, const Poly& p)
{
    std::vector<mpq_class> c = p.c_;
    for (auto& q : c) {
        q *= s;
    }
    return Poly(std::move(c));
}

std::string Poly::to_string() const
{
    if (c_.empty()) {
        return "0";
    }
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        s += (i ? "," : "") + c_[i].get_str();
    }
    return s;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero()) {
        throw Error(ErrorKind::DomainError, "polynomial division by zero");
    }
    std::vector<mpq_class> r = a.coefficients();
    int db = b.degree();
    int da = a.degree();
    if (da < db) {
        return {Poly(), a};
    }
    std::vector<mpq_class> q(static_cast<std::size_t>(da - db + 1));
    for (int k = da - db; k >= 0; --k) {
        mpq_class f = r[static_cast<std::size_t>(k + db)] / b.leading();
        q[static_cast<std::size_t>(k)] = f;
        for (int i = 0; i <= db; ++i) {
            r[static_cast<std::size_t>(k + i)] -= f * b.coefficient(static_cast<std::size_t>(i));
        }
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

std::vector<Poly> square_free_decomposition(const Poly& p)
{
    std::vector<Poly> out;
    if (p.degree() < 1) {
        return out;
    }
    Poly d = p.derivative();
    Poly a = gcd(p, d);
    Poly b = divmod(p, a).first;
    Poly c = divmod(d, a).first;
    Poly e = c - b.derivative();
    while (b.degree() > 0) {
        Poly f = gcd(b, e);
        out.push_back(f);
        b = divmod(b, f).first;
        c = divmod(e, f).first;
        e = c - b.derivative();
    }
    return out;
}

std::size_t count_distinct_roots(const Poly& p, const mpq_class& a, const mpq_class& b)
{
    if (p.is_zero()) {
        throw Error(ErrorKind::DomainError, "the zero polynomial has infinitely many roots");
    }
    if (p.degree() == 0 || a > b) {
        return 0;
    }
    Poly g = gcd(p, p.derivative());
    Poly q = divmod(p, g).first;
    auto chain = sturm_chain(q);
    std::size_t va = sign_changes(chain, a);
    std::size_t vb = sign_changes(chain, b);
    return va - vb + (q(a) == 0 ? 1 : 0);
}

std::size_t count_roots_with_multiplicity(const Poly& p, const mpq_class& a, const mpq_class& b)
{
    if (p.is_zero()) {
        throw Error(ErrorKind::DomainError, "the zero polynomial has infinitely many roots");
    }
    std::size_t total = 0;
    auto parts = square_free_decomposition(p);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].degree() > 0) {
            total += (i + 1) * count_distinct_roots(parts[i], a, b);
        }
    }
    return total;
}

} // namespace tamebounds
