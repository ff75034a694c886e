#include "tamebounds/functions.hpp"

namespace tamebounds {

namespace {

Ival exact_at(const mpq_class& q) { return Ival::from_rational(q); }

// sin(theta + k pi/2)
Ival shifted_sin(const Ival& theta, unsigned k)
{
    switch (k % 4) {
    case 0: return sin(theta);
    case 1: return cos(theta);
    case 2: return -sin(theta);
    default: return -cos(theta);
    }
}

Ival pow_ival(const Ival& a, unsigned n) { return pow(a, static_cast<int>(n)); }

// split on `sep` outside parentheses
std::vector<std::string> split_top(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        }
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

mpq_class rational_arg(const std::string& s)
{
    Real r = parse_real(s);
    if (!r.is_rational()) {
        throw Error(ErrorKind::ParseError, "expected a rational number, got '" + s + "'");
    }
    return *r.rational();
}

// j!/alpha! for every alpha with |alpha| = j in d variables
void multi_indices(std::size_t d, unsigned j, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out)
{
    if (cur.size() + 1 == d) {
        cur.push_back(j);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (unsigned k = 0; k <= j; ++k) {
        cur.push_back(k);
        multi_indices(d, j - k, cur, out);
        cur.pop_back();
    }
}

mpz_class factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

} // namespace

const char* to_string(Family f)
{
    switch (f) {
    case Family::Polynomial: return "poly";
    case Family::Chebyshev: return "cheb";
    case Family::Waves: return "waves";
    case Family::Exp: return "exp";
    }
    return "?";
}

CertifiedFunction CertifiedFunction::polynomial(Poly p)
{
    if (p.is_zero()) {
        throw Error(ErrorKind::DomainError, "the zero polynomial is not a valid test function");
    }
    CertifiedFunction f;
    f.family_ = Family::Polynomial;
    f.poly_ = std::move(p);
    f.prepare();
    return f;
}

CertifiedFunction CertifiedFunction::chebyshev(unsigned n)
{
    CertifiedFunction f;
    f.family_ = Family::Chebyshev;
    f.cheb_n_ = n;
    f.poly_ = Poly::chebyshev(n);
    f.prepare();
    return f;
}

CertifiedFunction CertifiedFunction::waves(std::vector<Wave> waves)
{
    if (waves.empty() || waves.front().a.empty()) {
        throw Error(ErrorKind::DomainError, "a wave sum needs at least one wave with a frequency vector");
    }
    for (const auto& w : waves) {
        if (w.a.size() != waves.front().a.size()) {
            throw Error(ErrorKind::DomainError, "all frequency vectors must have the same dimension");
        }
    }
    CertifiedFunction f;
    f.family_ = Family::Waves;
    f.dim_ = waves.front().a.size();
    f.waves_ = std::move(waves);
    f.prepare();
    return f;
}

CertifiedFunction CertifiedFunction::exponential(const mpq_class& a)
{
    CertifiedFunction f;
    f.family_ = Family::Exp;
    f.rate_ = a;
    f.prepare();
    return f;
}

void CertifiedFunction::prepare()
{
    amp_i_ = Ival::from_real(amp_);
    if (family_ == Family::Polynomial || family_ == Family::Chebyshev) {
        dpoly_ = poly_.derivative();
        ddpoly_ = dpoly_.derivative();
    }
    c_i_.clear();
    a_i_.clear();
    phi_i_.clear();
    for (const auto& w : waves_) {
        c_i_.push_back(Ival::from_real(w.c));
        std::vector<Ival> a;
        for (const auto& ak : w.a) {
            a.push_back(Ival::from_real(ak));
        }
        a_i_.push_back(a);
        phi_i_.push_back(Ival::from_real(w.phi));
    }
    rate_i_ = exact_at(rate_);
}

CertifiedFunction CertifiedFunction::scaled(const Real& c) const
{
    CertifiedFunction f = *this;
    f.amp_ = amp_ * c;
    f.amp_i_ = Ival::from_real(f.amp_);
    return f;
}

CertifiedFunction CertifiedFunction::base() const
{
    CertifiedFunction f = *this;
    f.amp_ = Real(mpq_class(1));
    f.amp_i_ = Ival(1.0);
    return f;
}

Ival CertifiedFunction::eval(const std::vector<double>& x) const
{
    switch (family_) {
    case Family::Polynomial:
    case Family::Chebyshev:
        return amp_i_ * exact_at(poly_(mpq_class(x[0])));
    case Family::Waves: {
        Ival s(0.0);
        for (std::size_t k = 0; k < waves_.size(); ++k) {
            Ival theta = phi_i_[k];
            for (std::size_t i = 0; i < dim_; ++i) {
                theta += a_i_[k][i] * Ival(x[i]);
            }
            s += c_i_[k] * sin(theta);
        }
        return amp_i_ * s;
    }
    case Family::Exp:
        return amp_i_ * exp(rate_i_ * Ival(x[0]));
    }
    return Ival::entire();
}

Ival CertifiedFunction::range(const Cell& cell) const
{
    switch (family_) {
    case Family::Polynomial:
    case Family::Chebyshev: {
        const Ival& x = cell[0];
        double m = x.mid();
        mpq_class mq(m);
        Ival delta = Ival(x.lo) - Ival(m);
        delta = hull(delta, Ival(x.hi) - Ival(m));
        Ival taylor = exact_at(poly_(mq)) + exact_at(dpoly_(mq)) * delta +
                      Ival(0.5) * ddpoly_(x) * Ival(0.0, sqr(delta).hi);
        return amp_i_ * intersect(poly_(x), taylor);
    }
    case Family::Waves: {
        std::vector<double> m = cell_center(cell);
        std::vector<Ival> delta(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            delta[i] = hull(Ival(cell[i].lo) - Ival(m[i]), Ival(cell[i].hi) - Ival(m[i]));
        }
        Ival naive(0.0);
        Ival value(0.0);
        Ival linear(0.0);
        Ival quad(0.0);
        for (std::size_t k = 0; k < waves_.size(); ++k) {
            Ival theta_m = phi_i_[k];
            Ival theta_x = phi_i_[k];
            Ival proj(0.0);
            for (std::size_t i = 0; i < dim_; ++i) {
                theta_m += a_i_[k][i] * Ival(m[i]);
                theta_x += a_i_[k][i] * cell[i];
                proj += a_i_[k][i] * delta[i];
            }
            Ival sx = sin(theta_x);
            naive += c_i_[k] * sx;
            value += c_i_[k] * sin(theta_m);
            Ival cm = c_i_[k] * cos(theta_m);
            linear += cm * proj;
            quad -= c_i_[k] * sx * sqr(proj);
        }
        // the gradient term sum_i g_i delta_i is linear in delta, so evaluate it per axis
        Ival grad_term(0.0);
        for (std::size_t i = 0; i < dim_; ++i) {
            Ival g(0.0);
            for (std::size_t k = 0; k < waves_.size(); ++k) {
                Ival theta_m = phi_i_[k];
                for (std::size_t l = 0; l < dim_; ++l) {
                    theta_m += a_i_[k][l] * Ival(m[l]);
                }
                g += c_i_[k] * a_i_[k][i] * cos(theta_m);
            }
            grad_term += g * delta[i];
        }
        linear = intersect(linear, grad_term);
        Ival taylor = value + linear + Ival(0.5) * quad;
        return amp_i_ * intersect(naive, taylor);
    }
    case Family::Exp:
        return amp_i_ * exp(rate_i_ * cell[0]);
    }
    return Ival::entire();
}

Ival CertifiedFunction::partial(const std::vector<unsigned>& alpha, const std::vector<double>& x) const
{
    unsigned order = 0;
    for (unsigned a : alpha) {
        order += a;
    }
    switch (family_) {
    case Family::Polynomial:
    case Family::Chebyshev:
        return amp_i_ * exact_at(poly_.derivative(order)(mpq_class(x[0])));
    case Family::Waves: {
        Ival s(0.0);
        for (std::size_t k = 0; k < waves_.size(); ++k) {
            Ival theta = phi_i_[k];
            Ival coef = c_i_[k];
            for (std::size_t i = 0; i < dim_; ++i) {
                theta += a_i_[k][i] * Ival(x[i]);
                coef *= pow_ival(a_i_[k][i], alpha[i]);
            }
            s += coef * shifted_sin(theta, order);
        }
        return amp_i_ * s;
    }
    case Family::Exp:
        return amp_i_ * pow_ival(rate_i_, order) * exp(rate_i_ * Ival(x[0]));
    }
    return Ival::entire();
}

Ival CertifiedFunction::frechet_at(unsigned j, const std::vector<double>& x) const
{
    std::vector<std::vector<unsigned>> alphas;
    std::vector<unsigned> cur;
    multi_indices(dim_, j, cur, alphas);
    Ival total(0.0);
    mpz_class jf = factorial(j);
    for (const auto& alpha : alphas) {
        mpz_class denom = 1;
        for (unsigned a : alpha) {
            denom *= factorial(a);
        }
        total += exact_at(mpq_class(jf, denom)) * abs(partial(alpha, x));
    }
    return total;
}

CertifiedFunction CertifiedFunction::derivative(unsigned j) const
{
    if (dim_ != 1) {
        throw Error(ErrorKind::DerivativeUnavailable, "derivative functions are only built in one variable");
    }
    switch (family_) {
    case Family::Polynomial:
    case Family::Chebyshev: {
        Poly d = poly_.derivative(j);
        CertifiedFunction f;
        f.family_ = Family::Polynomial;
        f.poly_ = d.is_zero() ? Poly() : d;
        f.amp_ = amp_;
        f.prepare();
        return f;
    }
    case Family::Waves: {
        std::vector<Wave> ws;
        Real quarter_turns(mpq_class(static_cast<long>(j % 4), 2));
        for (const auto& w : waves_) {
            Real phi = j % 4 == 0 ? w.phi : w.phi + quarter_turns * Real::pi();
            ws.push_back(Wave{w.c * pow(w.a[0], static_cast<long>(j)), w.a, phi});
        }
        CertifiedFunction f = waves(std::move(ws));
        return f.scaled(amp_);
    }
    case Family::Exp: {
        mpq_class factor = 1;
        for (unsigned i = 0; i < j; ++i) {
            factor *= rate_;
        }
        return exponential(rate_).scaled(amp_ * Real(factor));
    }
    }
    return *this;
}

CertifiedFunction CertifiedFunction::restricted(const Point& x0, const Point& x1) const
{
    if (x0.size() != dim_ || x1.size() != dim_) {
        throw Error(ErrorKind::OutsideDomain, "segment endpoints have the wrong dimension");
    }
    Point delta(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        delta[i] = x1[i] - x0[i];
    }
    switch (family_) {
    case Family::Polynomial:
    case Family::Chebyshev:
        return polynomial(poly_.compose_affine(x0[0], delta[0])).scaled(amp_);
    case Family::Waves: {
        std::vector<Wave> ws;
        for (const auto& w : waves_) {
            Real a(mpq_class(0));
            Real phi = w.phi;
            for (std::size_t i = 0; i < dim_; ++i) {
                a = a + w.a[i] * Real(delta[i]);
                if (x0[i] != 0) {
                    phi = phi + w.a[i] * Real(x0[i]);
                }
            }
            ws.push_back(Wave{w.c, {a}, phi});
        }
        return waves(std::move(ws)).scaled(amp_);
    }
    case Family::Exp:
        return exponential(rate_ * delta[0]).scaled(amp_ * Real::exp_of(rate_ * x0[0]));
    }
    return *this;
}

std::string CertifiedFunction::to_spec() const
{
    std::string s;
    if (!(amp_.is_rational() && *amp_.rational() == 1)) {
        s = amp_.label() + "*";
    }
    switch (family_) {
    case Family::Polynomial: return s + "poly:" + poly_.to_string();
    case Family::Chebyshev: return s + "cheb:" + std::to_string(cheb_n_);
    case Family::Waves: {
        s += "waves:";
        for (std::size_t k = 0; k < waves_.size(); ++k) {
            s += k ? "+" : "";
            s += waves_[k].c.label() + "@";
            for (std::size_t i = 0; i < dim_; ++i) {
                s += (i ? ";" : "") + waves_[k].a[i].label();
            }
            s += "@" + waves_[k].phi.label();
        }
        return s;
    }
    case Family::Exp: return s + "exp:" + rate_.get_str();
    }
    return s;
}

CertifiedFunction parse_function(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorKind::ParseError, "function spec needs '<family>:<params>': '" + text + "'");
    }
    std::string head = text.substr(0, colon);
    std::string body = text.substr(colon + 1);
    std::optional<Real> amp;
    if (auto star = head.rfind('*'); star != std::string::npos) {
        amp = parse_real(head.substr(0, star));
        head = head.substr(star + 1);
    }
    auto finish = [&](CertifiedFunction f) {
        if (amp) {
            if (amp->is_rational() && *amp->rational() == 0) {
                throw Error(ErrorKind::ParseError, "amplitude must be nonzero");
            }
            f = f.scaled(*amp);
        }
        return f;
    };
    try {
        if (head == "poly") {
            std::vector<mpq_class> c;
            for (const auto& part : split_top(body, ',')) {
                c.push_back(rational_arg(part));
            }
            return finish(CertifiedFunction::polynomial(Poly(c)));
        }
        if (head == "cheb") {
            mpq_class n = rational_arg(body);
            if (n.get_den() != 1 || n < 0 || n > 64) {
                throw Error(ErrorKind::ParseError, "Chebyshev degree must be an integer in [0, 64]");
            }
            return finish(CertifiedFunction::chebyshev(static_cast<unsigned>(n.get_num().get_ui())));
        }
        if (head == "exp") {
            return finish(CertifiedFunction::exponential(rational_arg(body)));
        }
        if (head == "waves") {
            std::vector<Wave> ws;
            for (const auto& item : split_top(body, '+')) {
                auto fields = split_top(item, '@');
                if (fields.size() != 3) {
                    throw Error(ErrorKind::ParseError, "wave needs 'c@a1;...;ad@phi': '" + item + "'");
                }
                std::vector<Real> a;
                for (const auto& ak : split_top(fields[1], ';')) {
                    a.push_back(parse_real(ak));
                }
                ws.push_back(Wave{parse_real(fields[0]), a, parse_real(fields[2])});
            }
            return finish(CertifiedFunction::waves(std::move(ws)));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) {
            throw;
        }
        throw Error(ErrorKind::ParseError, std::string(e.what()) + " in '" + text + "'");
    }
    throw Error(ErrorKind::ParseError, "unknown function family '" + head + "'");
}

} // namespace tamebounds
