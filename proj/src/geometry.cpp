#include "tamebounds/geometry.hpp"

#include <sstream>

#include "tamebounds/weights.hpp"

namespace tamebounds {

namespace {

mpq_class det(std::vector<std::vector<mpq_class>> m)
{
    std::size_t n = m.size();
    mpq_class d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) {
            ++p;
        }
        if (p == n) {
            return 0;
        }
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            mpq_class f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    return d;
}

mpq_class factorial(std::size_t n)
{
    mpz_class f = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        f *= static_cast<unsigned long>(i);
    }
    return mpq_class(f);
}

mpq_class dot(const Point& a, const Point& b)
{
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

Point to_point(const std::vector<double>& x)
{
    Point p;
    p.reserve(x.size());
    for (double v : x) {
        p.emplace_back(v);
    }
    return p;
}

std::string join(const Point& p)
{
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        out += (i ? "," : "") + p[i].get_str();
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

mpq_class parse_q(const std::string& s)
{
    Real r = parse_real(s);
    if (!r.is_rational()) {
        throw Error(ErrorKind::ParseError, "expected a rational coordinate, got '" + s + "'");
    }
    return *r.rational();
}

Point parse_point(const std::string& s)
{
    Point p;
    for (const auto& part : split(s, ',')) {
        p.push_back(parse_q(part));
    }
    return p;
}

} // namespace

Ival cell_volume(const Cell& c)
{
    Ival v(1.0);
    for (const auto& side : c) {
        v = v * (Ival(side.hi) - Ival(side.lo));
    }
    return {std::max(0.0, v.lo), v.hi};
}

std::pair<Cell, Cell> bisect(const Cell& c)
{
    std::size_t axis = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i].width() > c[axis].width()) {
            axis = i;
        }
    }
    double m = c[axis].mid();
    Cell left = c;
    Cell right = c;
    left[axis].hi = m;
    right[axis].lo = m;
    return {left, right};
}

std::vector<double> cell_center(const Cell& c)
{
    std::vector<double> x;
    x.reserve(c.size());
    for (const auto& side : c) {
        x.push_back(side.mid());
    }
    return x;
}

Body Body::interval(const mpq_class& a, const mpq_class& b)
{
    if (!(a < b)) {
        throw Error(ErrorKind::DegenerateBody, "interval needs a < b");
    }
    Body k;
    k.shape_ = Shape::Interval;
    k.dim_ = 1;
    k.a_ = {a};
    k.b_ = {b};
    return k;
}

Body Body::box(Point lo, Point hi)
{
    if (lo.empty() || lo.size() != hi.size()) {
        throw Error(ErrorKind::DegenerateBody, "box corners must have equal positive dimension");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i])) {
            throw Error(ErrorKind::DegenerateBody, "box needs lo < hi in every coordinate");
        }
    }
    Body k;
    k.shape_ = Shape::Box;
    k.dim_ = lo.size();
    k.a_ = std::move(lo);
    k.b_ = std::move(hi);
    return k;
}

Body Body::ball(Point center, const mpq_class& radius)
{
    if (center.empty()) {
        throw Error(ErrorKind::DegenerateBody, "ball needs a center");
    }
    if (radius <= 0) {
        throw Error(ErrorKind::DegenerateBody, "ball needs a positive radius");
    }
    Body k;
    k.shape_ = Shape::Ball;
    k.dim_ = center.size();
    k.a_ = std::move(center);
    k.r_ = radius;
    return k;
}

Body Body::simplex(std::vector<Point> vertices)
{
    if (vertices.size() < 2) {
        throw Error(ErrorKind::DegenerateBody, "simplex needs d+1 vertices");
    }
    std::size_t d = vertices.size() - 1;
    for (const auto& v : vertices) {
        if (v.size() != d) {
            throw Error(ErrorKind::DegenerateBody, "simplex in R^d needs d+1 vertices with d coordinates");
        }
    }
    Body k;
    k.shape_ = Shape::Simplex;
    k.dim_ = d;
    k.verts_ = std::move(vertices);
    k.prepare_facets();
    return k;
}

void Body::prepare_facets()
{
    std::size_t d = dim_;
    for (std::size_t i = 0; i <= d; ++i) {
        std::vector<Point> pts;
        for (std::size_t j = 0; j <= d; ++j) {
            if (j != i) {
                pts.push_back(verts_[j]);
            }
        }
        // normal via cofactors of the (d-1) x d matrix of edge vectors
        Point n(d);
        for (std::size_t col = 0; col < d; ++col) {
            std::vector<std::vector<mpq_class>> minor;
            for (std::size_t r = 1; r < pts.size(); ++r) {
                std::vector<mpq_class> row;
                for (std::size_t c = 0; c < d; ++c) {
                    if (c != col) {
                        row.push_back(pts[r][c] - pts[0][c]);
                    }
                }
                minor.push_back(row);
            }
            n[col] = det(minor) * ((col % 2) ? -1 : 1);
        }
        mpq_class beta = dot(n, pts[0]);
        mpq_class side = dot(n, verts_[i]);
        if (side == beta) {
            throw Error(ErrorKind::DegenerateBody, "simplex vertices are affinely dependent");
        }
        if (side > beta) {
            for (auto& v : n) {
                v = -v;
            }
            beta = -beta;
        }
        normals_.push_back(n);
        offsets_.push_back(beta);
        std::vector<Ival> nd;
        for (const auto& v : n) {
            nd.push_back(Ival::from_rational(v));
        }
        normals_d_.push_back(nd);
        offsets_d_.push_back(Ival::from_rational(beta));
    }
}

Real Body::volume() const
{
    switch (shape_) {
    case Shape::Interval:
        return Real(mpq_class(b_[0] - a_[0]));
    case Shape::Box: {
        mpq_class v = 1;
        for (std::size_t i = 0; i < dim_; ++i) {
            v *= b_[i] - a_[i];
        }
        return Real(v);
    }
    case Shape::Ball: {
        // V_d = pi^{d/2} / Gamma(d/2 + 1) r^d
        std::size_t k = dim_ / 2;
        mpq_class rd = 1;
        for (std::size_t i = 0; i < dim_; ++i) {
            rd *= r_;
        }
        mpq_class coef;
        if (dim_ % 2 == 0) {
            coef = rd / factorial(k);
        } else {
            mpq_class four_k = 1;
            for (std::size_t i = 0; i < k; ++i) {
                four_k *= 4;
            }
            coef = 2 * factorial(k) * four_k / factorial(dim_) * rd;
        }
        if (k == 0) {
            return Real(coef);
        }
        return Real(coef) * pow(Real::pi(), static_cast<long>(k));
    }
    case Shape::Simplex: {
        std::vector<std::vector<mpq_class>> m;
        for (std::size_t i = 1; i <= dim_; ++i) {
            std::vector<mpq_class> row;
            for (std::size_t c = 0; c < dim_; ++c) {
                row.push_back(verts_[i][c] - verts_[0][c]);
            }
            m.push_back(row);
        }
        mpq_class v = abs(det(m)) / factorial(dim_);
        return Real(v);
    }
    }
    return Real(0L);
}

Real Body::diameter() const
{
    switch (shape_) {
    case Shape::Interval:
        return Real(mpq_class(b_[0] - a_[0]));
    case Shape::Box: {
        mpq_class s = 0;
        for (std::size_t i = 0; i < dim_; ++i) {
            s += (b_[i] - a_[i]) * (b_[i] - a_[i]);
        }
        return sqrt(Real(s));
    }
    case Shape::Ball:
        return Real(mpq_class(2 * r_));
    case Shape::Simplex: {
        mpq_class best = 0;
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            for (std::size_t j = i + 1; j < verts_.size(); ++j) {
                mpq_class s = 0;
                for (std::size_t c = 0; c < dim_; ++c) {
                    s += (verts_[i][c] - verts_[j][c]) * (verts_[i][c] - verts_[j][c]);
                }
                best = std::max(best, s);
            }
        }
        return sqrt(Real(best));
    }
    }
    return Real(0L);
}

Cell Body::bounding_box() const
{
    Cell c(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        switch (shape_) {
        case Shape::Interval:
        case Shape::Box:
            c[i] = {Ival::from_rational(a_[i]).lo, Ival::from_rational(b_[i]).hi};
            break;
        case Shape::Ball:
            c[i] = {Ival::from_rational(a_[i] - r_).lo, Ival::from_rational(a_[i] + r_).hi};
            break;
        case Shape::Simplex: {
            mpq_class lo = verts_[0][i];
            mpq_class hi = verts_[0][i];
            for (const auto& v : verts_) {
                lo = std::min(lo, v[i]);
                hi = std::max(hi, v[i]);
            }
            c[i] = {Ival::from_rational(lo).lo, Ival::from_rational(hi).hi};
            break;
        }
        }
    }
    return c;
}

CellClass Body::classify(const Cell& c) const
{
    switch (shape_) {
    case Shape::Interval:
    case Shape::Box: {
        bool inside = true;
        for (std::size_t i = 0; i < dim_; ++i) {
            Ival a = Ival::from_rational(a_[i]);
            Ival b = Ival::from_rational(b_[i]);
            if (c[i].hi <= a.lo || c[i].lo >= b.hi) {
                return CellClass::Outside;
            }
            if (!(c[i].lo >= a.hi && c[i].hi <= b.lo)) {
                inside = false;
            }
        }
        return inside ? CellClass::Inside : CellClass::Partial;
    }
    case Shape::Ball: {
        Ival near(0.0);
        Ival far(0.0);
        for (std::size_t i = 0; i < dim_; ++i) {
            Ival ci = Ival::from_rational(a_[i]);
            Ival dlo = Ival(c[i].lo) - ci;
            Ival dhi = Ival(c[i].hi) - ci;
            Ival span = hull(dlo, dhi);
            far = far + max(sqr(dlo), sqr(dhi));
            near = near + sqr(span);
        }
        Ival r2 = sqr(Ival::from_rational(r_));
        if (near.lo >= r2.hi) {
            return CellClass::Outside;
        }
        if (far.hi <= r2.lo) {
            return CellClass::Inside;
        }
        return CellClass::Partial;
    }
    case Shape::Simplex: {
        bool inside = true;
        for (std::size_t f = 0; f < normals_d_.size(); ++f) {
            Ival s(0.0);
            for (std::size_t i = 0; i < dim_; ++i) {
                s = s + normals_d_[f][i] * c[i];
            }
            if (s.lo >= offsets_d_[f].hi) {
                return CellClass::Outside;
            }
            if (!(s.hi <= offsets_d_[f].lo)) {
                inside = false;
            }
        }
        return inside ? CellClass::Inside : CellClass::Partial;
    }
    }
    return CellClass::Partial;
}

bool Body::contains(const Point& x) const
{
    switch (shape_) {
    case Shape::Interval:
    case Shape::Box:
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i] < a_[i] || x[i] > b_[i]) {
                return false;
            }
        }
        return true;
    case Shape::Ball: {
        mpq_class s = 0;
        for (std::size_t i = 0; i < dim_; ++i) {
            s += (x[i] - a_[i]) * (x[i] - a_[i]);
        }
        return s <= r_ * r_;
    }
    case Shape::Simplex:
        for (std::size_t f = 0; f < normals_.size(); ++f) {
            if (dot(normals_[f], x) > offsets_[f]) {
                return false;
            }
        }
        return true;
    }
    return false;
}

bool Body::contains(const std::vector<double>& x) const { return contains(to_point(x)); }

mpq_class Body::lower() const
{
    if (dim_ != 1) {
        throw Error(ErrorKind::ShapeUnsupported, "endpoints need a 1-D body");
    }
    return shape_ == Shape::Ball ? mpq_class(a_[0] - r_) : a_[0];
}

mpq_class Body::upper() const
{
    if (dim_ != 1) {
        throw Error(ErrorKind::ShapeUnsupported, "endpoints need a 1-D body");
    }
    return shape_ == Shape::Ball ? mpq_class(a_[0] + r_) : b_[0];
}

std::string Body::to_spec() const
{
    switch (shape_) {
    case Shape::Interval: return "interval:" + a_[0].get_str() + "," + b_[0].get_str();
    case Shape::Box: return "box:" + join(a_) + "|" + join(b_);
    case Shape::Ball: return "ball:" + join(a_) + "|" + r_.get_str();
    case Shape::Simplex: {
        std::string s = "simplex:";
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            s += (i ? "|" : "") + join(verts_[i]);
        }
        return s;
    }
    }
    return "";
}

Body parse_body(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorKind::ParseError, "body spec needs '<shape>:<params>': '" + text + "'");
    }
    std::string kind = text.substr(0, colon);
    auto groups = split(text.substr(colon + 1), '|');
    try {
        if (kind == "interval") {
            Point p = parse_point(groups[0]);
            if (groups.size() != 1 || p.size() != 2) {
                throw Error(ErrorKind::ParseError, "interval takes two numbers");
            }
            return Body::interval(p[0], p[1]);
        }
        if (kind == "box") {
            if (groups.size() != 2) {
                throw Error(ErrorKind::ParseError, "box takes lo|hi");
            }
            return Body::box(parse_point(groups[0]), parse_point(groups[1]));
        }
        if (kind == "ball") {
            if (groups.size() != 2) {
                throw Error(ErrorKind::ParseError, "ball takes center|radius");
            }
            return Body::ball(parse_point(groups[0]), parse_q(groups[1]));
        }
        if (kind == "simplex") {
            std::vector<Point> v;
            for (const auto& g : groups) {
                v.push_back(parse_point(g));
            }
            return Body::simplex(std::move(v));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) {
            throw Error(ErrorKind::ParseError, std::string(e.what()) + " in '" + text + "'");
        }
        throw;
    }
    throw Error(ErrorKind::ParseError, "unknown body shape '" + kind + "'");
}

MeasurableSet::MeasurableSet(std::size_t dim, std::vector<Part> parts) : dim_(dim), parts_(std::move(parts))
{
    if (parts_.empty()) {
        throw Error(ErrorKind::EmptySet, "measurable set needs at least one part");
    }
    measure_ = 0;
    for (const auto& p : parts_) {
        if (p.lo.size() != dim_ || p.hi.size() != dim_) {
            throw Error(ErrorKind::InvalidRange, "part dimension mismatch");
        }
        mpq_class v = 1;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (!(p.lo[i] < p.hi[i])) {
                throw Error(ErrorKind::InvalidRange, "parts need lo < hi in every coordinate");
            }
            v *= p.hi[i] - p.lo[i];
        }
        measure_ += v;
    }
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        for (std::size_t j = i + 1; j < parts_.size(); ++j) {
            bool separated = false;
            for (std::size_t k = 0; k < dim_; ++k) {
                if (parts_[i].hi[k] <= parts_[j].lo[k] || parts_[j].hi[k] <= parts_[i].lo[k]) {
                    separated = true;
                    break;
                }
            }
            if (!separated) {
                throw Error(ErrorKind::InvalidRange, "measurable set parts overlap");
            }
        }
    }
}

MeasurableSet MeasurableSet::intervals(const std::vector<std::pair<mpq_class, mpq_class>>& parts)
{
    std::vector<Part> p;
    for (const auto& [a, b] : parts) {
        p.push_back({{a}, {b}});
    }
    return MeasurableSet(1, std::move(p));
}

MeasurableSet MeasurableSet::of_box(const Point& lo, const Point& hi)
{
    return MeasurableSet(lo.size(), {{lo, hi}});
}

std::vector<Cell> MeasurableSet::cells() const
{
    std::vector<Cell> out;
    for (const auto& p : parts_) {
        Cell c(dim_);
        // inward rounding keeps every cell inside the set
        for (std::size_t i = 0; i < dim_; ++i) {
            c[i] = {Ival::from_rational(p.lo[i]).hi, Ival::from_rational(p.hi[i]).lo};
        }
        out.push_back(c);
    }
    return out;
}

bool MeasurableSet::within(const Body& k) const
{
    for (const auto& p : parts_) {
        std::size_t corners = std::size_t{1} << dim_;
        for (std::size_t mask = 0; mask < corners; ++mask) {
            Point x(dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                x[i] = (mask >> i & 1) ? p.hi[i] : p.lo[i];
            }
            if (!k.contains(x)) {
                return false;
            }
        }
    }
    return true;
}

bool MeasurableSet::contains(const std::vector<double>& x) const
{
    Point q = to_point(x);
    for (const auto& p : parts_) {
        bool in = true;
        for (std::size_t i = 0; i < dim_ && in; ++i) {
            in = p.lo[i] < q[i] && q[i] < p.hi[i];
        }
        if (in) {
            return true;
        }
    }
    return false;
}

std::string MeasurableSet::to_spec() const
{
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        s += i ? ";" : "";
        if (dim_ == 1) {
            s += parts_[i].lo[0].get_str() + "," + parts_[i].hi[0].get_str();
        } else {
            s += join(parts_[i].lo) + "|" + join(parts_[i].hi);
        }
    }
    return s;
}

MeasurableSet parse_set(const std::string& text, std::size_t dim)
{
    std::vector<MeasurableSet::Part> parts;
    for (const auto& piece : split(text, ';')) {
        if (dim == 1) {
            Point p = parse_point(piece);
            if (p.size() != 2) {
                throw Error(ErrorKind::ParseError, "interval part needs 'a,b': '" + piece + "'");
            }
            parts.push_back({{p[0]}, {p[1]}});
        } else {
            auto g = split(piece, '|');
            if (g.size() != 2) {
                throw Error(ErrorKind::ParseError, "box part needs 'lo|hi': '" + piece + "'");
            }
            parts.push_back({parse_point(g[0]), parse_point(g[1])});
        }
    }
    try {
        return MeasurableSet(dim, std::move(parts));
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, std::string(e.what()) + " in '" + text + "'");
    }
}

Region::Region(const Body& body) : body_(&body) {}
Region::Region(const MeasurableSet& set) : set_(&set) {}

std::size_t Region::dim() const { return body_ ? body_->dim() : set_->dim(); }

std::vector<std::pair<Cell, CellClass>> Region::initial_cells() const
{
    std::vector<std::pair<Cell, CellClass>> out;
    if (body_) {
        Cell c = body_->bounding_box();
        out.emplace_back(c, body_->classify(c));
    } else {
        for (auto& c : set_->cells()) {
            out.emplace_back(c, CellClass::Inside);
        }
    }
    return out;
}

CellClass Region::classify(const Cell& c) const
{
    return body_ ? body_->classify(c) : CellClass::Inside;
}

bool Region::contains(const std::vector<double>& x) const
{
    return body_ ? body_->contains(x) : set_->contains(x);
}

Real Region::measure_real() const { return body_ ? body_->volume() : Real(set_->measure()); }

Ival Region::measure() const { return Ival::from_real(measure_real()); }

} // namespace tamebounds
