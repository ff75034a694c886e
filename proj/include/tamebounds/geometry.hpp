#ifndef TAMEBOUNDS_GEOMETRY_HPP
#define TAMEBOUNDS_GEOMETRY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "tamebounds/ival.hpp"
#include "tamebounds/real.hpp"

namespace tamebounds {

using Point = std::vector<mpq_class>;
/// Axis-aligned box with double endpoints; the grid oracles subdivide these.
using Cell = std::vector<Ival>;

enum class CellClass { Inside, Outside, Partial };

Ival cell_volume(const Cell& c);
/// Split along the widest axis at the midpoint.
std::pair<Cell, Cell> bisect(const Cell& c);
std::vector<double> cell_center(const Cell& c);

enum class Shape { Interval, Box, Ball, Simplex };

/// Convex body with nonempty interior: interval, box, ball or simplex.
class Body {
public:
    static Body interval(const mpq_class& a, const mpq_class& b);
    static Body box(Point lo, Point hi);
    static Body ball(Point center, const mpq_class& radius);
    static Body simplex(std::vector<Point> vertices);

    Shape shape() const { return shape_; }
    std::size_t dim() const { return dim_; }

    Real volume() const;
    Real diameter() const;
    /// Smallest box containing the body, rounded outward to doubles.
    Cell bounding_box() const;
    CellClass classify(const Cell& c) const;
    /// Exact membership of a point with double coordinates.
    bool contains(const std::vector<double>& x) const;
    bool contains(const Point& x) const;

    /// Interval endpoints (1-D bodies).
    mpq_class lower() const;
    mpq_class upper() const;
    const Point& center() const { return a_; }
    const mpq_class& radius() const { return r_; }
    const std::vector<Point>& vertices() const { return verts_; }
    const Point& box_lo() const { return a_; }
    const Point& box_hi() const { return b_; }

    std::string to_spec() const;

private:
    Body() = default;
    void prepare_facets();

    Shape shape_ = Shape::Interval;
    std::size_t dim_ = 1;
    Point a_;  // interval/box lower corner, ball center
    Point b_;  // interval/box upper corner
    mpq_class r_;
    std::vector<Point> verts_;
    // simplex facets: <n, x> <= beta
    std::vector<Point> normals_;
    std::vector<mpq_class> offsets_;
    std::vector<std::vector<Ival>> normals_d_;
    std::vector<Ival> offsets_d_;
};

/// interval:a,b | box:lo1,..|hi1,.. | ball:c1,..|r | simplex:v0|v1|...
Body parse_body(const std::string& text);

/// Finite union of pairwise disjoint open boxes (intervals when d = 1).
class MeasurableSet {
public:
    struct Part {
        Point lo;
        Point hi;
    };

    MeasurableSet(std::size_t dim, std::vector<Part> parts);
    /// Union of the given open intervals.
    static MeasurableSet intervals(const std::vector<std::pair<mpq_class, mpq_class>>& parts);
    static MeasurableSet of_box(const Point& lo, const Point& hi);

    std::size_t dim() const { return dim_; }
    const std::vector<Part>& parts() const { return parts_; }
    const mpq_class& measure() const { return measure_; }
    std::vector<Cell> cells() const;
    bool within(const Body& k) const;
    bool contains(const std::vector<double>& x) const;
    std::string to_spec() const;

private:
    std::size_t dim_;
    std::vector<Part> parts_;
    mpq_class measure_;
};

/// "a,b;c,d" for intervals, "lo1,lo2|hi1,hi2;..." for boxes.
MeasurableSet parse_set(const std::string& text, std::size_t dim);

/// A body or a box union, the two kinds of integration domain.
class Region {
public:
    Region(const Body& body);           // NOLINT(google-explicit-constructor)
    Region(const MeasurableSet& set);   // NOLINT(google-explicit-constructor)

    std::size_t dim() const;
    /// Starting cells with their classification.
    std::vector<std::pair<Cell, CellClass>> initial_cells() const;
    CellClass classify(const Cell& c) const;
    bool contains(const std::vector<double>& x) const;
    Ival measure() const;
    Real measure_real() const;

private:
    const Body* body_ = nullptr;
    const MeasurableSet* set_ = nullptr;
};

} // namespace tamebounds

#endif
