#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tamebounds/geometry.hpp"

using namespace tamebounds;

namespace {

bool encloses(const Real& r, double lo, double hi)
{
    Ival v = Ival::from_real(r);
    return v.lo <= hi && v.hi >= lo && v.width() < 1e-12;
}

} // namespace

TEST_CASE("volumes and diameters")
{
    CHECK(*parse_body("interval:-1,1").volume().rational() == 2);
    CHECK(*parse_body("box:0,0|2,3").volume().rational() == 6);
    CHECK(*parse_body("simplex:0,0|1,0|0,1").volume().rational() == mpq_class(1, 2));
    CHECK(*parse_body("simplex:0,0,0|1,0,0|0,1,0|0,0,1").volume().rational() == mpq_class(1, 6));
    CHECK(encloses(parse_body("ball:0,0|1").volume(), M_PI, M_PI));
    CHECK(encloses(parse_body("ball:0,0,0|1").volume(), 4 * M_PI / 3, 4 * M_PI / 3));
    CHECK(*parse_body("ball:5|1/2").volume().rational() == 1);
    CHECK(*parse_body("ball:0,0|3/2").diameter().rational() == 3);
    CHECK(*parse_body("box:0,0|3,4").diameter().rational() == 5);
    CHECK(*parse_body("simplex:0,0|3,0|0,4").diameter().rational() == 5);
}

TEST_CASE("parse errors and degenerate bodies")
{
    CHECK_THROWS_AS(parse_body("interval:1,1"), Error);
    CHECK_THROWS_AS(parse_body("blob:1"), Error);
    CHECK_THROWS_AS(parse_body("simplex:0,0|1,1|2,2"), Error);
    CHECK_THROWS_AS(parse_body("ball:0,0|0"), Error);
    CHECK_THROWS_AS(parse_set("0,1;1/2,2", 1), Error);
    CHECK_NOTHROW(parse_set("0,1;1,2", 1));
}

TEST_CASE("spec strings round-trip")
{
    for (const char* s : {"interval:-1,1/3", "box:0,0|1,2", "ball:1,2|1/2", "simplex:0,0|1,0|0,1"}) {
        CHECK(parse_body(s).to_spec() == s);
        CHECK(parse_body(parse_body(s).to_spec()).to_spec() == s);
    }
    CHECK(parse_set("0,1/2;3/4,1", 1).to_spec() == "0,1/2;3/4,1");
}

TEST_CASE("classification agrees with point membership")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::uniform_real_distribution<double> w(0.0, 0.4);
    for (const char* s : {"ball:0,0|1", "simplex:-1,-1|1,0|0,1", "box:-1/2,-1|1,1/3"}) {
        Body k = parse_body(s);
        for (int i = 0; i < 2000; ++i) {
            Cell c{{0, 0}, {0, 0}};
            for (auto& side : c) {
                double a = u(rng);
                side = {a, a + w(rng)};
            }
            CellClass cls = k.classify(c);
            // corners and the center must agree with the classification
            std::vector<std::vector<double>> probes = {cell_center(c), {c[0].lo, c[1].lo}, {c[0].hi, c[1].hi},
                                                       {c[0].lo, c[1].hi}, {c[0].hi, c[1].lo}};
            for (const auto& p : probes) {
                if (cls == CellClass::Inside) {
                    CHECK(k.contains(p));
                }
            }
            if (cls == CellClass::Outside) {
                CHECK_FALSE(k.contains(cell_center(c)));
            }
        }
    }
}

TEST_CASE("measurable sets")
{
    MeasurableSet e = parse_set("0,1/2|1/2,1;1/2,0|1,1/2", 2);
    CHECK(e.measure() == mpq_class(1, 2));
    CHECK(e.within(parse_body("box:0,0|1,1")));
    CHECK_FALSE(e.within(parse_body("ball:1/2,1/2|1/2")));
    CHECK(e.contains({0.25, 0.75}));
    CHECK_FALSE(e.contains({0.25, 0.25}));
    Region r(e);
    CHECK(r.measure().contains(0.5));
}
