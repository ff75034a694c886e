#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "tamebounds/corpus.hpp"
#include "tamebounds/errors.hpp"
#include "tamebounds/suite.hpp"

using namespace tamebounds;

TEST_CASE("random streams")
{
    Rng a(42, "x", 3);
    Rng b(42, "x", 3);
    Rng c(42, "x", 4);
    Rng d(42, "y", 3);
    std::uint64_t va = a.next();
    CHECK(va == b.next());
    CHECK(va != c.next());
    CHECK(va != d.next());
    Rng r(1, "bounds", 0);
    for (int i = 0; i < 1000; ++i) {
        long v = r.between(-3, 5);
        CHECK(v >= -3);
        CHECK(v <= 5);
        double u = r.unit();
        CHECK(u >= 0);
        CHECK(u < 1);
    }
}

TEST_CASE("corpus draws stay inside their bodies")
{
    Rng rng(9, "corpus", 0);
    for (const char* spec : {"interval:-1,1", "interval:0,1/3", "box:0,0|1,2", "ball:0,0|1", "ball:1,1,1|1/2",
                             "simplex:0,0|1,0|0,1"}) {
        Body k = parse_body(spec);
        for (int i = 0; i < 50; ++i) {
            CHECK(k.contains(random_point(rng, k)));
            MeasurableSet e = random_set(rng, k);
            CHECK(e.within(k));
            CHECK(e.measure() > 0);
            CHECK(e.parts().size() <= 8);
            Body ball = random_ball(rng, k);
            auto [lo, hi] = inner_box(k);
            for (std::size_t j = 0; j < k.dim(); ++j) {
                CHECK(ball.center()[j] - ball.radius() >= lo[j]);
                CHECK(ball.center()[j] + ball.radius() <= hi[j]);
            }
        }
    }
}

TEST_CASE("corpus functions")
{
    Rng rng(3, "functions", 0);
    for (int i = 0; i < 50; ++i) {
        CertifiedFunction p = random_polynomial(rng, 8);
        CHECK(p.poly().degree() >= 1);
        CHECK(p.poly().degree() <= 8);
        CertifiedFunction r = random_root_polynomial(rng, 5, -1, 1);
        CHECK(count_zeros(r, -1, 1, true).lo == r.poly().degree());
        CertifiedFunction w = random_offset_waves(rng, 2, 6);
        // the constant term dominates, so |f| > 0.99 everywhere
        for (double x : {0.0, 0.3, 0.77}) {
            CHECK(abs(w.eval({x, 1 - x})).lo > 0.99);
        }
    }
}

TEST_CASE("single checks on known instances")
{
    Body i = parse_body("interval:-1,1");
    CheckRecord z = check_zero_bound(parse_function("cheb:5"), i, 1.0);
    CHECK(z.verdict == CheckVerdict::Holds);
    CHECK(z.oracle == "[5,5]");
    CheckRecord r = check_remez_1d(parse_function("cheb:5"), i, parse_set("0,1/2", 1));
    CHECK(r.verdict == CheckVerdict::Holds);
    CheckRecord s = check_sublevel(parse_function("poly:0,1"), parse_body("interval:0,1"), 1.0);
    CHECK(s.verdict == CheckVerdict::Holds);
    CHECK(s.oracle == "[1,1]");
    // log|t| is not integrable-checked near 0
    CheckRecord m = check_mean_oscillation(parse_function("poly:0,1"), i, parse_body("ball:0|1/2"));
    CHECK(m.verdict == CheckVerdict::Skipped);
    CheckRecord sc = check_scaling(parse_function("waves:1@2;1@0"), parse_body("box:0,0|1,1"),
                                   parse_set("0,0|1/2,1/2", 2), Real(mpq_class(73, 10)));
    CHECK(sc.verdict == CheckVerdict::Holds);
    CHECK(check_names().size() == 9);
}

TEST_CASE("verdict helpers")
{
    CHECK(upper_verdict(Bracket{1, 2}, 2) == CheckVerdict::Holds);
    CHECK(upper_verdict(Bracket{1, 3}, 2) == CheckVerdict::Inconclusive);
    CHECK(upper_verdict(Bracket{2.5, 3}, 2) == CheckVerdict::Violated);
    CHECK(lower_verdict(Bracket{2, 3}, 2) == CheckVerdict::Holds);
    CHECK(lower_verdict(Bracket{0, 1}, 2) == CheckVerdict::Violated);
    CHECK(combine({CheckVerdict::Holds, CheckVerdict::Inconclusive}) == CheckVerdict::Inconclusive);
    CHECK(combine({CheckVerdict::Inconclusive, CheckVerdict::Violated}) == CheckVerdict::Violated);
    CHECK(bracket_string(0.1, 1e300) == "[0.10000000000000001,1.0000000000000001e+300]");
    CHECK(number_string(-1.0 / 0.0) == "-inf");
}

TEST_CASE("config parsing")
{
    SuiteConfig c = parse_suite_config(R"({"seed": 5, "trials": 3, "trial_overrides": {"bang.lemma": 7},
        "weights": ["const:4"], "functions": ["cheb:5"], "bodies": ["interval:0,1"],
        "tolerances": {"zero_measure_fraction": 0.05}, "precision_cap": 1024})");
    CHECK(c.seed == 5);
    CHECK(c.trials_for("bang.lemma") == 7);
    CHECK(c.trials_for("remez.lp") == 3);
    CHECK(c.zero_measure_fraction == 0.05);
    CHECK(c.precision_cap == 1024);
    for (const char* bad : {"[]", "{\"seed\": -1}", "{\"trials\": 1.5}", "{\"colour\": 1}",
                            "{\"trial_overrides\": {\"no.such\": 1}}", "{\"weights\": [\"wobble:1\"]}",
                            "{\"bodies\": [\"interval:1,0\"]}", "{\"tolerances\": {\"weight_spot_check\": 0}}",
                            "{\"precision_cap\": 16}", "{oops"}) {
        CAPTURE(bad);
        try {
            parse_suite_config(bad);
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK((e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::DegenerateBody));
        }
    }
}

TEST_CASE("suite runs are deterministic")
{
    SuiteConfig c = parse_suite_config(R"({"seed": 11, "trials": 2,
        "weights": ["const:4", "linear:1"], "functions": ["cheb:5", "waves:1@2;1@0"],
        "bodies": ["interval:-1,1", "ball:0,0|1"]})");
    SuiteReport a = run_suite(c);
    SuiteReport b = run_suite(c);
    CHECK(a.records.size() == 2 * property_ids().size());
    CHECK(a.summary.violated == 0);
    CHECK(report_json(a) == report_json(b));
    CHECK(report_json(a).find("\"seconds\"") == std::string::npos);
    CHECK(report_json(a, true).find("\"seconds\"") != std::string::npos);
    // a trial does not depend on which other properties ran
    SuiteReport only = run_suite(c, {"remez.lp"});
    REQUIRE(only.records.size() == 2);
    auto it = std::find_if(a.records.begin(), a.records.end(),
                           [](const SuiteRecord& r) { return r.id == "remez.lp/0001"; });
    REQUIRE(it != a.records.end());
    CHECK(record_json(it->record) == record_json(only.records[1].record));
    // another seed draws other instances
    c.seed = 12;
    CHECK(report_json(run_suite(c, {"remez.lp"})) != report_json(only));
}

TEST_CASE("empty suite")
{
    SuiteConfig c = parse_suite_config(R"({"trials": 0})");
    SuiteReport r = run_suite(c);
    CHECK(r.records.empty());
    CHECK(r.summary.total == 0);
}
