// Acceptance run: one PASS/FAIL line per criterion, each with its time limit.
// Exit status is nonzero when any criterion fails.
//
// usage: acceptance <tamebounds binary> <config json>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tamebounds/checks.hpp"
#include "tamebounds/corpus.hpp"
#include "tamebounds/degrees.hpp"
#include "tamebounds/suite.hpp"

using namespace tamebounds;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit, const std::function<Outcome()>& body)
{
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = took < limit;
    bool pass = o.ok && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s; %.2f s, limit %.0f s%s\n", pass ? "PASS" : "FAIL", id, title,
                o.detail.c_str(), took, limit, in_time ? "" : " EXCEEDED");
    std::fflush(stdout);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

SuiteSummary run_property(const SuiteConfig& base, const std::string& id, std::uint64_t trials)
{
    SuiteConfig c = base;
    c.trial_overrides[id] = trials;
    return run_suite(c, {id}).summary;
}

std::string summary_text(const SuiteSummary& s)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu draws: %zu holds, %zu violated, %zu inconclusive, %zu skipped", s.total,
                  s.holds, s.violated, s.inconclusive, s.skipped);
    return buf;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 3) {
        std::fprintf(stderr, "usage: acceptance <tamebounds binary> <config json>\n");
        return 2;
    }
    const std::string tool = argv[1];
    const std::string config_path = argv[2];
    SuiteConfig config = parse_suite_config(read_file(config_path));

    criterion(1, "degree formulas", 1, [] {
        int exact = 0;
        for (std::uint64_t n = 1; n <= 30; ++n) {
            DegreeResult d = degree(WeightSpec::constant(Real(mpq_class(n * n))), Real(1L), Real(1L));
            long expected = oracle::floor_times_e(mpq_class(n * n));
            exact += d.finite() && expected >= 0 && d.value == static_cast<std::uint64_t>(expected);
        }
        // H_8 < e < H_9 from exact harmonic sums
        auto [lo, hi] = oracle::e_bracket();
        bool harmonic = oracle::harmonic(8) < lo && hi < oracle::harmonic(9);
        DegreeResult lin = degree(WeightSpec::linear(Real(1L)), Real(1L), Real(1L));
        bool linear = harmonic && lin.finite() && lin.value == 8;
        return Outcome{exact == 30 && linear, std::to_string(exact) + "/30 floor(e n^2) exact, linear:1 degree " +
                                                  std::to_string(lin.value)};
    });

    criterion(2, "bracket law", 10, [&] {
        int checked = 0;
        int violated = 0;
        int const_checked = 0;
        auto one = [&](const WeightSpec& mu) {
            try {
                BracketTwoMu t = bracket_2mu(mu, Real(1L));
                ++checked;
                violated += !t.lhs_ok;
                if (t.const_upper_ok) {
                    ++const_checked;
                    violated += !*t.const_upper_ok;
                }
            } catch (const Error& e) {
                // an infinite degree makes both sides infinite
                if (e.kind() != ErrorKind::DomainError) {
                    throw;
                }
            }
        };
        for (const char* spec : {"const:1", "const:4", "const:1/3", "const:7/2", "const:1/(2e)", "linear:1",
                                 "linear:1/3", "power:1,1/2", "power:1/5,2", "power:2,3/2", "geom:1/10,2",
                                 "geom:1/100,3/2", "table:1,2,3,4,5,6,7,8,9,10"}) {
            one(parse_weight(spec));
        }
        Rng rng(config.seed, "acceptance.bracket", 0);
        int finite_tables = checked;
        for (int i = 0; i < 1000; ++i) {
            long len = rng.between(8, 30);
            std::vector<mpq_class> v;
            mpq_class x(rng.between(1, 8), 16);
            x.canonicalize();
            for (long j = 0; j < len; ++j) {
                v.push_back(x);
                mpq_class step(rng.between(0, 4), 16);
                step.canonicalize();
                x += step;
            }
            one(WeightSpec::table(v));
        }
        finite_tables = checked - finite_tables;
        return Outcome{violated == 0 && finite_tables > 0,
                       std::to_string(checked) + " finite brackets (" + std::to_string(finite_tables) +
                           " of 1000 random tables), " + std::to_string(const_checked) + " constant upper checks, " +
                           std::to_string(violated) + " violations"};
    });

    criterion(3, "Bang lemma property", 60, [&] {
        SuiteSummary s = run_property(config, "bang.lemma", 10000);
        bool ok = s.total == 10000 && s.violated == 0 && s.skipped == 0 && s.inconclusive * 100 <= s.total;
        return Outcome{ok, summary_text(s)};
    });

    criterion(4, "zero-count dominance", 120, [&] {
        int violated = 0;
        int holds = 0;
        int total = 0;
        std::string cheb;
        for (unsigned n = 1; n <= 10; ++n) {
            BangProfile p(CertifiedFunction::chebyshev(n), -1, 1, markov_weight(n));
            ZeroBoundReport z = zero_count_bound(p, 1.0);
            ZeroCount c = count_zeros(p.function(), -1, 1, true);
            ++total;
            holds += c.hi <= z.bound_total;
            violated += c.lo > z.bound_total;
            cheb += (cheb.empty() ? "" : " ") + std::to_string(c.lo) + "<=" + std::to_string(z.bound_total);
        }
        Rng rng(config.seed, "acceptance.zeros", 0);
        Body interval = Body::interval(-1, 1);
        for (int i = 0; i < 200; ++i) {
            CertifiedFunction f = i < 100 ? random_polynomial(rng, 8) : random_waves(rng, 1, 3, 8);
            CheckRecord r = check_zero_bound(f, interval);
            ++total;
            holds += r.verdict == CheckVerdict::Holds;
            violated += r.verdict == CheckVerdict::Violated;
        }
        return Outcome{violated == 0 && holds == total, "Chebyshev " + cheb + "; " + std::to_string(holds) + "/" +
                                                            std::to_string(total) + " hold, " +
                                                            std::to_string(violated) + " violated"};
    });

    criterion(5, "univariate Remez", 300, [&] {
        SuiteSummary s = run_property(config, "remez.remez-1d", 500);
        return Outcome{s.holds == 500 && s.violated == 0, summary_text(s)};
    });

    criterion(6, "multivariate Remez, sublevel, rearrangement, Lp, mo", 900, [&] {
        bool ok = true;
        std::string detail;
        for (const char* id : {"remez.remez-nd", "remez.sublevel", "remez.rearrange", "remez.lp", "remez.mo"}) {
            bool mo = std::string(id) == "remez.mo";
            SuiteSummary s = run_property(config, id, mo ? 200 : 100);
            bool here = s.violated == 0 && s.holds >= 100;
            if (mo) {
                here = here && s.skipped * 2 < s.total && s.inconclusive == 0;
            }
            ok = ok && here;
            detail += std::string(detail.empty() ? "" : "; ") + id + " " + std::to_string(s.holds) + "/" +
                      std::to_string(s.total) + " hold, " + std::to_string(s.violated) + " violated, " +
                      std::to_string(s.skipped) + " skipped";
        }
        return Outcome{ok, detail};
    });

    criterion(7, "Comtet bracket", 5, [&] {
        SuiteSummary s = run_property(config, "degrees.comtet", 200);
        return Outcome{s.holds == 200, summary_text(s)};
    });

    criterion(8, "scaling invariance", 60, [&] {
        SuiteSummary s = run_property(config, "remez.scaling", 100);
        return Outcome{s.holds == 100, summary_text(s)};
    });

    criterion(9, "determinism", 600, [&] {
        std::string a = "acceptance_report_a.json";
        std::string b = "acceptance_report_b.json";
        std::string base = "\"" + tool + "\" suite \"" + config_path + "\" --quiet -o ";
        int ra = std::system((base + a).c_str());
        int rb = std::system((base + b).c_str());
        std::string ta = read_file(a);
        std::string tb = read_file(b);
        bool same = !ta.empty() && ta == tb;
        return Outcome{ra == 0 && rb == 0 && same, std::to_string(ta.size()) + " bytes, " +
                                                       (same ? "identical" : "different") + ", exit codes " +
                                                       std::to_string(ra) + " and " + std::to_string(rb)};
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
