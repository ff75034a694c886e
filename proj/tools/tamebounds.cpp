// tamebounds command-line front end.
//
// Exit codes: 0 ok, 1 some verdict is "violated", 2 bad input, 3 undecidable
// boundary, failed admissibility, or an inconclusive check under --strict.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tamebounds/checks.hpp"
#include "tamebounds/degrees.hpp"
#include "tamebounds/suite.hpp"

using namespace tamebounds;
using json = nlohmann::ordered_json;

namespace {

constexpr int kViolated = 1;
constexpr int kBadInput = 2;
constexpr int kUndecided = 3;

struct Options {
    bool json_out = false;
    bool strict = false;
};

void emit(const Options& o, const json& j, const std::string& text)
{
    if (o.json_out) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string line(const std::string& key, const std::string& value) { return key + ": " + value + "\n"; }

std::string degree_text(const DegreeResult& d)
{
    switch (d.status) {
    case DegreeStatus::Finite:
        return std::to_string(d.value);
    case DegreeStatus::Infinite:
        return "INF";
    case DegreeStatus::Unresolved:
        break;
    }
    return ">=" + std::to_string(d.value);
}

const char* status_text(DegreeStatus s)
{
    switch (s) {
    case DegreeStatus::Finite:
        return "finite";
    case DegreeStatus::Infinite:
        return "infinite";
    case DegreeStatus::Unresolved:
        break;
    }
    return "unresolved";
}

// ---- degree ----------------------------------------------------------------

struct DegreeArgs {
    std::string weight;
    std::string scale = "1";
    std::string b = "1";
};

int cmd_degree(const Options& o, const DegreeArgs& a)
{
    WeightSpec mu = parse_weight(a.weight);
    Real scale = parse_real(a.scale);
    Real b = parse_real(a.b);
    DegreeResult d = degree(mu, scale, b);
    json j;
    j["command"] = "degree";
    j["weight"] = mu.to_spec();
    j["scale"] = scale.label();
    j["b"] = b.label();
    j["j0"] = d.j0;
    j["status"] = status_text(d.status);
    j["degree"] = degree_text(d);
    j["partial_sum"] = d.partial_sum.to_string();
    j["decided_at"] = d.decided_at;
    std::string text = line("weight", mu.to_spec()) + line("scale", scale.label()) + line("b", b.label()) +
                       line("j0", std::to_string(d.j0)) + line("degree", degree_text(d)) +
                       line("partial_sum", d.partial_sum.to_string()) +
                       line("decided_at", std::to_string(d.decided_at));
    emit(o, j, text);
    if (d.status == DegreeStatus::Unresolved) {
        std::cerr << "degree not resolved: partial sum " << d.partial_sum.to_string() << " against e\n";
        return kUndecided;
    }
    return 0;
}

// ---- constants -------------------------------------------------------------

struct ConstantsArgs {
    std::string weight;
    std::string m0 = "1";
    std::string body;
    std::string delta;
    std::string b = "1";
    bool smooth = false;
};

int cmd_constants(const Options& o, const ConstantsArgs& a)
{
    WeightSpec mu = parse_weight(a.weight);
    mpq_class m0 = parse_rational(a.m0);
    if (m0 <= 0) {
        throw Error(ErrorKind::ParseError, "M0 must be positive");
    }
    FullWeight w(mu, m0);
    Real delta(1L);
    std::string delta_label = "1";
    if (!a.body.empty()) {
        Body k = parse_body(a.body);
        delta = k.diameter();
        delta_label = k.to_spec();
    } else if (!a.delta.empty()) {
        delta = parse_real(a.delta);
        delta_label = delta.label();
    }
    Real b = parse_real(a.b);
    RemezOptions opts;
    opts.smooth_extension = a.smooth;
    RemezConstants c;
    try {
        c = remez_constants(w, delta, b, opts);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ConditionFails) {
            throw;
        }
        AdmissibleData ad = admissible_data(w, delta, b / Real(m0), false);
        std::cerr << "not admissible: Sigma_mu(j0+1, inf) / delta = " << ad.tail.to_string()
                  << " is not certified above e (j0 = " << ad.j0 << ")\n";
        if (o.json_out) {
            json j;
            j["command"] = "constants";
            j["admissible"] = false;
            j["j0"] = ad.j0;
            j["tail"] = ad.tail.to_string();
            std::cout << j.dump(2) << "\n";
        }
        return kUndecided;
    }
    json j;
    j["command"] = "constants";
    j["admissible"] = true;
    j["weight"] = mu.to_spec();
    j["m0"] = m0.get_str();
    j["delta"] = delta_label;
    j["b"] = b.label();
    j["j0"] = c.j0;
    j["N"] = c.n;
    j["degenerate"] = c.degenerate();
    j["gamma"] = c.gamma.to_string();
    j["Gamma"] = c.big_gamma.to_string();
    j["C_N"] = c.c_n.to_string();
    j["tail"] = c.tail.to_string();
    std::string text = line("weight", mu.to_spec()) + line("M0", m0.get_str()) + line("delta", delta_label) +
                       line("b", b.label()) + line("j0", std::to_string(c.j0)) + line("N", std::to_string(c.n)) +
                       line("gamma", c.gamma.to_string()) + line("Gamma", c.big_gamma.to_string()) +
                       line("C_N", c.c_n.to_string()) + line("tail", c.tail.to_string());
    if (c.degenerate()) {
        text += "degenerate: N - 1 = 0, every Remez-type bound is trivial (infinite factor)\n";
    }
    emit(o, j, text);
    return 0;
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
    std::string name;
    std::string function;
    std::string body;
    std::string set;
    std::string ball;
    std::optional<double> x;
    std::size_t m = 1;
    double t = 0;
    double lambda = 0.5;
    std::string p = "inf";
    double q = 1;
    std::string b;
};

MeasurableSet require_set(const CheckArgs& a, std::size_t dim)
{
    if (a.set.empty()) {
        throw Error(ErrorKind::ParseError, "check " + a.name + " needs -E");
    }
    return parse_set(a.set, dim);
}

int cmd_check(const Options& o, const CheckArgs& a)
{
    CertifiedFunction f = parse_function(a.function);
    if (a.body.empty()) {
        throw Error(ErrorKind::ParseError, "check needs a body (-I or -K)");
    }
    Body k = parse_body(a.body);
    if (f.dim() != k.dim()) {
        throw Error(ErrorKind::ParseError, "function and body dimensions differ");
    }
    CheckRecord r;
    if (a.name == "zero-bound") {
        r = check_zero_bound(f, k, a.x);
    } else if (a.name == "bang-chain") {
        r = check_bang_chain(f, k, a.x.value_or(k.lower().get_d()), a.m);
    } else if (a.name == "remez-1d") {
        r = check_remez_1d(f, k, require_set(a, 1));
    } else if (a.name == "remez-nd") {
        r = check_remez_nd(f, k, require_set(a, k.dim()));
    } else if (a.name == "sublevel") {
        if (!(a.t > 0)) {
            throw Error(ErrorKind::ParseError, "sublevel needs -t > 0");
        }
        r = check_sublevel(f, k, a.t);
    } else if (a.name == "rearrange") {
        r = check_rearrangement(f, k, require_set(a, k.dim()), a.lambda);
    } else if (a.name == "lp") {
        LpExponent p = a.p == "inf" ? LpExponent::inf() : LpExponent::finite(std::stod(a.p));
        r = check_lp(f, k, require_set(a, k.dim()), p, a.q);
    } else if (a.name == "mo") {
        if (a.ball.empty()) {
            throw Error(ErrorKind::ParseError, "mo needs -B");
        }
        r = check_mean_oscillation(f, k, parse_body(a.ball));
    } else if (a.name == "critical") {
        if (a.b.empty()) {
            throw Error(ErrorKind::ParseError, "critical needs -b");
        }
        r = check_critical(f, k, parse_real(a.b));
    } else {
        throw Error(ErrorKind::ParseError, "unknown check '" + a.name + "'");
    }
    json j;
    j["command"] = "check";
    json fields = json::parse(record_json(r));
    for (const auto& [key, v] : fields.items()) {
        j[key] = v;
    }
    std::string text = line("check", r.check);
    for (const auto& [key, v] : r.inputs) {
        text += line("  " + key, v);
    }
    text += line("bound", r.bound) + line("oracle", r.oracle) + line("verdict", to_string(r.verdict));
    if (!r.note.empty()) {
        text += line("note", r.note);
    }
    emit(o, j, text);
    if (r.verdict == CheckVerdict::Violated) {
        return kViolated;
    }
    if (o.strict && r.verdict != CheckVerdict::Holds) {
        return kUndecided;
    }
    return 0;
}

// ---- suite -----------------------------------------------------------------

struct SuiteArgs {
    std::string config;
    std::string out;
    bool timing = false;
    bool quiet = false;
    std::vector<std::string> only;
};

int cmd_suite(const Options& o, const SuiteArgs& a)
{
    std::ifstream in(a.config);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot read config '" + a.config + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    SuiteConfig config = parse_suite_config(buf.str());
    const auto& ids = property_ids();
    for (const auto& id : a.only) {
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
            throw Error(ErrorKind::ParseError, "unknown property '" + id + "'");
        }
    }
    auto progress = [&](const std::string& id, const SuiteSummary& s) {
        if (!a.quiet) {
            std::fprintf(stderr, "%-26s %4zu holds %2zu violated %3zu inconclusive %3zu skipped\n", id.c_str(),
                         s.holds, s.violated, s.inconclusive, s.skipped);
        }
    };
    SuiteReport report = run_suite(config, a.only, progress);
    std::string text = report_json(report, a.timing);
    if (a.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(a.out, std::ios::binary);
        out << text;
        if (!out) {
            throw Error(ErrorKind::ParseError, "cannot write '" + a.out + "'");
        }
    }
    const SuiteSummary& s = report.summary;
    if (!a.quiet) {
        std::fprintf(stderr, "total %zu: %zu holds, %zu violated, %zu inconclusive, %zu skipped\n", s.total,
                     s.holds, s.violated, s.inconclusive, s.skipped);
    }
    (void)o;
    return s.violated > 0 ? kViolated : 0;
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
    std::uint64_t n = 1;
    std::string c = "1";
    std::string eps = "1";
    std::string x;
    std::string weight;
    std::string b = "1";
};

int cmd_compare_poly(const Options& o, const CompareArgs& a, bool bernstein)
{
    Real c = parse_real(a.c);
    PolyDegreeComparison p = compare_polynomial_degrees(a.n, c);
    json j;
    j["command"] = bernstein ? "compare-bernstein" : "compare-markov";
    j["n"] = a.n;
    std::string text = line("n", std::to_string(a.n));
    if (bernstein) {
        j["c"] = c.label();
        j["weight"] = p.mu_bernstein.to_spec();
        j["degree"] = p.degree_bernstein;
        text += line("C", c.label()) + line("weight", p.mu_bernstein.to_spec()) +
                line("degree", std::to_string(p.degree_bernstein));
    } else {
        j["weight"] = p.mu_markov.to_spec();
        j["degree"] = p.degree_markov;
        json factors = json::array();
        std::string listed;
        for (const auto& f : markov_factors(a.n)) {
            factors.push_back(f.get_str());
            listed += (listed.empty() ? "" : " ") + f.get_str();
        }
        j["factors"] = factors;
        text += line("weight", p.mu_markov.to_spec()) + line("degree", std::to_string(p.degree_markov)) +
                line("factors", listed);
    }
    emit(o, j, text);
    return 0;
}

int cmd_compare_analytic(const Options& o, const CompareArgs& a)
{
    mpq_class eps = parse_rational(a.eps);
    mpq_class c = parse_rational(a.c);
    AnalyticDegreeBound r = analytic_degree_bound(eps, c);
    json j;
    j["command"] = "compare-analytic";
    j["eps"] = eps.get_str();
    j["c"] = c.get_str();
    j["degree"] = degree_text(r.degree);
    j["bound"] = r.bound;
    emit(o, j,
         line("eps", eps.get_str()) + line("C", c.get_str()) + line("degree", degree_text(r.degree)) +
             line("zero bound", std::to_string(r.bound)));
    return r.degree.status == DegreeStatus::Unresolved ? kUndecided : 0;
}

int cmd_compare_comtet(const Options& o, const CompareArgs& a)
{
    Real x = parse_real(a.x);
    ComtetBracket c = comtet_bracket(x);
    json j;
    j["command"] = "compare-comtet";
    j["x"] = x.label();
    j["lo"] = c.lo.get_str();
    j["hi"] = c.hi.get_str();
    std::string text = line("x", x.label()) + line("bracket", "[" + c.lo.get_str() + "," + c.hi.get_str() + "]");
    if (x.rational()) {
        std::uint64_t n = harmonic_index(*x.rational());
        j["n"] = n;
        text += line("n(x)", std::to_string(n));
    }
    emit(o, j, text);
    return 0;
}

int cmd_compare_bracket(const Options& o, const CompareArgs& a)
{
    WeightSpec mu = parse_weight(a.weight);
    Real b = parse_real(a.b);
    BracketTwoMu t = bracket_2mu(mu, b);
    json j;
    j["command"] = "compare-bracket";
    j["weight"] = mu.to_spec();
    j["b"] = b.label();
    j["j0"] = t.j0;
    j["d_mu"] = t.d_mu;
    j["d_2mu"] = t.d_two_mu;
    j["lhs_ok"] = t.lhs_ok;
    j["shifted_ok"] = t.shifted_ok;
    if (t.const_upper_ok) {
        j["const_upper_ok"] = *t.const_upper_ok;
    }
    std::string text = line("weight", mu.to_spec()) + line("b", b.label()) + line("j0", std::to_string(t.j0)) +
                       line("d_mu", std::to_string(t.d_mu)) + line("d_2mu", std::to_string(t.d_two_mu)) +
                       line("2 d_mu <= d_2mu", t.lhs_ok ? "yes" : "no") +
                       line("2 (d_mu - j0) <= d_2mu - j0", t.shifted_ok ? "yes" : "no");
    if (t.const_upper_ok) {
        text += line("d_2mu <= 2 d_mu + 1", *t.const_upper_ok ? "yes" : "no");
    }
    emit(o, j, text);
    bool ok = t.shifted_ok && (t.j0 > 0 || t.lhs_ok) && t.const_upper_ok.value_or(true);
    return ok ? 0 : kViolated;
}

int exit_for(const Error& e)
{
    switch (e.kind()) {
    case ErrorKind::BoundaryUndecidable:
    case ErrorKind::TailUndecidable:
    case ErrorKind::ConditionFails:
        return kUndecided;
    case ErrorKind::Inconclusive:
        return kUndecided;
    default:
        return kBadInput;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certified weight-sequence degrees, zero-count bounds and Remez-type inequalities"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json_out, "Print a JSON object instead of text");
    app.add_flag("--strict", o.strict, "Exit 3 when a check is inconclusive or skipped");
    long bits = 0;
    app.add_option("--precision", bits, "Default enclosure precision in bits (overrides TAMEBOUNDS_PRECISION_BITS)")
        ->check(CLI::Range(64L, 65536L));

    DegreeArgs da;
    auto* deg = app.add_subcommand("degree", "mu-degree d_{scale mu}(b)");
    deg->add_option("-w,--weight", da.weight, "Weight spec, e.g. linear:1")->required();
    deg->add_option("-a,--scale", da.scale, "Scale factor a");
    deg->add_option("-b", da.b, "Level b > 0");

    ConstantsArgs ca;
    auto* con = app.add_subcommand("constants", "N, gamma, Gamma and C_N for admissible data");
    con->add_option("-w,--weight", ca.weight, "Weight spec")->required();
    con->add_option("--m0", ca.m0, "M0 (rational)");
    auto* body_opt = con->add_option("-K,--body", ca.body, "Body; its diameter is delta");
    con->add_option("--delta", ca.delta, "Diameter delta (default 1)")->excludes(body_opt);
    con->add_option("-b", ca.b, "Level b > 0");
    con->add_flag("--smooth", ca.smooth, "Use the closed-form extension of the weight");

    CheckArgs ka;
    auto* chk = app.add_subcommand("check", "Verify one bound against the oracle");
    chk->add_option("name", ka.name, "Check name")->required()->check(CLI::IsMember(check_names()));
    chk->add_option("-f,--function", ka.function, "Function spec")->required();
    chk->add_option("-I,-K,--body", ka.body, "Interval or body spec")->required();
    chk->add_option("-E,--set", ka.set, "Subset: 'a,b;c,d' or 'lo|hi;...'");
    chk->add_option("-B,--ball", ka.ball, "Ball for mo");
    chk->add_option("-x", ka.x, "Base point");
    chk->add_option("-m", ka.m, "Chain length");
    chk->add_option("-t", ka.t, "Sublevel height");
    chk->add_option("--lambda", ka.lambda, "Rearrangement fraction in (0,1)");
    chk->add_option("-p", ka.p, "Exponent p (number or inf)");
    chk->add_option("-q", ka.q, "Exponent q < p");
    chk->add_option("-b", ka.b, "Level b for critical");

    SuiteArgs sa;
    auto* sui = app.add_subcommand("suite", "Run the randomized verification suite");
    sui->add_option("config", sa.config, "Config JSON")->required();
    sui->add_option("-o,--output", sa.out, "Report path (stdout by default)");
    sui->add_flag("--timing", sa.timing, "Include per-record seconds (breaks byte equality)");
    sui->add_flag("--quiet", sa.quiet, "No progress on stderr");
    sui->add_option("--only", sa.only, "Property ids to run");

    CompareArgs pa;
    auto* cmp = app.add_subcommand("compare", "Classical degree formulas");
    cmp->require_subcommand(1);
    auto* mk = cmp->add_subcommand("markov", "Markov weight n^2 and its degree");
    mk->add_option("-n", pa.n, "Polynomial degree")->required()->check(CLI::Range(1, 1 << 20));
    auto* be = cmp->add_subcommand("bernstein", "Bernstein weight C n and its degree");
    be->add_option("-n", pa.n, "Band limit")->required()->check(CLI::Range(1, 1 << 20));
    be->add_option("-c", pa.c, "Constant C");
    auto* an = cmp->add_subcommand("analytic", "Degree of linear(C/eps) at level eps");
    an->add_option("--eps", pa.eps, "Radius eps")->required();
    an->add_option("-c", pa.c, "Constant C");
    auto* co = cmp->add_subcommand("comtet", "Harmonic index bracket");
    co->add_option("-x", pa.x, "x >= 2")->required();
    auto* br = cmp->add_subcommand("bracket", "2 d_mu(b) <= d_{2mu}(b)");
    br->add_option("-w,--weight", pa.weight, "Weight spec")->required();
    br->add_option("-b", pa.b, "Level b > 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kBadInput;
    }
    if (bits > 0) {
        set_default_precision(bits);
    }

    try {
        if (*deg) {
            return cmd_degree(o, da);
        }
        if (*con) {
            return cmd_constants(o, ca);
        }
        if (*chk) {
            return cmd_check(o, ka);
        }
        if (*sui) {
            return cmd_suite(o, sa);
        }
        if (*mk) {
            return cmd_compare_poly(o, pa, false);
        }
        if (*be) {
            return cmd_compare_poly(o, pa, true);
        }
        if (*an) {
            return cmd_compare_analytic(o, pa);
        }
        if (*co) {
            return cmd_compare_comtet(o, pa);
        }
        if (*br) {
            return cmd_compare_bracket(o, pa);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what();
        if (e.bracket()) {
            std::cerr << " (enclosure " << bracket_string(e.bracket()->first, e.bracket()->second) << ")";
        }
        std::cerr << "\n";
        return exit_for(e);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number: " << e.what() << "\n";
        return kBadInput;
    }
    return 0;
}
