#include "effdist/charfun.hpp"
#include "effdist/distributions.hpp"
#include "effdist/dml.hpp"
#include "effdist/elementary.hpp"
#include "effdist/error.hpp"
#include "effdist/limits.hpp"
#include "effdist/transfer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

using namespace effdist;
using nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, bad_input = 2, budget = 3, invalid_phi = 4, other = 5 };

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::parse_error:
    case ErrorKind::invalid_argument: return bad_input;
    case ErrorKind::precision_overflow:
    case ErrorKind::budget_exhausted:
    case ErrorKind::grid_budget_exceeded: return budget;
    case ErrorKind::imaginary_residual:
    case ErrorKind::negativity_violation:
    case ErrorKind::not_normalized:
    case ErrorKind::invalid_weights: return invalid_phi;
    default: return other;
    }
}

Dyadic parse_dyadic(const std::string& s, const char* what)
{
    try {
        return Dyadic::parse(s);
    } catch (const Error&) {
        throw Error(ErrorKind::parse_error, std::string(what) + ": expected an integer or m/2^e, got '" + s + "'");
    }
}

// constant_one, sinc_uniform(a), gaussian, cos, binomial_std(p,m)
CharOracle parse_phi(const std::string& spec)
{
    static const std::regex form(R"(\s*([a-z_]+)\s*(?:\(([^)]*)\))?\s*)");
    std::smatch m;
    if (!std::regex_match(spec, m, form))
        throw Error(ErrorKind::parse_error, "cannot read characteristic function '" + spec + "'");
    const std::string id = m[1];
    std::vector<std::string> args;
    if (m[2].matched) {
        std::stringstream ss(m[2].str());
        for (std::string a; std::getline(ss, a, ',');) {
            a.erase(0, a.find_first_not_of(' '));
            a.erase(a.find_last_not_of(' ') + 1);
            args.push_back(a);
        }
    }
    auto want = [&](std::size_t n) {
        if (args.size() != n)
            throw Error(ErrorKind::parse_error, id + " takes " + std::to_string(n) + " argument(s)");
    };
    if (id == "constant_one") {
        want(0);
        return char_constant_one();
    }
    if (id == "gaussian") {
        want(0);
        return char_gaussian();
    }
    if (id == "cos") {
        want(0);
        return char_cos();
    }
    if (id == "sinc_uniform") {
        want(1);
        return char_sinc_uniform(parse_dyadic(args[0], "sinc_uniform"));
    }
    if (id == "binomial_std") {
        want(2);
        long n = 0;
        try {
            n = std::stol(args[1]);
        } catch (const std::exception&) {
        }
        if (n < 1)
            throw Error(ErrorKind::parse_error, "binomial_std needs m >= 1");
        return char_binomial_std(BernoulliParams(Real::parse(args[0])), static_cast<std::uint64_t>(n));
    }
    throw Error(ErrorKind::parse_error, "unknown characteristic function '" + id + "'");
}

DistOracle parse_dist(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse_error, std::string("distribution JSON: ") + e.what());
    }
    return distribution_from_json(j);
}

ordered_json iv(const Interval& x) { return {{"lo", x.lo.str()}, {"hi", x.hi.str()}}; }

// t_j = -M + j h for t_j <= M
std::vector<Dyadic> grid(const Dyadic& lo, const Dyadic& hi, const Dyadic& step)
{
    if (step.sign() <= 0)
        throw Error(ErrorKind::invalid_argument, "grid step must be positive");
    std::vector<Dyadic> g;
    for (Dyadic t = lo; t <= hi; t = t + step) {
        if (g.size() >= default_limits().max_grid)
            throw Error(ErrorKind::grid_budget_exceeded, "grid has more than " +
                                                             std::to_string(default_limits().max_grid) + " points");
        g.push_back(t);
    }
    return g;
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw Error(ErrorKind::invalid_argument, "cannot open '" + path + "' for writing");
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct Common {
    int k = 10;
    std::string format = "csv";
    std::string output;
};

void add_common(CLI::App* c, Common& o, const char* default_format)
{
    o.format = default_format;
    c->add_option("--precision,-k", o.k, "target precision k (widths <= 2^-k)")->check(CLI::Range(1, 400));
    c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--output,-o", o.output, "output file (default stdout)");
}

ordered_json envelope(const char* cmd, ordered_json inputs, int k)
{
    ordered_json j;
    j["command"] = cmd;
    j["inputs"] = std::move(inputs);
    j["k"] = k;
    return j;
}

void emit_json(Output& out, const ordered_json& j) { out.os() << j.dump(2) << '\n'; }

int run_char(const Common& o, const std::string& dist, const std::string& phi_id, const std::string& range,
             const std::string& step)
{
    if (dist.empty() == phi_id.empty())
        throw Error(ErrorKind::parse_error, "give exactly one of --dist or --phi");
    const CharOracle phi = dist.empty() ? parse_phi(phi_id) : char_from_dist(parse_dist(dist));
    const Dyadic M = parse_dyadic(range, "--range");
    if (M.sign() <= 0)
        throw Error(ErrorKind::invalid_argument, "--range must be positive");
    const auto ts = grid(-M, M, parse_dyadic(step, "--grid-step"));
    Output out(o.output);
    if (o.format == "csv") {
        out.os() << "t,re_lo,re_hi,im_lo,im_hi\n";
        for (const Dyadic& t : ts) {
            const ComplexInterval v = phi.eval(t, o.k);
            out.os() << t.str() << ',' << v.re.lo.str() << ',' << v.re.hi.str() << ',' << v.im.lo.str() << ','
                     << v.im.hi.str() << '\n';
        }
        return ok;
    }
    ordered_json j = envelope("char", {{"phi", phi.label()}, {"range", M.str()}, {"grid_step", step}}, o.k);
    ordered_json rows = ordered_json::array();
    for (const Dyadic& t : ts) {
        const ComplexInterval v = phi.eval(t, o.k);
        rows.push_back({{"t", t.str()}, {"re", iv(v.re)}, {"im", iv(v.im)}});
    }
    j["result"] = std::move(rows);
    j["error_budget_breakdown"] = {{"per_value", Dyadic::pow2(-o.k).str()}};
    emit_json(out, j);
    return ok;
}

int run_tightness(const Common& o, const std::string& dist)
{
    const DistOracle mu = parse_dist(dist);
    const std::int64_t L = tightness(mu, o.k);
    Output out(o.output);
    if (o.format == "csv") {
        out.os() << "k,L\n" << o.k << ',' << L << '\n';
        return ok;
    }
    ordered_json j = envelope("tightness", {{"dist", nlohmann::json::parse(dist)}}, o.k);
    j["L"] = L;
    j["result"] = {{"L", L}, {"certificate", "mu(w_L) > 1 - 2^-k"}};
    j["error_budget_breakdown"] = {{"tail", Dyadic::pow2(-o.k).str()}};
    emit_json(out, j);
    return ok;
}

// convergence certificates the CLI can build without user code
std::optional<CharConvergence> make_cert(const std::string& kind, const CharOracle& phi)
{
    if (kind == "none")
        return std::nullopt;
    if (kind == "damped")
        return damped_cert(phi);
    // sinc(t 2^-m) -> 1 with |sinc(u) - 1| <= u^2/6
    const CharOracle one = char_constant_one();
    return CharConvergence{[](std::int64_t m) { return char_sinc_uniform(Dyadic::pow2(-m)); },
                           std::make_shared<const CharOracle>(one), [](std::int64_t M, std::int64_t k) {
                               std::int64_t m = 0;
                               const mpz_class lhs = mpz_class(M) * M << static_cast<unsigned long>(k);
                               while (!(lhs < mpz_class(6) << static_cast<unsigned long>(2 * m)))
                                   ++m;
                               return m;
                           }};
}

int run_glivenko(const Common& o, const std::string& dist, const std::string& phi_id, unsigned window,
                 const std::string& cert_kind)
{
    std::optional<CharOracle> phi;
    if (cert_kind == "sinc_shrink") {
        if (!dist.empty() || !phi_id.empty())
            throw Error(ErrorKind::parse_error, "--cert sinc_shrink fixes the sequence; drop --dist/--phi");
        phi = char_constant_one();
    } else {
        if (dist.empty() == phi_id.empty())
            throw Error(ErrorKind::parse_error, "give exactly one of --dist or --phi");
        phi = dist.empty() ? parse_phi(phi_id) : char_from_dist(parse_dist(dist));
    }
    const TestFunction f = make_w(window);
    const SmoothingPlan plan = smoothing_params(f, o.k + 1);
    const Interval v = glivenko_eval(*phi, f, o.k);
    std::optional<std::int64_t> threshold;
    if (const auto cert = make_cert(cert_kind, *phi))
        threshold = glivenko_modulus(*cert, f, o.k);
    Output out(o.output);
    const std::string fname = "w_" + std::to_string(window);
    if (o.format == "csv") {
        out.os() << "f,k,lo,hi,L,n,threshold\n"
                 << fname << ',' << o.k << ',' << v.lo.str() << ',' << v.hi.str() << ',' << plan.L << ',' << plan.n
                 << ',' << (threshold ? std::to_string(*threshold) : "") << '\n';
        return ok;
    }
    ordered_json j = envelope("glivenko", {{"phi", phi->label()}, {"f", fname}, {"cert", cert_kind}}, o.k);
    j["f"] = fname;
    j["threshold"] = threshold ? ordered_json(*threshold) : ordered_json(nullptr);
    j["plan"] = {{"L", plan.L}, {"n", plan.n}};
    j["result"] = {{"value", iv(v)}};
    j["error_budget_breakdown"] = {{"smoothing", Dyadic::pow2(-(o.k + 1)).str()},
                                   {"quadrature", Dyadic::pow2(-(o.k + 1)).str()}};
    emit_json(out, j);
    return ok;
}

int run_bochner(const Common& o, const std::string& phi_id, std::uint64_t n, const std::string& range,
                const std::string& step)
{
    const CharOracle phi = parse_phi(phi_id);
    if (n == 0)
        throw Error(ErrorKind::invalid_argument, "--n must be positive");
    const Dyadic X = parse_dyadic(range, "--range");
    if (X.sign() <= 0)
        throw Error(ErrorKind::invalid_argument, "--range must be positive");
    const auto xs = grid(-X, X, parse_dyadic(step, "--grid-step"));
    Output out(o.output);
    if (o.format == "csv") {
        out.os() << "x,lo,hi\n";
        for (const Dyadic& x : xs) {
            const Interval v = bochner_density(phi, n, Interval(x), o.k);
            out.os() << x.str() << ',' << v.lo.str() << ',' << v.hi.str() << '\n';
        }
        return ok;
    }
    ordered_json j = envelope("bochner", {{"phi", phi.label()}, {"n", n}, {"range", X.str()}, {"grid_step", step}}, o.k);
    ordered_json rows = ordered_json::array();
    for (const Dyadic& x : xs)
        rows.push_back({{"x", x.str()}, {"density", iv(bochner_density(phi, n, Interval(x), o.k))}});
    const BochnerMass m = bochner_normalization(phi, n, o.k);
    j["result"] = {{"density", std::move(rows)},
                   {"mass", {{"X", m.X.str()}, {"core", iv(m.core)}, {"tail", m.tail.str()}, {"total", iv(m.total())}}}};
    j["error_budget_breakdown"] = {{"density", Dyadic::pow2(-o.k).str()},
                                   {"mass_core", Dyadic::pow2(-(o.k + 1)).str()},
                                   {"mass_tail", m.tail.str()}};
    emit_json(out, j);
    return ok;
}

int run_dml(const Common& o, const std::string& p_text, const std::string& K_text, const std::string& step)
{
    const BernoulliParams bp(Real::parse(p_text));
    const Dyadic K = parse_dyadic(K_text, "--K");
    if (K.sign() <= 0)
        throw Error(ErrorKind::invalid_argument, "--K must be positive");
    const std::uint64_t m = dml_modulus(bp, K, o.k);
    const DmlBound b = dml_error_bound(bp, K, m, o.k);
    Output out(o.output);
    if (o.format == "csv") {
        // convergence table at the certified m; gap bound e^{-t^2/2}(e^{total} - 1) + widths
        const std::int64_t wk = o.k + 20;
        const Interval grow = exp(Interval(b.total.hi), wk) - Interval(1);
        out.os() << "m,t,psi_lo,psi_hi,gauss_lo,gauss_hi,certified_gap_bound,psi_im_lo,psi_im_hi\n";
        for (const Dyadic& t : grid(-K, K, parse_dyadic(step, "--grid-step"))) {
            const ComplexInterval psi = std_binomial_char(bp, m, t, wk);
            const Interval g = gaussian_char(t, wk);
            const Dyadic gap = (g * grow).hi + psi.width() + g.width();
            out.os() << m << ',' << t.str() << ',' << psi.re.lo.str() << ',' << psi.re.hi.str() << ',' << g.lo.str()
                     << ',' << g.hi.str() << ',' << gap.str() << ',' << psi.im.lo.str() << ',' << psi.im.hi.str()
                     << '\n';
        }
        return ok;
    }
    ordered_json j = envelope("dml", {{"p", p_text}, {"K", K.str()}}, o.k);
    j["m"] = m;
    j["bound"] = b.total.hi.str();
    j["result"] = {{"m", m}, {"bound", iv(b.total)}, {"valid", b.valid}};
    j["error_budget_breakdown"] = {
        {"main_term", iv(b.main_term)}, {"bracket", iv(b.bracket)}, {"square_term", iv(b.square_term)}};
    emit_json(out, j);
    return ok;
}

// quick end-to-end sanity checks, one line each
int run_selftest()
{
    int failures = 0;
    auto line = [&](const char* name, bool pass) {
        std::cout << (pass ? "PASS " : "FAIL ") << name << '\n';
        failures += pass ? 0 : 1;
    };
    const ComplexInterval b = char_from_dist(binomial(4, Real::parse("1/2"))).eval(Dyadic(0), 8);
    line("char_from_dist binomial at 0", b.re.contains(Dyadic(1)) && b.im.contains(Dyadic(0)));
    line("tightness point mass", tightness(point_mass(Real::exact(Dyadic(0))), 10) == 0);
    line("glivenko sinc", glivenko_eval(char_sinc_uniform(Dyadic(1).mul_pow2(-1)), make_w(0), 3)
                              .contains(Dyadic(3).mul_pow2(-2)));
    line("bochner density", bochner_density(char_constant_one(), 4, Interval(0), 8).hi.sign() > 0);
    line("dml modulus", dml_modulus(BernoulliParams(Real::parse("1/2")), Dyadic(1), 4) == 2048);
    return failures == 0 ? ok : other;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certified computations with probability distributions and characteristic functions"};
    app.require_subcommand(1);

    Common co, to, go, bo, dopt;
    std::string c_dist, c_phi, c_range = "4", c_step = "1/2^2";
    auto* c = app.add_subcommand("char", "characteristic function table");
    add_common(c, co, "csv");
    c->add_option("--dist", c_dist, "distribution JSON");
    c->add_option("--phi", c_phi, "closed-form family, e.g. sinc_uniform(1/2^1)");
    c->add_option("--range", c_range, "table covers [-M, M]");
    c->add_option("--grid-step", c_step, "grid step");

    std::string t_dist;
    auto* t = app.add_subcommand("tightness", "effective tightness L(k)");
    add_common(t, to, "json");
    t->add_option("--dist", t_dist, "distribution JSON")->required();

    std::string g_dist, g_phi, g_cert = "none";
    unsigned g_window = 1;
    auto* g = app.add_subcommand("glivenko", "mu(w_n) from phi, with an optional convergence threshold");
    add_common(g, go, "json");
    g->add_option("--dist", g_dist, "distribution JSON (phi = its characteristic function)");
    g->add_option("--phi", g_phi, "closed-form family");
    g->add_option("--window", g_window, "test function w_n")->check(CLI::Range(0, 1 << 20));
    g->add_option("--cert", g_cert, "none, damped, or sinc_shrink")
        ->check(CLI::IsMember({"none", "damped", "sinc_shrink"}));

    std::string b_phi, b_range = "4", b_step = "1/2^2";
    std::uint64_t b_n = 4;
    auto* bc = app.add_subcommand("bochner", "smoothed density f_n and its mass");
    add_common(bc, bo, "csv");
    bc->add_option("--phi", b_phi, "closed-form family")->required();
    bc->add_option("--n", b_n, "damping parameter n");
    bc->add_option("--range", b_range, "table covers [-X, X]");
    bc->add_option("--grid-step", b_step, "grid step");

    std::string d_p = "1/2", d_K = "1", d_step = "1/2^3";
    auto* dc = app.add_subcommand("dml", "de Moivre-Laplace threshold and bound");
    add_common(dc, dopt, "json");
    dc->add_option("--p", d_p, "success probability");
    dc->add_option("--K", d_K, "uniform on |t| <= K");
    dc->add_option("--grid-step", d_step, "grid step of the csv table");

    auto* st = app.add_subcommand("selftest", "quick sanity checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : bad_input;
    }

    try {
        if (*c)
            return run_char(co, c_dist, c_phi, c_range, c_step);
        if (*t)
            return run_tightness(to, t_dist);
        if (*g)
            return run_glivenko(go, g_dist, g_phi, g_window, g_cert);
        if (*bc)
            return run_bochner(bo, b_phi, b_n, b_range, b_step);
        if (*dc)
            return run_dml(dopt, d_p, d_K, d_step);
        if (*st)
            return run_selftest();
    } catch (const Error& e) {
        ordered_json err = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        ordered_json err = {{"error", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return other;
    }
    return other;
}
