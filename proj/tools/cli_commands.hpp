#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gjn/json_io.hpp"
#include "gjn/verify.hpp"

namespace gjn::cli {

using nlohmann::json;

enum Exit { kPass = 0, kCheckFailed = 1, kBadArgs = 2 };

struct Result {
    int code = kPass;
    std::string out;
    std::string err;
};

// VERBOSITY: error, warn (default), info, debug, or 0..3
inline int verbosity()
{
    const char* v = std::getenv("VERBOSITY");
    if (!v)
        return 1;
    const std::string s(v);
    if (s == "error" || s == "0")
        return 0;
    if (s == "info" || s == "2")
        return 2;
    if (s == "debug" || s == "trace" || s == "3")
        return 3;
    return 1;
}

struct Common {
    int n = 2;
    std::optional<double> k;
    std::uint64_t seed = 7;
    double samples = 1e6;
    int cutoff = 60;
    double tol = kDefaultTol;
    int indent = 2;
    unsigned workers = 1;
    std::string input;
};

inline std::string read_input(const std::string& src, std::istream& in)
{
    if (src == "-")
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream f(src);
    if (!f)
        fail(Errc::InvalidArgument, "cannot open " + src);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline json parse_json(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(Errc::InvalidArgument, "malformed JSON in " + what + ": " + e.what());
    }
}

inline std::uint64_t sample_count(double s)
{
    if (!(s >= 1.0) || s > 1e12 || std::floor(s) != s)
        fail(Errc::InvalidArgument, "samples must be a positive integer");
    return static_cast<std::uint64_t>(s);
}

inline std::string dump(const json& j, int indent) { return j.dump(indent < 0 ? -1 : indent) + "\n"; }

inline Result cmd_verify(const std::string& suite, const Common& c, std::ostream& log)
{
    verify::Options opt;
    opt.n = c.n;
    opt.k = c.k;
    opt.seed = c.seed;
    opt.samples = sample_count(c.samples);
    opt.cutoff = c.cutoff;
    opt.workers = c.workers;
    if (verbosity() >= 2)
        opt.progress = [&log](const std::string& m) { log << "[info] " << m << "\n"; };
    const verify::VerifyReport rep = verify::run(suite, opt);
    if (verbosity() >= 1)
        for (const auto& r : rep.checks)
            if (!r.pass)
                log << "[warn] " << r.check << " residual " << r.residual << " > " << r.tolerance << "\n";
    return {rep.pass() ? kPass : kCheckFailed, dump(verify::to_json(rep), c.indent), {}};
}

inline Result cmd_eval(const std::string& what, const Common& c, const std::string& xs, const std::string& ys,
                       std::istream& in)
{
    json out{{"quantity", what}, {"n", c.n}};
    if (what == "lambda") {
        if (!c.k)
            fail(Errc::InvalidArgument, "eval lambda needs --k");
        const MeasureConstants mc = jacobi::measure_constants(c.n, *c.k);
        out["anchor"] = "Lambda = pi^{-n}/J_n(p), p=(k-3)/2-n";
        out["k"] = *c.k;
        out["p"] = mc.p;
        out["value"] = mc.Lambda;
        return {kPass, dump(out, c.indent), {}};
    }
    json doc = json::object();
    if (!c.input.empty())
        doc = parse_json(read_input(c.input, in), "input");
    if (!xs.empty())
        doc["x"] = parse_json(xs, "--x");
    if (!ys.empty())
        doc["y"] = parse_json(ys, "--y");
    auto point = [&](const char* key) {
        if (!doc.contains(key))
            return jacobi::origin(c.n);
        const CSPoint p = json_io::point_from(doc[key]);
        if (p.dim() != c.n)
            fail(Errc::InvalidArgument, std::string(key) + " has dimension " + std::to_string(p.dim()) + ", --n is "
                                            + std::to_string(c.n));
        return p;
    };
    const CSPoint x = point("x");
    const double k = c.k.value_or(2.0);
    if (what == "density") {
        out["anchor"] = "Q=det(1-WW̄)^{-(n+2)}";
        out["value"] = jacobi::density(x);
    } else {
        out["k"] = k;
        if (what == "kernel") {
            out["anchor"] = "K(x,y)=det(1-WV̄)^{-k/2} exp(x̄U z + z^tV̄Uz/2 + x̄^tUWx̄/2), U=(1-WV̄)^{-1}";
            out["value"] = json_io::to_json(jacobi::kernel(x, point("y"), k));
        } else if (what == "potential") {
            out["anchor"] = "f=-(k/2)log det(1-WW̄) + z*Mz + Re z^tW̄Mz, M=(1-WW̄)^{-1}";
            out["value"] = jacobi::kahler_potential(x, k);
        } else if (what == "form") {
            out["anchor"] = "omega_pq = d^2 f/d xi_p d conj(xi_q), xi=(z, w_ij i<=j)";
            out["value"] = json_io::to_json(jacobi::kahler_form(x, k));
        } else {
            fail(Errc::InvalidArgument, "unknown quantity " + what);
        }
    }
    return {kPass, dump(out, c.indent), {}};
}

inline Result cmd_decompose(const std::string& which, const Common& c, const std::string& gs, std::istream& in)
{
    std::string text = gs;
    if (text.empty()) {
        if (c.input.empty())
            fail(Errc::InvalidArgument, "decompose needs --g or --input");
        text = read_input(c.input, in);
    }
    const SpElement g = json_io::sp_from(parse_json(text, "g"), c.tol);
    json out{{"which", which}, {"n", g.dim()}, {"tolerance", c.tol}};
    double res = 0.0;
    if (which == "gauss") {
        const GaussFactors f = symplectic::gauss_decompose(g);
        res = max_abs(CMat(symplectic::gauss_reassemble(f) - g.full()));
        out["anchor"] = "g=[[1,Y],[0,1]] diag(gamma,delta) [[1,0],[Y',1]], Y=bā^{-1}, Y'=ā^{-1}b̄, delta=ā, gamma=(a*)^{-1}";
        out["factors"] = json{{"Y", json_io::to_json(f.Y)},
                          {"Yp", json_io::to_json(f.Yp)},
                          {"gamma", json_io::to_json(f.gamma)},
                          {"delta", json_io::to_json(f.delta)}};
    } else if (which == "cartan") {
        const CartanFactors f = symplectic::cartan_decompose(g);
        res = verify::detail::dist(symplectic::cartan_synthesize(f.Z, f.v), g);
        out["anchor"] = "a=cosh sqrt(ZZ̄) v, b=sinh sqrt(ZZ̄)/sqrt(ZZ̄) Z v̄";
        out["factors"] = json{{"Z", json_io::to_json(f.Z)}, {"v", json_io::to_json(f.v)}};
    } else {
        fail(Errc::InvalidArgument, "unknown decomposition " + which);
    }
    out["residual"] = res;
    out["pass"] = res <= c.tol;
    return {res <= c.tol ? kPass : kCheckFailed, dump(out, c.indent), {}};
}

// args exclude the program name
inline Result run(std::vector<std::string> args, std::istream& in = std::cin)
{
    CLI::App app{"Jacobi group numerics and verification", "gjn"};
    app.require_subcommand(1);
    Common c;
    std::string suite, what, which, xs, ys, gs;
    double kval = 0.0;

    auto common = [&](CLI::App* s) {
        s->add_option("--n", c.n, "dimension n")->check(CLI::Range(1, 4));
        s->add_option("--k", kval, "weight k");
        s->add_option("--seed", c.seed, "random seed");
        s->add_option("--samples", c.samples, "Monte-Carlo samples");
        s->add_option("--cutoff", c.cutoff, "Fock cutoff")->check(CLI::Range(8, 400));
        s->add_option("--tol", c.tol, "input validation and decomposition tolerance")
            ->check(CLI::PositiveNumber);
        s->add_option("--json-indent", c.indent, "JSON indent, negative for compact");
        s->add_option("--workers", c.workers, "Monte-Carlo worker threads")->check(CLI::Range(1u, 64u));
        s->add_option("--input", c.input, "JSON input file, - for stdin");
    };
    CLI::App* v = app.add_subcommand("verify", "run a verification suite");
    v->add_option("suite", suite, "suite name")->required();
    common(v);
    CLI::App* e = app.add_subcommand("eval", "evaluate a quantity");
    e->add_option("what", what, "kernel|potential|form|density|lambda")
        ->required()
        ->check(CLI::IsMember({"kernel", "potential", "form", "density", "lambda"}));
    e->add_option("--x", xs, "point JSON");
    e->add_option("--y", ys, "second point JSON");
    common(e);
    CLI::App* d = app.add_subcommand("decompose", "Gauss or Cartan factors of an Sp element");
    d->add_option("which", which, "gauss|cartan")->required()->check(CLI::IsMember({"gauss", "cartan"}));
    d->add_option("--g", gs, "SpElement JSON");
    common(d);

    std::reverse(args.begin(), args.end());
    std::ostringstream log;
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        return {kPass, app.help(), {}};
    } catch (const CLI::ParseError& err) {
        return {kBadArgs, {}, std::string("error: ") + err.what() + "\n"};
    }
    if (v->count("--k") + e->count("--k") + d->count("--k") > 0)
        c.k = kval;
    try {
        Result r;
        if (*v) {
            if (!verify::is_suite(suite))
                fail(Errc::InvalidArgument, "unknown suite '" + suite + "'");
            r = cmd_verify(suite, c, log);
        } else if (*e) {
            r = cmd_eval(what, c, xs, ys, in);
        } else {
            r = cmd_decompose(which, c, gs, in);
        }
        r.err = log.str();
        return r;
    } catch (const Error& err) {
        const bool input = err.code() == Errc::InvalidArgument || err.code() == Errc::NotSymplectic
                           || err.code() == Errc::NotSymmetric || err.code() == Errc::DomainViolation
                           || err.code() == Errc::OutOfDomain;
        return {input ? kBadArgs : kCheckFailed, {}, log.str() + "error: " + err.what() + "\n"};
    } catch (const json::exception& err) {
        return {kBadArgs, {}, log.str() + "error: malformed JSON: " + err.what() + "\n"};
    }
}

} // namespace gjn::cli
