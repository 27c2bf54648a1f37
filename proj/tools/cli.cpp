#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "algdyn/errors.hpp"
#include "algdyn/homoclinic.hpp"
#include "algdyn/lattice.hpp"
#include "algdyn/laurent.hpp"
#include "algdyn/mahler.hpp"
#include "algdyn/periodic.hpp"
#include "algdyn/unitary.hpp"

namespace algdyn::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string command;
    std::string poly = "";
    int dim = 0;
    std::string lattice;
    std::string seq;
    std::string g = "1";
    int grid = 0;
    int box = -1;
    double eps = 0.1;
    bool exact = false;
    long precision = kDefaultPrecision;
    int threads = 0;
    std::uint64_t seed = 0;
    std::string format;
    std::string verify_point;
    std::string patterns = "demo2";
    int window = 8;
    bool diagnose = false;
    unsigned long snf_cap = kDefaultSnfCap;
    int degree_cap = 64;
    unsigned long order_cap = 0;

    ExecContext exec() const { return ExecContext{threads}; }
};

std::string fmt_double(double x)
{
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// doubles as JSON numbers, non-finite values as strings
json jnum(double x)
{
    if (std::isfinite(x)) return x;
    return fmt_double(x);
}

json jint(const mpz_class& z)
{
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

json jcoeffs(const IntPoly& p)
{
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(jint(c));
    return a;
}

std::string fixed(const RealBall& b)
{
    return b.mid.to_fixed(20);
}

// only the digits the radius supports
std::string fixed_accurate(const RealBall& b)
{
    int digits = b.rad > 0 ? static_cast<int>(std::floor(-std::log10(b.rad))) : 20;
    return b.mid.to_fixed(std::clamp(digits, 1, 20));
}

void csv_line(std::ostream& out, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
}

std::string sci(double x)
{
    if (!std::isfinite(x)) return fmt_double(x);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

LaurentPoly poly_arg(const Options& o, const std::string& text, const char* name)
{
    if (text.empty()) throw InputError(std::string("--") + name + " is required");
    return parse_poly(text, o.dim);
}

int cmd_pcount(const Options& o, std::ostream& out)
{
    if (o.lattice.empty()) throw InputError("--lattice is required");
    LaurentPoly f = poly_arg(o, o.poly, "poly");
    Lattice L = parse_lattice(o.lattice, o.dim);
    PeriodicOptions po{o.precision, o.snf_cap, o.exec()};
    PeriodicCount pc = p_gamma(f, L, o.exact, po);
    std::int64_t gm = gamma_min(L);
    if (o.format == "csv") {
        csv_line(out, {"index", "gamma_min", "log_count", "rate", "torus_dim", "exact_count"});
        csv_line(out, {pc.index.get_str(), std::to_string(gm), fixed(pc.log_count), fixed(pc.rate),
                       std::to_string(pc.torus_dim), pc.exact_count ? pc.exact_count->get_str() : ""});
        return 0;
    }
    json j{{"poly", f.to_string()},
           {"lattice", L.to_string()},
           {"index", jint(pc.index)},
           {"gamma_min", gm},
           {"log_count", fixed(pc.log_count)},
           {"log_count_radius", sci(pc.log_count.rad)},
           {"rate", fixed(pc.rate)},
           {"rate_radius", sci(pc.rate.rad)},
           {"torus_dim", pc.torus_dim},
           {"precision", o.precision}};
    if (pc.exact_count) j["exact_count"] = jint(*pc.exact_count);
    out << j.dump(2) << "\n";
    return 0;
}

std::vector<Lattice> parse_seq(const std::string& spec, int dim, std::vector<long>& ns)
{
    // diag:N1..N2[:step]
    if (spec.rfind("diag:", 0) != 0) throw InputError("sequence spec must look like diag:N1..N2[:step]");
    std::string body = spec.substr(5);
    auto dots = body.find("..");
    if (dots == std::string::npos) throw InputError("sequence spec must look like diag:N1..N2[:step]");
    long a = 0, b = 0, step = 1;
    try {
        a = std::stol(body.substr(0, dots));
        std::string rest = body.substr(dots + 2);
        auto c = rest.find(':');
        b = std::stol(rest.substr(0, c));
        if (c != std::string::npos) step = std::stol(rest.substr(c + 1));
    } catch (const std::exception&) {
        throw InputError("bad sequence spec '" + spec + "'");
    }
    if (a < 1 || b < a || step < 1) throw InputError("sequence needs 1 <= N1 <= N2 and step >= 1");
    std::vector<Lattice> out;
    for (long n = a; n <= b; n += step) {
        ns.push_back(n);
        out.push_back(Lattice::diagonal(dim, n));
    }
    return out;
}

int cmd_converge(const Options& o, std::ostream& out)
{
    if (o.seq.empty()) throw InputError("--seq is required");
    LaurentPoly f = poly_arg(o, o.poly, "poly");
    std::vector<long> ns;
    auto lattices = parse_seq(o.seq, o.dim, ns);
    PeriodicOptions po{o.precision, o.snf_cap, o.exec()};
    auto rows = growth_table(f, lattices, po);
    Entropy h = entropy(f, o.precision, o.exec());
    std::string href = h.infinite ? "inf" : fixed_accurate(h.value);
    if (o.format == "json") {
        json r = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            r.push_back({{"N", ns[i]},
                         {"index", jint(rows[i].index)},
                         {"rate", fixed(rows[i].rate)},
                         {"torus_dim", rows[i].torus_dim}});
        out << json{{"poly", f.to_string()}, {"rows", r}, {"entropy", href}, {"entropy_method", h.method}}.dump(2)
            << "\n";
        return 0;
    }
    csv_line(out, {"N", "index", "rate", "torus_dim"});
    for (std::size_t i = 0; i < rows.size(); ++i)
        csv_line(out, {std::to_string(ns[i]), rows[i].index.get_str(), fixed(rows[i].rate),
                       std::to_string(rows[i].torus_dim)});
    csv_line(out, {"entropy", "", href, ""});
    return 0;
}

json read_point_json(const std::string& arg)
{
    std::string text = arg;
    if (!arg.empty() && arg.front() != '{') {
        std::ifstream in(arg);
        if (!in) throw InputError("cannot read point file '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("bad point JSON: ") + e.what());
    }
}

int cmd_unitary(const Options& o, std::ostream& out)
{
    LaurentPoly f = poly_arg(o, o.poly, "poly");
    if (!o.verify_point.empty()) {
        UnitaryPoint p = point_from_json(read_point_json(o.verify_point));
        if (static_cast<int>(p.coords.size()) != f.dim()) throw InputError("point dimension does not match --dim");
        bool ok = verify_point(f, p, o.precision);
        if (o.format == "csv") {
            csv_line(out, {"verified"});
            csv_line(out, {ok ? "true" : "false"});
        } else {
            out << json{{"poly", f.to_string()}, {"verified", ok}, {"precision", o.precision}}.dump(2) << "\n";
        }
        return ok ? 0 : 2;
    }
    if (f.dim() != 2) throw InputError("solving U(f) needs dim 2; use --verify-point in other dimensions");
    UnitaryOptions uo{o.precision, o.degree_cap, o.order_cap};
    UnitarySolution s = solve_unitary_bivariate(f, uo);
    if (s.infinite) {
        out << json{{"poly", f.to_string()}, {"infinite", true}, {"diagnostic", s.diagnostic}}.dump(2) << "\n";
        return 3;
    }
    json extra;
    bool v_linear = f.max_exponent()[1] - f.min_exponent()[1] == 1;
    if (v_linear) {
        VLinearSolution vl = solve_unitary_v_linear(f, uo);
        bool same = vl.points.size() == s.points.size();
        for (const auto& p : vl.points) {
            int n = 0;
            for (const auto& q : s.points) n += same_point(p, q);
            same = same && n == 1;
        }
        if (!same) throw CrossCheckError("v-linear route and resultant route disagree on U(f)");
        json roots = json::array();
        for (const auto& r : vl.c_roots) roots.push_back(to_ball(r, o.precision).mid.to_sci(20));
        extra = {{"c_eliminant", jcoeffs(vl.c_eliminant)}, {"c_roots", roots}};
    }
    if (o.format == "csv") {
        csv_line(out, {"point", "coord", "min_poly", "re", "im", "order"});
        for (std::size_t i = 0; i < s.points.size(); ++i)
            for (std::size_t k = 0; k < s.points[i].coords.size(); ++k) {
                const auto& c = s.points[i].coords[k];
                std::string mp = c.min_poly.to_string();
                csv_line(out, {std::to_string(i), std::to_string(k), "\"" + mp + "\"", c.enclosure.re().to_sci(20),
                               c.enclosure.im().to_sci(20), std::to_string(s.points[i].orders[k])});
            }
        return 0;
    }
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(to_json(p));
    json j{{"poly", f.to_string()},
           {"infinite", false},
           {"count", s.points.size()},
           {"eliminant", jcoeffs(s.eliminant)},
           {"points", pts},
           {"precision", o.precision}};
    if (v_linear) j["v_linear"] = extra;
    out << j.dump(2) << "\n";
    return 0;
}

json shells_json(const ShellReport& r)
{
    json s = json::array();
    for (const auto& [N, S] : r.shells) s.push_back({N, jnum(S)});
    return s;
}

int cmd_kernel(const Options& o, std::ostream& out)
{
    LaurentPoly f = poly_arg(o, o.poly, "poly"), g = poly_arg(o, o.g, "g");
    int grid = o.grid ? o.grid : 1024, box = o.box >= 0 ? o.box : 64;
    if (o.diagnose) {
        if (f.dim() != 2) throw InputError("--diagnose needs dim 2");
        UnitarySolution s = solve_unitary_bivariate(f, UnitaryOptions{o.precision, o.degree_cap, o.order_cap});
        if (s.infinite) throw RegimeError("U(f) is infinite: " + s.diagnostic);
        MultiplierDiagnostic d = multiplier_diagnostic(f, g, s.points, grid, box, o.exec(), o.seed);
        json rays = json::array();
        for (std::size_t i = 0; i < d.order_f.size(); ++i)
            rays.push_back({{"point", i}, {"order_f", jnum(d.order_f[i])}, {"order_g", jnum(d.order_g[i])}});
        out << json{{"poly", f.to_string()},
                    {"g", g.to_string()},
                    {"ray_orders", rays},
                    {"shell_exponent", jnum(d.shells.fitted_exponent)},
                    {"shell_verdict", d.shells.verdict},
                    {"verdict", d.verdict},
                    {"note", "heuristic verdict from sampling, not a proof"}}
                       .dump(2)
            << "\n";
        return 0;
    }
    Kernel k = fft_kernel(f, g, grid, box, o.exec());
    ShellReport r = shell_sums(k, box);
    if (o.format == "json") {
        out << json{{"poly", f.to_string()},
                    {"g", g.to_string()},
                    {"source", k.source},
                    {"box", box},
                    {"tail_bound", jnum(k.tail_bound)},
                    {"shells", shells_json(r)},
                    {"fitted_exponent", jnum(r.fitted_exponent)},
                    {"fitted_constant", jnum(r.fitted_constant)},
                    {"verdict", r.verdict}}
                       .dump(2)
            << "\n";
        return 0;
    }
    csv_line(out, {"N", "S_N"});
    for (const auto& [N, S] : r.shells) csv_line(out, {std::to_string(N), fmt_double(S)});
    out << "\n";
    csv_line(out, {"key", "value"});
    csv_line(out, {"fitted_exponent", fmt_double(r.fitted_exponent)});
    csv_line(out, {"fitted_constant", fmt_double(r.fitted_constant)});
    csv_line(out, {"verdict", r.verdict});
    csv_line(out, {"tail_bound", fmt_double(k.tail_bound)});
    return 0;
}

void check_identity(const TorusConfiguration& t)
{
    if (!(t.identity_defect <= t.residual_bound))
        throw CrossCheckError("f(shift) applied to the cover deviates from g* conv v by " + fmt_double(t.identity_defect) +
                              " > bound " + fmt_double(t.residual_bound));
}

json torus_json(const TorusConfiguration& t, bool with_values)
{
    json j{{"lo", t.lo},
           {"hi", t.hi},
           {"residual", jnum(t.residual)},
           {"identity_defect", jnum(t.identity_defect)},
           {"residual_bound", jnum(t.residual_bound)}};
    if (with_values) {
        json v = json::array();
        for (double x : t.values) v.push_back(jnum(x));
        j["values"] = v;
    }
    return j;
}

void torus_csv(std::ostream& out, const TorusConfiguration& t, const std::string& tag)
{
    Exponent n = t.lo;
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        std::vector<std::string> row{tag};
        for (auto x : n) row.push_back(std::to_string(x));
        row.push_back(fmt_double(t.values[i]));
        csv_line(out, row);
        for (int c = static_cast<int>(n.size()) - 1; c >= 0; --c) {
            if (++n[c] <= t.hi[c]) break;
            n[c] = t.lo[c];
        }
    }
}

std::vector<std::string> coord_header(int d, const std::string& first)
{
    std::vector<std::string> h{first};
    for (int i = 1; i <= d; ++i) h.push_back("n" + std::to_string(i));
    h.push_back("value");
    return h;
}

int cmd_cover(const Options& o, std::ostream& out)
{
    LaurentPoly f = poly_arg(o, o.poly, "poly"), g = poly_arg(o, o.g, "g");
    int grid = o.grid ? o.grid : 128, box = o.box >= 0 ? o.box : 32;
    int d = f.dim();
    Kernel k = fft_kernel(f, g, grid, box, o.exec());
    long K = one_norm(f).get_si();
    if (!o.lattice.empty()) {
        Lattice L = parse_lattice(o.lattice, d);
        auto dom = L.fundamental_domain();
        Exponent lo(d, 0), hi(d, 0);
        for (const auto& p : dom)
            for (int i = 0; i < d; ++i) hi[i] = std::max(hi[i], p[i]);
        for (int i = 0; i < d; ++i) {
            lo[i] -= box;
            hi[i] += box;
        }
        auto v = IntegerConfiguration::random(lo, hi, K, o.seed);
        PeriodicApprox a = periodic_approx(f, g, k, v, L, o.eps, o.exec());
        check_identity(a.periodic);
        if (!(a.achieved_eps < o.eps) && o.eps <= 0.5)
            throw CrossCheckError("periodic approximation missed eps: " + fmt_double(a.achieved_eps));
        if (o.format == "csv") {
            csv_line(out, {"key", "value"});
            csv_line(out, {"radius", std::to_string(a.radius)});
            csv_line(out, {"achieved_eps", fmt_double(a.achieved_eps)});
            csv_line(out, {"eps", fmt_double(o.eps)});
            csv_line(out, {"residual", fmt_double(a.periodic.residual)});
            csv_line(out, {"identity_defect", fmt_double(a.periodic.identity_defect)});
            return 0;
        }
        out << json{{"poly", f.to_string()},
                    {"g", g.to_string()},
                    {"lattice", L.to_string()},
                    {"source", k.source},
                    {"eps", o.eps},
                    {"radius", a.radius},
                    {"achieved_eps", jnum(a.achieved_eps)},
                    {"periodic", torus_json(a.periodic, false)}}
                       .dump(2)
            << "\n";
        return 0;
    }
    if (o.window < 0) throw InputError("--window must be nonnegative");
    Exponent lo(d, -(o.window + box)), hi(d, o.window + box);
    auto v = IntegerConfiguration::random(lo, hi, K, o.seed);
    TorusConfiguration t = symbolic_cover(f, g, k, v, o.exec());
    check_identity(t);
    if (o.format == "csv") {
        csv_line(out, coord_header(d, "window"));
        torus_csv(out, t, "0");
        return 0;
    }
    out << json{{"poly", f.to_string()}, {"g", g.to_string()}, {"source", k.source}, {"tail_bound", jnum(k.tail_bound)},
                {"cover", torus_json(t, true)}}
                   .dump(2)
        << "\n";
    return 0;
}

int cmd_glue(const Options& o, std::ostream& out)
{
    LaurentPoly f = poly_arg(o, o.poly, "poly"), g = poly_arg(o, o.g, "g");
    int grid = o.grid ? o.grid : 1024, box = o.box >= 0 ? o.box : 256;
    int d = f.dim();
    if (o.patterns.rfind("demo", 0) != 0) throw InputError("--patterns must be demoN");
    int count = 0;
    try {
        count = std::stoi(o.patterns.substr(4));
    } catch (const std::exception&) {
        throw InputError("--patterns must be demoN");
    }
    if (count < 1 || count > 16) throw InputError("demoN needs 1 <= N <= 16");
    Kernel k = fft_kernel(f, g, grid, box, o.exec());
    long K = one_norm(f).get_si();
    int p = o.eps > 0.5 ? 1 : tail_radius(k, o.eps / static_cast<double>(K));
    if (p < 0) throw RegimeError("kernel tail too heavy for eps");
    p = std::max(p, 1);
    const int side = 16;
    std::vector<IntegerConfiguration> pats;
    for (int j = 0; j < count; ++j) {
        // windows step down the diagonal, where the kernel of 2-u-v carries its mass
        Exponent lo(d, -static_cast<std::int64_t>(j) * (side - 1 + p)), hi = lo;
        for (auto& x : hi) x += side - 1;
        pats.push_back(IntegerConfiguration::random(lo, hi, K, o.seed + static_cast<std::uint64_t>(j)));
    }
    GlueResult r = specification_glue(f, g, k, pats, o.eps);
    for (std::size_t j = 0; j < r.errors.size(); ++j)
        if (!(r.errors[j] < o.eps) && o.eps <= 0.5)
            throw CrossCheckError("window " + std::to_string(j) + " shadowing error " + fmt_double(r.errors[j]) +
                                  " is not below eps");
    if (o.format == "csv") {
        csv_line(out, {"window", "error", "p_used"});
        for (std::size_t j = 0; j < r.errors.size(); ++j)
            csv_line(out, {std::to_string(j), fmt_double(r.errors[j]), std::to_string(r.p_used)});
        return 0;
    }
    json errs = json::array(), wins = json::array();
    for (std::size_t j = 0; j < r.errors.size(); ++j) {
        errs.push_back(jnum(r.errors[j]));
        wins.push_back(torus_json(r.windows[j], false));
    }
    out << json{{"poly", f.to_string()}, {"g", g.to_string()}, {"source", k.source}, {"eps", o.eps},
                {"p_used", r.p_used},     {"errors", errs},        {"windows", wins}}
                   .dump(2)
        << "\n";
    return 0;
}

int dispatch(Options& o, std::ostream& out)
{
    if (o.precision < 53) throw InputError("--precision must be at least 53");
    if (o.threads <= 0) o.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (o.dim == 0) o.dim = std::max({2, max_variable_index(o.poly), max_variable_index(o.g)});
    if (o.dim < 1) throw InputError("--dim must be positive");
    if (o.snf_cap == 0 || o.degree_cap <= 0) throw InputError("caps must be positive");
    if (o.command == "pcount") return cmd_pcount(o, out);
    if (o.command == "converge") return cmd_converge(o, out);
    if (o.command == "unitary") return cmd_unitary(o, out);
    if (o.command == "kernel") return cmd_kernel(o, out);
    if (o.command == "cover") return cmd_cover(o, out);
    if (o.command == "glue") return cmd_glue(o, out);
    throw InputError("unknown command");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Periodic points, entropy, unitary varieties and homoclinic kernels of algebraic Z^d-actions", "algdyn"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* s) {
        s->add_option("--poly", o.poly, "Laurent polynomial f");
        s->add_option("--dim", o.dim, "number of variables (default: from the polynomials, at least 2)");
        s->add_option("--precision", o.precision, "working precision in bits");
        s->add_option("--threads", o.threads, "worker threads (default: all cores)");
        s->add_option("--seed", o.seed, "seed for random configurations and rays");
        s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    };
    auto* pc = app.add_subcommand("pcount", "periodic component count for one lattice");
    common(pc);
    pc->add_option("--lattice", o.lattice, "diag:N, cols:a,b;c,d or hnf:a,b,c");
    pc->add_flag("--exact", o.exact, "cross-check against the Smith-form count");
    pc->add_option("--snf-cap", o.snf_cap, "largest index for the exact count");

    auto* cv = app.add_subcommand("converge", "growth rates along a lattice sequence");
    common(cv);
    cv->add_option("--seq", o.seq, "diag:N1..N2[:step]");
    cv->add_option("--snf-cap", o.snf_cap, "largest index for the exact count");

    auto* un = app.add_subcommand("unitary", "zeros of f on the unit torus");
    common(un);
    un->add_option("--verify-point", o.verify_point, "point JSON (inline or file) to verify instead of solving");
    un->add_option("--degree-cap", o.degree_cap, "largest factor degree");
    un->add_option("--order-cap", o.order_cap, "largest root-of-unity order (0: full search)");

    auto* ke = app.add_subcommand("kernel", "homoclinic kernel shell sums");
    common(ke);
    ke->add_option("--g", o.g, "numerator polynomial g");
    ke->add_option("--grid", o.grid, "FFT grid size (power of two)");
    ke->add_option("--box", o.box, "box radius");
    ke->add_flag("--diagnose", o.diagnose, "multiplier-ideal diagnostic for g");

    auto* co = app.add_subcommand("cover", "symbolic cover of a random configuration");
    common(co);
    co->add_option("--g", o.g, "numerator polynomial g");
    co->add_option("--grid", o.grid, "FFT grid size (power of two)");
    co->add_option("--box", o.box, "box radius");
    co->add_option("--window", o.window, "output window radius");
    co->add_option("--lattice", o.lattice, "periodic approximation on this lattice");
    co->add_option("--eps", o.eps, "target accuracy for the periodic approximation");

    auto* gl = app.add_subcommand("glue", "specification gluing of separated patterns");
    common(gl);
    gl->add_option("--g", o.g, "numerator polynomial g");
    gl->add_option("--grid", o.grid, "FFT grid size (power of two)");
    gl->add_option("--box", o.box, "box radius");
    gl->add_option("--eps", o.eps, "shadowing accuracy");
    gl->add_option("--patterns", o.patterns, "demoN: N seeded random 16x16 patterns");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    for (auto* s : app.get_subcommands()) o.command = s->get_name();
    if (o.format.empty()) o.format = (o.command == "converge" || (o.command == "kernel" && !o.diagnose)) ? "csv" : "json";

    try {
        return dispatch(o, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const CrossCheckError& e) {
        err << "cross-check failed: " << e.what() << "\n";
        return 2;
    } catch (const RegimeError& e) {
        err << "out of regime: " << e.what() << "\n";
        return 3;
    } catch (const PrecisionError& e) {
        err << "precision: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace algdyn::cli
