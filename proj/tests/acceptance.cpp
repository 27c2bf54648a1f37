// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <mpfr.h>

#include "algdyn/homoclinic.hpp"
#include "algdyn/mahler.hpp"
#include "algdyn/periodic.hpp"
#include "algdyn/unitary.hpp"
#include "cli.hpp"

using namespace algdyn;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

LaurentPoly P(const char* s, int dim = 2)
{
    return parse_poly(s, dim);
}

double log_of(const mpz_class& z)
{
    Real r(z, 128);
    mpfr_log(r.get(), r.get(), MPFR_RNDN);
    return r.to_double();
}

// |log_count - log(exact)| bounds the relative error of exp(log_count)
Outcome crit1()
{
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Lattice> suite;
    for (long n = 1; n <= 10; ++n) suite.push_back(Lattice::diagonal(2, n));
    std::mt19937_64 rng(20240611);
    std::set<std::vector<long>> seen;
    while (seen.size() < 20) {
        long a = 1 + static_cast<long>(rng() % 10);
        long c = 1 + static_cast<long>(rng() % static_cast<unsigned long>(100 / a));
        long b = static_cast<long>(rng() % static_cast<unsigned long>(a));
        if (seen.insert({a, b, c}).second) suite.push_back(Lattice::gamma_abc(a, b, c));
    }
    const char* polys[] = {"2-u-v", "1+u+v", "2-u^2+v-u*v"};
    double worst = 0.0;
    int dim_mismatch = 0, cases = 0;
    for (const char* s : polys) {
        LaurentPoly f = P(s);
        for (const auto& L : suite) {
            PeriodicCount pc = p_gamma(f, L);
            SnfCount sc = snf_oracle(f, L);
            worst = std::max(worst, std::abs(pc.log_count.mid.to_double() - log_of(sc.exact_count)));
            dim_mismatch += pc.torus_dim != sc.torus_dim;
            ++cases;
        }
    }
    double t = seconds_since(t0);
    return {worst < 1e-8 && dim_mismatch == 0 && t < 60.0,
            std::to_string(cases) + " cases, max rel err " + fmt("%.2e", worst) + ", torus_dim mismatches " +
                std::to_string(dim_mismatch) + ", " + fmt("%.2f", t) + " s"};
}

Outcome crit2()
{
    auto t0 = std::chrono::steady_clock::now();
    double ref = jensen_d1(P("2-u", 1)).value.mid.to_double();
    LaurentPoly f = P("2-u-v");
    std::string d;
    double err128 = 1.0;
    for (long n : {32L, 64L, 128L}) {
        double r = p_gamma(f, Lattice::diagonal(2, n)).rate.mid.to_double();
        d += "N=" + std::to_string(n) + " " + fmt("%.6f", r) + ", ";
        if (n == 128) err128 = std::abs(r - ref);
    }
    double t = seconds_since(t0);
    return {err128 < 0.02 && t < 5.0, d + "ref " + fmt("%.6f", ref) + ", |err| " + fmt("%.2e", err128) + ", " +
                                          fmt("%.2f", t) + " s"};
}

Outcome crit3()
{
    LaurentPoly f = P("1+u+v");
    int mismatches = 0, cases = 0;
    for (long a = 1; a <= 12; ++a)
        for (long b = 0; b < a; ++b)
            for (long c = 1; c <= 12; ++c) {
                bool rule = a % 3 == 0 && (b + 2 * c) % 3 == 0;
                mismatches += p_gamma(f, Lattice::gamma_abc(a, b, c)).torus_dim != (rule ? 2 : 0);
                ++cases;
            }
    return {mismatches == 0, std::to_string(cases) + " lattices, " + std::to_string(mismatches) + " mismatches"};
}

bool proportional(const IntPoly& a, const IntPoly& b)
{
    if (a.degree() != b.degree() || a.is_zero()) return false;
    for (int i = 0; i <= a.degree(); ++i)
        if (a.coeffs()[i] * b.lead() != b.coeffs()[i] * a.lead()) return false;
    return true;
}

Outcome crit4()
{
    LaurentPoly f = P("2-u^2+v-u*v");
    UnitarySolution s = solve_unitary_bivariate(f);
    VLinearSolution v = solve_unitary_v_linear(f);
    IntPoly mu{2, -1, -3, -1, 2}, mv{2, 13, 18, 13, 2};
    bool polys = !s.points.empty();
    double err = 1.0;
    double xi = (1 - std::sqrt(57.0)) / 8;
    for (const auto& p : s.points) {
        polys = polys && p.coords[0].min_poly == mu && p.coords[1].min_poly == mv;
        err = std::min(err, std::abs(p.coords[0].enclosure.re().to_double() - xi));
    }
    bool elim = proportional(v.c_eliminant, IntPoly{-7, -2, 8});
    return {s.points.size() == 2 && elim && polys && err < 1e-10,
            std::to_string(s.points.size()) + " points, c-eliminant " + v.c_eliminant.to_string("c") +
                ", min polys " + (polys ? "match" : "differ") + ", |Re xi - (1-sqrt57)/8| " + fmt("%.1e", err)};
}

Outcome crit5()
{
    LaurentPoly f = P("2-u^3+v-u*v-u^2*v");
    UnitarySolution s = solve_unitary_bivariate(f);
    VLinearSolution v = solve_unitary_v_linear(f);
    std::vector<double> c;
    for (const auto& r : v.c_roots) c.push_back(to_ball(r, 64).mid.to_double());
    bool croots = c.size() == 3 && std::abs(c[0] + 0.75) < 1e-15 && std::abs(c[1]) < 1e-15 && std::abs(c[2] - 1) < 1e-15;
    int torsion = 0;
    bool one_one = false;
    for (const auto& p : s.points)
        if (p.is_torsion) {
            ++torsion;
            one_one = p.coords[0].min_poly == IntPoly{-1, 1} && p.coords[1].min_poly == IntPoly{-1, 1};
        }
    return {s.points.size() == 5 && croots && torsion == 1 && one_one,
            std::to_string(s.points.size()) + " points, c-roots " + std::to_string(c.size()) + (croots ? " {-3/4,0,1}" : " wrong") +
                ", fully torsion points " + std::to_string(torsion) + (one_one ? " (1,1)" : "")};
}

Outcome crit6()
{
    IntPoly g{3, 3, 0, -3, 1}, quartic{1, 1, -2, 1, 1};
    CriticalPoints cp = critical_points_on_circle(g);
    bool found = std::find(cp.factors.begin(), cp.factors.end(), quartic) != cp.factors.end();
    double lo = 1e300;
    for (const auto& p : cp.points) lo = std::min(lo, p.phi.mid.to_double());
    double min_abs = std::sqrt(lo);
    auto roots = real_roots(quartic);
    bool ok = false;
    if (roots.size() == 2) {
        AlgebraicNumber eta = from_parameter(quartic, roots[1], 128);
        UnitaryPoint p;
        p.coords = {eta, conj(eta), conj(eta)};
        ok = verify_point(P("u^4-3*u^3+3*u+3-v-w", 3), p, 256);
    }
    return {ok && found && std::abs(min_abs - 2.0) < 1e-12,
            std::string("verify_point ") + (ok ? "accepts" : "rejects") + ", quartic factor " + (found ? "found" : "missing") +
                ", min |g| " + fmt("%.15f", min_abs)};
}

mpq_class harmonic_oracle(long m, long n)
{
    // Pascal recursion for the coefficients of 1/(2 - a - b)
    static std::vector<std::vector<mpq_class>> t;
    if (m < 0 || n < 0) return 0;
    if (t.empty()) {
        t.assign(50, std::vector<mpq_class>(50));
        for (int i = 0; i < 50; ++i)
            for (int j = 0; j < 50; ++j)
                t[i][j] = (i == 0 && j == 0) ? mpq_class(1, 2)
                                             : ((i ? t[i - 1][j] : mpq_class(0)) + (j ? t[i][j - 1] : mpq_class(0))) / 2;
    }
    return t[m][n];
}

Outcome crit7()
{
    LaurentPoly f = P("2-u-v");
    Kernel k = fft_kernel(f, P("1"), 1024, 10);
    double worst = 0.0;
    for (std::size_t i = 0; i < k.values.size(); ++i) {
        Exponent n = k.point(i);
        double exact = (n[0] <= 0 && n[1] <= 0) ? harmonic_value(-n[0], -n[1]).get_d() : 0.0;
        worst = std::max(worst, std::abs(k.values[i] - exact));
    }
    int bad = 0;
    for (long m = 3; m <= 40; ++m)
        for (long n = 0; n <= 40; ++n) {
            mpq_class direct = -harmonic_oracle(m, n) + 3 * harmonic_oracle(m - 1, n) - 3 * harmonic_oracle(m - 2, n) +
                               harmonic_oracle(m - 3, n);
            bad += g3_convolution_exact(m, n) != direct;
        }
    Kernel g3 = fft_kernel(f, P("(u-1)^3"), 1024, 64);
    ShellReport r = shell_sums(g3, 64);
    int above = 0;
    for (const auto& [N, S] : r.shells)
        if (N >= 8 && S > r.fitted_constant * std::pow(N, -1.4)) ++above;
    bool pass = worst < 1e-6 && bad == 0 && above == 0 && r.fitted_exponent >= -1.7 && r.fitted_exponent <= -1.3;
    return {pass, "fft vs closed form " + fmt("%.1e", worst) + ", g3 formula mismatches " + std::to_string(bad) +
                      ", fitted exponent " + fmt("%.3f", r.fitted_exponent) + ", C " + fmt("%.3f", r.fitted_constant) +
                      ", shells above C N^-1.4: " + std::to_string(above)};
}

Outcome crit8()
{
    LaurentPoly f = P("2-u-v");
    auto pts = solve_unitary_bivariate(f).points;
    const char* gs[] = {"1", "u-1", "(u-1)^2", "(u-1)^3"};
    const char* want[] = {"likely-out", "likely-out", "likely-out", "likely-in"};
    bool pass = true;
    std::string d;
    for (int m = 0; m < 4; ++m) {
        MultiplierDiagnostic r = multiplier_diagnostic(f, P(gs[m]), pts, 1024, 64, {}, 0);
        pass = pass && r.verdict == want[m];
        d += "m=" + std::to_string(m) + " " + r.verdict + (m < 3 ? ", " : "");
    }
    return {pass, d};
}

Outcome crit9()
{
    LaurentPoly f = P("2-u-v");
    Kernel k6 = fft_kernel(f, P("(u-1)^6"), 128, 32);
    Lattice L = Lattice::diagonal(2, 64);
    int fail_p = 0;
    double worst_p = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto v = IntegerConfiguration::random({-32, -32}, {95, 95}, 4, seed);
        PeriodicApprox a = periodic_approx(f, P("(u-1)^6"), k6, v, L, 0.05);
        worst_p = std::max(worst_p, a.achieved_eps);
        fail_p += !(a.achieved_eps < 0.05);
    }
    Kernel k3 = fft_kernel(f, P("(u-1)^3"), 1024, 256);
    int p = tail_radius(k3, 0.1 / 4);
    int fail_g = 0;
    double worst_g = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto a = IntegerConfiguration::random({0, 0}, {15, 15}, 4, 2 * seed);
        Exponent lo{-15 - p, -15 - p - static_cast<long>(seed % 5)};
        auto b = IntegerConfiguration::random(lo, {lo[0] + 15, lo[1] + 15}, 4, 2 * seed + 1);
        GlueResult r = specification_glue(f, P("(u-1)^3"), k3, {a, b}, 0.1);
        for (double e : r.errors) {
            worst_g = std::max(worst_g, e);
            fail_g += !(e < 0.1);
        }
        fail_g += r.p_used != p;
    }
    return {fail_p == 0 && fail_g == 0,
            "periodic_approx (g=(u-1)^6, diag:64, eps 0.05) worst " + fmt("%.2e", worst_p) + ", failures " +
                std::to_string(fail_p) + "/20; glue p(0.1)=" + std::to_string(p) + " worst " + fmt("%.2e", worst_g) +
                ", failures " + std::to_string(fail_g) + "/20"};
}

std::string point_35()
{
    IntPoly quartic{1, 1, -2, 1, 1};
    AlgebraicNumber eta = from_parameter(quartic, real_roots(quartic)[1], 128);
    UnitaryPoint p;
    p.coords = {eta, conj(eta), conj(eta)};
    return to_json(p).dump();
}

Outcome crit10()
{
    std::vector<std::vector<std::string>> suite = {
        {"pcount", "--poly", "2-u-v", "--lattice", "diag:2", "--exact"},
        {"pcount", "--poly", "1+u+v", "--lattice", "hnf:3,1,1"},
        {"pcount", "--poly", "2-u^2+v-u*v", "--lattice", "hnf:6,2,9", "--exact", "--format", "csv"},
        {"converge", "--poly", "2-u-v", "--seq", "diag:4..64:4"},
        {"converge", "--poly", "1+u+v", "--seq", "diag:3..24:3", "--format", "json"},
        {"unitary", "--poly", "2-u^2+v-u*v"},
        {"unitary", "--poly", "2-u^3+v-u*v-u^2*v"},
        {"unitary", "--poly", "u^4-3*u^3+3*u+3-v-w", "--dim", "3", "--verify-point", point_35()},
        {"kernel", "--poly", "2-u-v", "--g", "(u-1)^3", "--grid", "1024", "--box", "64"},
        {"kernel", "--poly", "2-u-v", "--g", "(u-1)^2", "--diagnose", "--seed", "3"},
        {"cover", "--poly", "2-u-v", "--g", "(u-1)^6", "--lattice", "diag:64", "--eps", "0.05", "--seed", "11"},
        {"cover", "--poly", "2-u-v", "--g", "(u-1)^3", "--window", "6", "--seed", "4"},
        {"glue", "--poly", "2-u-v", "--g", "(u-1)^3", "--eps", "0.1", "--patterns", "demo2", "--seed", "9"},
    };
    auto run_all = [&](int threads) {
        std::string all;
        for (auto args : suite) {
            args.push_back("--threads");
            args.push_back(std::to_string(threads));
            std::ostringstream out, err;
            int rc = cli::run(args, out, err);
            all += "[" + args[0] + " rc=" + std::to_string(rc) + "]\n" + out.str();
        }
        return all;
    };
    std::string ref = run_all(1);
    int rc_bad = 0;
    for (std::size_t pos = 0; (pos = ref.find(" rc=", pos)) != std::string::npos; ++pos) rc_bad += ref[pos + 4] != '0';
    int differ = 0;
    for (int t : {1, 2, 8, 1, 2, 8}) differ += run_all(t) != ref;
    return {differ == 0 && rc_bad == 0, std::to_string(suite.size()) + " commands x {1,2,8} threads x 2 runs, " +
                                            std::to_string(ref.size()) + " bytes, differing runs " +
                                            std::to_string(differ) + ", nonzero exits " + std::to_string(rc_bad)};
}

}  // namespace

int main()
{
    std::vector<std::pair<const char*, std::function<Outcome()>>> crits = {
        {"oracle equivalence", crit1},   {"convergence to entropy", crit2}, {"Example 3.2 rule", crit3},
        {"Example 3.3", crit4},          {"Example 3.4", crit5},           {"Example 3.5", crit6},
        {"homoclinic kernels", crit7},   {"multiplier diagnostics", crit8}, {"spanning and gluing", crit9},
        {"determinism", crit10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < crits.size(); ++i) {
        Outcome o;
        try {
            o = crits[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "criterion " << i + 1 << " [" << crits[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " - "
                  << o.detail << std::endl;
    }
    return failed ? 1 : 0;
}
