#include "algdyn/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "algdyn/bipoly.hpp"
#include "algdyn/errors.hpp"

namespace algdyn {

namespace {

struct GInt {
    mpz_class re, im;
};

// p + i q with p, q in Z[t]
struct GPoly {
    IntPoly re, im;
};

GPoly operator*(const GPoly& a, const GPoly& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GPoly operator+(const GPoly& a, const GPoly& b)
{
    return {a.re + b.re, a.im + b.im};
}

GPoly times(const GInt& c, const GPoly& p)
{
    return {c.re * p.re - c.im * p.im, c.re * p.im + c.im * p.re};
}

GInt times_i_pow(GInt c, long k)
{
    k = ((k % 4) + 4) % 4;
    for (long j = 0; j < k; ++j) c = {-c.im, c.re};
    return c;
}

GPoly gpow(const GPoly& a, int k)
{
    GPoly r{IntPoly::constant(1), IntPoly()};
    for (int j = 0; j < k; ++j) r = r * a;
    return r;
}

// (1 - i t)^a (1 + i t)^(n - a), i.e. s(t)^a (1 + i t)^n / i^a
GPoly circle_factor(int n, int a)
{
    GPoly minus{IntPoly{1}, IntPoly{0, -1}}, plus{IntPoly{1}, IntPoly{0, 1}};
    return gpow(minus, a) * gpow(plus, n - a);
}

// sum_k w_k s(t)^k (1 + i t)^n
GPoly substitute_circle(const std::vector<GInt>& w, int n)
{
    GPoly out;
    for (int k = 0; k < static_cast<int>(w.size()); ++k) {
        if (w[k].re == 0 && w[k].im == 0) continue;
        out = out + times(times_i_pow(w[k], k), circle_factor(n, k));
    }
    return out;
}

BiPoly outer(const IntPoly& x, const IntPoly& y)
{
    std::vector<IntPoly> by;
    for (int j = 0; j <= y.degree(); ++j) by.push_back(y[j] * x);
    return BiPoly(std::move(by));
}

Complex to_complex(const RealBall& b)
{
    return Complex(b.mid, Real(b.prec()), b.rad);
}

// Exponent grid of a two-variable polynomial shifted to start at (0, 0).
struct Grid {
    int n1 = 0, n2 = 0;
    std::vector<std::vector<mpz_class>> c;  // c[a][b]
};

Grid to_grid(const LaurentPoly& f)
{
    Exponent lo = f.min_exponent(), hi = f.max_exponent();
    Grid g;
    g.n1 = static_cast<int>(hi[0] - lo[0]);
    g.n2 = static_cast<int>(hi[1] - lo[1]);
    g.c.assign(g.n1 + 1, std::vector<mpz_class>(g.n2 + 1));
    for (const auto& [e, v] : f.terms()) g.c[e[0] - lo[0]][e[1] - lo[1]] = v;
    return g;
}

std::vector<Complex> overlapping(const std::vector<Complex>& roots, const Complex& z)
{
    std::vector<Complex> out;
    for (const auto& r : roots)
        if (overlaps(r, z)) out.push_back(r);
    return out;
}

// The irreducible factor of P vanishing at the point approximated by approx(wp), with its root.
AlgebraicNumber pick_root(const IntPoly& P, const std::function<Complex(long)>& approx, long prec, int cap)
{
    Factorization fz = factor(P, cap);
    for (long wp = prec + 64; wp <= 16 * prec + 1024; wp *= 2) {
        Complex z = approx(wp);
        const IntPoly* hit = nullptr;
        int n = 0;
        for (const auto& [q, e] : fz.factors) {
            if (q.degree() < 1) continue;
            if (eval(q, z).contains_zero()) {
                hit = &q;
                ++n;
            }
        }
        if (n != 1) continue;
        auto roots = overlapping(complex_roots(*hit, prec), z);
        if (roots.size() == 1) return {*hit, roots[0]};
    }
    throw PrecisionError("could not separate an algebraic number from its conjugates");
}

int cmp_double(double a, double b)
{
    return a < b ? -1 : (a > b ? 1 : 0);
}

bool point_less(const UnitaryPoint& a, const UnitaryPoint& b)
{
    for (std::size_t k = 0; k < a.coords.size(); ++k) {
        const Complex &x = a.coords[k].enclosure, &y = b.coords[k].enclosure;
        if (int c = cmp_double(x.re().to_double(), y.re().to_double())) return c < 0;
        if (int c = cmp_double(x.im().to_double(), y.im().to_double())) return c < 0;
    }
    return false;
}

UnitaryPoint make_point(std::vector<AlgebraicNumber> coords, unsigned long order_cap)
{
    UnitaryPoint p;
    p.coords = std::move(coords);
    return classify_torsion(std::move(p), order_cap);
}

AlgebraicNumber minus_i(long prec)
{
    return {IntPoly{1, 0, 1}, Complex::exact(0, -1, prec)};
}

// Real roots of the Gaussian polynomial h, each with its irreducible factor.
std::vector<std::pair<IntPoly, RealRoot>> common_real_roots(const GPoly& h, int cap)
{
    IntPoly g = gcd(h.re, h.im);
    std::vector<std::pair<IntPoly, RealRoot>> out;
    if (g.degree() < 1) return out;
    for (const auto& [q, e] : factor(g, cap).factors)
        for (auto& r : real_roots(q)) out.push_back({q, r});
    return out;
}

std::vector<std::pair<IntPoly, RealRoot>> irreducible_real_roots(const IntPoly& p, int cap)
{
    std::vector<std::pair<IntPoly, RealRoot>> out;
    for (const auto& [q, e] : factor(p, cap).factors) {
        if (q.degree() < 1) continue;
        for (auto& r : real_roots(q)) out.push_back({q, r});
    }
    return out;
}

bool has_real_root(const IntPoly& p)
{
    return p.degree() >= 1 && count_real_roots(squarefree_part(p)) > 0;
}

IntPoly chebyshev_t(int k)
{
    IntPoly a{1}, b{0, 1};
    if (k == 0) return a;
    for (int j = 1; j < k; ++j) {
        IntPoly c = IntPoly{0, 2} * b - a;
        a = std::move(b);
        b = std::move(c);
    }
    return b;
}

}  // namespace

AlgebraicNumber refine(const AlgebraicNumber& a, long prec)
{
    auto hits = overlapping(complex_roots(squarefree_part(a.min_poly), prec), a.enclosure);
    if (hits.empty()) throw InputError("enclosure contains no root of the minimal polynomial");
    if (hits.size() > 1) throw PrecisionError("enclosure does not isolate a single root");
    return {a.min_poly, hits[0]};
}

AlgebraicNumber conj(const AlgebraicNumber& a)
{
    return {a.min_poly, a.enclosure.conj()};
}

bool same_point(const UnitaryPoint& a, const UnitaryPoint& b)
{
    if (a.coords.size() != b.coords.size()) return false;
    for (std::size_t k = 0; k < a.coords.size(); ++k) {
        if (a.coords[k].min_poly != b.coords[k].min_poly) return false;
        if (!overlaps(a.coords[k].enclosure, b.coords[k].enclosure)) return false;
    }
    return true;
}

Complex circle_param(const RealBall& t, long prec)
{
    Complex T = to_complex(t);
    Complex one = Complex::exact(1, 0, prec), i = Complex::exact(0, 1, prec);
    Complex t2 = T * T;
    return (scale(T, 2) + i * (one - t2)) / (one + t2);
}

AlgebraicNumber from_parameter(const IntPoly& q, RealRoot t, long prec)
{
    // t = (i - u) / (i u - 1), so q(t) = 0 becomes sum q_k (i - u)^k (i u - 1)^(n - k) = 0
    int n = q.degree();
    GPoly a{IntPoly{0, -1}, IntPoly{1}}, b{IntPoly{-1}, IntPoly{0, 1}};
    GPoly qt;
    for (int k = 0; k <= n; ++k) {
        if (q[k] == 0) continue;
        qt = qt + times({q[k], 0}, gpow(a, k) * gpow(b, n - k));
    }
    IntPoly P = qt.re * qt.re + qt.im * qt.im;
    return pick_root(
        P, [&](long wp) { return circle_param(to_ball(t, wp), wp); }, prec, 2 * n + 1);
}

UnitarySolution solve_unitary_bivariate(const LaurentPoly& f, const UnitaryOptions& opt)
{
    if (f.dim() != 2) throw InputError("the bivariate solver needs two variables");
    if (f.is_zero()) throw InputError("zero polynomial");
    const long prec = opt.precision;
    const Grid g = to_grid(f);
    UnitarySolution sol;
    auto infinite = [&](std::string why) {
        sol.infinite = true;
        sol.diagnostic = std::move(why);
        sol.points.clear();
        return sol;
    };

    // g1 + i g2 = f(s(t1), s(t2)) (1 + i t1)^n1 (1 + i t2)^n2
    std::vector<GPoly> P1, P2;
    for (int a = 0; a <= g.n1; ++a) P1.push_back(circle_factor(g.n1, a));
    for (int b = 0; b <= g.n2; ++b) P2.push_back(circle_factor(g.n2, b));
    BiPoly g1, g2;
    for (int a = 0; a <= g.n1; ++a)
        for (int b = 0; b <= g.n2; ++b) {
            if (g.c[a][b] == 0) continue;
            GPoly X = times(times_i_pow({g.c[a][b], 0}, a + b), P1[a]);
            const GPoly& Y = P2[b];
            g1 = g1 + (outer(X.re, Y.re) - outer(X.im, Y.im));
            g2 = g2 + (outer(X.re, Y.im) + outer(X.im, Y.re));
        }

    std::vector<UnitaryPoint> pts;
    if (g1.is_zero() || g2.is_zero()) {
        const BiPoly& h = g1.is_zero() ? g2 : g1;
        if (h.deg_x() > 0 || h.deg_y() > 0) return infinite("a single real equation in the parameters");
    } else {
        IntPoly c1 = gcd(content_y(g1), content_y(g2));
        if (has_real_root(c1)) return infinite("a full circle of solutions in the second variable");
        IntPoly c2 = gcd(content_y(g1.swapped()), content_y(g2.swapped()));
        if (has_real_root(c2)) return infinite("a full circle of solutions in the first variable");

        IntPoly R1 = resultant_y(g1, g2);
        if (R1.is_zero()) return infinite("the eliminant vanishes identically");
        IntPoly R2 = resultant_y(g1.swapped(), g2.swapped());
        if (R2.is_zero()) return infinite("the eliminant vanishes identically");
        if (R1.degree() > opt.degree_cap || R2.degree() > opt.degree_cap)
            throw RegimeError("eliminant degree exceeds the cap");
        sol.eliminant = R1.degree() > 0 ? primitive_part(R1) : R1;

        auto roots1 = irreducible_real_roots(R1, opt.degree_cap);
        auto roots2 = irreducible_real_roots(R2, opt.degree_cap);
        for (auto& [q1, a] : roots1)
            for (auto& [q2, b] : roots2) {
                bool ok = true;
                for (long wp : {prec + 64, 2 * prec + 64}) {
                    Complex x = to_complex(to_ball(a, wp)), y = to_complex(to_ball(b, wp));
                    if (!eval(g1, x, y).contains_zero() || !eval(g2, x, y).contains_zero()) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                pts.push_back(make_point({from_parameter(q1, a, prec), from_parameter(q2, b, prec)}, opt.order_cap));
            }
    }

    // the excluded parameter value: one coordinate equal to -i
    for (int k = 0; k < 2; ++k) {
        int n = k == 0 ? g.n2 : g.n1;
        std::vector<GInt> w(n + 1, GInt{0, 0});
        for (int a = 0; a <= g.n1; ++a)
            for (int b = 0; b <= g.n2; ++b) {
                if (g.c[a][b] == 0) continue;
                GInt c = times_i_pow({g.c[a][b], 0}, -(k == 0 ? a : b));
                GInt& slot = w[k == 0 ? b : a];
                slot.re += c.re;
                slot.im += c.im;
            }
        GPoly h = substitute_circle(w, n);
        if (h.re.is_zero() && h.im.is_zero())
            return infinite("f vanishes on a full circle through -i");
        for (auto& [q, r] : common_real_roots(h, opt.degree_cap)) {
            AlgebraicNumber other = from_parameter(q, r, prec);
            std::vector<AlgebraicNumber> c = k == 0 ? std::vector{minus_i(prec), other}
                                                    : std::vector{other, minus_i(prec)};
            pts.push_back(make_point(std::move(c), opt.order_cap));
        }
    }
    GInt at{0, 0};
    for (int a = 0; a <= g.n1; ++a)
        for (int b = 0; b <= g.n2; ++b) {
            GInt c = times_i_pow({g.c[a][b], 0}, -(a + b));
            at.re += c.re;
            at.im += c.im;
        }
    if (at.re == 0 && at.im == 0) pts.push_back(make_point({minus_i(prec), minus_i(prec)}, opt.order_cap));

    std::sort(pts.begin(), pts.end(), point_less);
    sol.points = std::move(pts);
    return sol;
}

VLinearSolution solve_unitary_v_linear(const LaurentPoly& f, const UnitaryOptions& opt)
{
    if (f.dim() != 2) throw InputError("the v-linear solver needs two variables");
    if (f.is_zero()) throw InputError("zero polynomial");
    const Grid g = to_grid(f);
    if (g.n2 != 1) throw InputError("polynomial is not linear in the second variable");
    const long prec = opt.precision;
    std::vector<mpz_class> ac(g.n1 + 1), bc(g.n1 + 1);
    for (int a = 0; a <= g.n1; ++a) {
        ac[a] = g.c[a][0];
        bc[a] = g.c[a][1];
    }
    IntPoly A(ac), B(bc);

    // |A(u)|^2 - |B(u)|^2 on the circle, a symmetric Laurent polynomial rewritten in c
    IntPoly H;
    for (int k = 0; k <= g.n1; ++k) {
        mpz_class h = 0;
        for (int j = 0; j + k <= g.n1; ++j) h += ac[j] * ac[j + k] - bc[j] * bc[j + k];
        H = H + (k == 0 ? h : mpz_class(2 * h)) * chebyshev_t(k);
    }
    if (H.is_zero()) throw RegimeError("|v(u)| = 1 identically on the circle");
    if (H.lead() < 0) H = -H;

    VLinearSolution sol;
    sol.c_eliminant = H;
    std::vector<UnitaryPoint> pts;
    if (H.degree() < 1) return sol;
    for (const auto& [q, e] : factor(H, opt.degree_cap).factors) {
        if (q.degree() < 1) continue;
        for (auto& c : real_roots_in(q, -1, 1)) {
            sol.c_roots.push_back(c);
            // u^m q((u + 1/u) / 2) 2^m
            int m = q.degree();
            IntPoly Pu;
            for (int k = 0; k <= m; ++k)
                Pu = Pu + q[k] * (pow(IntPoly{1, 0, 1}, k) * pow(IntPoly{0, 2}, m - k));
            Complex cz = to_complex(to_ball(c, prec + 64));
            Complex half = Complex::from_rational(mpq_class(1, 2), 0, prec + 64);
            for (const auto& [F, mult] : factor(Pu, opt.degree_cap).factors) {
                if (F.degree() < 1) continue;
                for (const auto& z : complex_roots(F, prec + 64)) {
                    if (!overlaps((z + inverse(z)) * half, cz)) continue;
                    if (divide_exact(B, F)) {
                        if (divide_exact(A, F)) throw RegimeError("numerator and denominator vanish together on the circle");
                        continue;
                    }
                    AlgebraicNumber u{F, z};
                    // v = -A(u) / B(u): Res_y(F(y), B(y) x + A(y))
                    std::vector<IntPoly> P, Q;
                    for (int j = 0; j <= F.degree(); ++j) P.push_back(IntPoly::constant(F[j]));
                    for (int j = 0; j <= g.n1; ++j) Q.push_back(IntPoly(std::vector<mpz_class>{ac[j], bc[j]}));
                    IntPoly R = resultant_y(BiPoly(P), BiPoly(Q));
                    AlgebraicNumber v = pick_root(
                        R,
                        [&](long wp) {
                            Complex uz = refine(u, wp).enclosure;
                            return -(eval(A, uz) / eval(B, uz));
                        },
                        prec, opt.degree_cap);
                    u = refine(u, prec);
                    pts.push_back(make_point({u, v}, opt.order_cap));
                }
            }
        }
    }
    std::sort(sol.c_roots.begin(), sol.c_roots.end(), [](const RealRoot& a, const RealRoot& b) {
        return mpfr_cmp(to_ball(a, 64).mid.get(), to_ball(b, 64).mid.get()) < 0;
    });
    std::sort(pts.begin(), pts.end(), point_less);
    sol.points = std::move(pts);
    return sol;
}

bool verify_point(const LaurentPoly& f, const UnitaryPoint& p, long precision)
{
    if (static_cast<int>(p.coords.size()) != f.dim()) throw InputError("point dimension does not match");
    std::vector<Complex> z;
    for (const auto& a : p.coords) {
        if (a.min_poly.degree() < 1) throw InputError("minimal polynomial must have positive degree");
        auto hits = overlapping(complex_roots(squarefree_part(a.min_poly), precision), a.enclosure);
        if (hits.empty()) return false;
        if (hits.size() > 1) throw PrecisionError("enclosure does not isolate a single root");
        const Complex& r = hits[0];
        if (!eval(a.min_poly, r).contains_zero()) return false;
        RealBall m = abs(r);
        if (std::fabs(m.mid.to_double() - 1.0) > m.rad + 1e-20) return false;
        z.push_back(r);
    }
    return eval(f, z).contains_zero();
}

UnitaryPoint classify_torsion(UnitaryPoint p, unsigned long order_cap)
{
    p.torsion.assign(p.coords.size(), false);
    p.orders.assign(p.coords.size(), 0);
    for (std::size_t k = 0; k < p.coords.size(); ++k) {
        const IntPoly& m = p.coords[k].min_poly;
        unsigned long bound = cyclotomic_search_bound(m.degree());
        unsigned long cap = order_cap == 0 ? bound : order_cap;
        if (auto n = cyclotomic_index(m, cap)) {
            p.torsion[k] = true;
            p.orders[k] = *n;
        } else if (cap < bound && cyclotomic_index(m, bound)) {
            throw RegimeError("torsion order exceeds the cap");
        }
    }
    p.is_torsion = std::all_of(p.torsion.begin(), p.torsion.end(), [](bool b) { return b; });
    return p;
}

CriticalPoints critical_points_on_circle(const IntPoly& g, long prec)
{
    if (g.is_zero()) throw InputError("zero polynomial");
    const int n = g.degree();
    std::vector<GInt> w;
    for (int k = 0; k <= n; ++k) w.push_back({g[k], 0});
    GPoly G = substitute_circle(w, n);
    // phi = N / (1 + t^2)^n
    IntPoly N = G.re * G.re + G.im * G.im;
    IntPoly D = derivative(N) * IntPoly{1, 0, 1} - mpz_class(2 * n) * (IntPoly{0, 1} * N);
    CriticalPoints out;
    out.numerator = D;
    if (D.is_zero()) {
        out.constant = true;
        return out;
    }
    for (const auto& [q, e] : factor(D).factors) {
        if (q.degree() < 1) continue;
        out.factors.push_back(q);
        for (auto& r : real_roots(q)) {
            RealBall t = to_ball(r, prec + 32);
            Complex T = to_complex(t);
            Complex one = Complex::exact(1, 0, prec + 32);
            Complex phi = eval(N, T) / pow(one + T * T, n);
            out.points.push_back({AlgebraicNumber{q, T}, r, RealBall(phi.re(), phi.rad())});
        }
    }
    std::sort(out.points.begin(), out.points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        return mpfr_cmp(a.t.enclosure.re().get(), b.t.enclosure.re().get()) < 0;
    });
    return out;
}

std::optional<Character> to_character(const UnitaryPoint& p)
{
    std::vector<mpq_class> angles;
    for (std::size_t k = 0; k < p.coords.size(); ++k) {
        if (k >= p.orders.size() || p.orders[k] == 0) return std::nullopt;
        const Complex& z = p.coords[k].enclosure;
        long n = static_cast<long>(p.orders[k]);
        double turn = std::atan2(z.im().to_double(), z.re().to_double()) / (2 * M_PI);
        long j = ((std::lround(turn * static_cast<double>(n)) % n) + n) % n;
        mpq_class x(j, n);
        x.canonicalize();
        if (!overlaps(Complex::expi(x, z.prec()), z)) throw PrecisionError("root of unity does not match its enclosure");
        angles.push_back(x);
    }
    return make_character(std::move(angles));
}

TorsionLattice torsion_lattice(const std::vector<UnitaryPoint>& points)
{
    if (points.empty()) throw InputError("no points");
    std::vector<Character> chars;
    for (const auto& p : points) {
        auto c = to_character(p);
        if (!c) throw InputError("point is not torsion");
        chars.push_back(*c);
    }
    return torsion_lattice(static_cast<int>(points[0].coords.size()), chars);
}

nlohmann::json to_json(const AlgebraicNumber& a)
{
    int digits = static_cast<int>(static_cast<double>(a.enclosure.prec()) * 0.30103) + 3;
    nlohmann::json mp = nlohmann::json::array();
    for (const auto& c : a.min_poly.coeffs()) {
        if (c.fits_slong_p())
            mp.push_back(c.get_si());
        else
            mp.push_back(c.get_str());
    }
    return {{"min_poly", mp},
            {"approx", {{"re", a.enclosure.re().to_sci(digits)}, {"im", a.enclosure.im().to_sci(digits)}}},
            {"radius", a.enclosure.rad()}};
}

nlohmann::json to_json(const UnitaryPoint& p)
{
    nlohmann::json coords = nlohmann::json::array();
    for (std::size_t k = 0; k < p.coords.size(); ++k) {
        nlohmann::json c = to_json(p.coords[k]);
        bool t = k < p.torsion.size() && p.torsion[k];
        c["torsion"] = t;
        if (t) c["order"] = p.orders[k];
        coords.push_back(std::move(c));
    }
    return {{"coords", coords}, {"is_torsion", p.is_torsion}};
}

UnitaryPoint point_from_json(const nlohmann::json& j)
{
    // the decimal string carries an error of one unit in its last digit
    double slack = 0;
    auto real_of = [&slack](const nlohmann::json& v, long prec) {
        Real r(prec);
        std::string s = v.is_string() ? v.get<std::string>() : v.dump();
        if (mpfr_set_str(r.get(), s.c_str(), 10, MPFR_RNDN) != 0) throw InputError("bad number '" + s + "'");
        int digits = 0;
        for (char ch : s.substr(0, s.find_first_of("eE")))
            digits += ch >= '0' && ch <= '9';
        slack += std::max(1.0, r.abs_up()) * std::pow(10.0, 1 - digits);
        return r;
    };
    try {
        UnitaryPoint p;
        for (const auto& c : j.at("coords")) {
            std::vector<mpz_class> mp;
            for (const auto& x : c.at("min_poly")) {
                if (x.is_string())
                    mp.emplace_back(x.get<std::string>());
                else
                    mp.emplace_back(x.get<long>());
            }
            IntPoly m(std::move(mp));
            if (m.degree() < 1) throw InputError("minimal polynomial must have positive degree");
            long prec = 256;
            slack = 0;
            Real re = real_of(c.at("approx").at("re"), prec), im = real_of(c.at("approx").at("im"), prec);
            double rad = c.contains("radius") ? c.at("radius").get<double>() : 0.0;
            Complex z(std::move(re), std::move(im), round_up(rad + slack));
            p.coords.push_back({primitive_part(m), z});
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad point json: ") + e.what());
    }
}

}  // namespace algdyn
