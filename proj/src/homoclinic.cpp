#include "algdyn/homoclinic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <mutex>
#include <random>

#include <fftw3.h>

#include "algdyn/errors.hpp"
#include "algdyn/periodic.hpp"

namespace algdyn {

namespace {

constexpr double kTwoPi = 6.283185307179586477;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::mutex fftw_mutex;

std::size_t box_size(int dim, int box)
{
    std::size_t n = 1;
    for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(2 * box + 1);
    return n;
}

std::int64_t sup_norm(const Exponent& n)
{
    std::int64_t r = 0;
    for (auto x : n) r = std::max<std::int64_t>(r, std::llabs(x));
    return r;
}

// Row-major rectangle lo..hi.
struct Rect {
    Exponent lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }
    bool empty() const
    {
        for (int i = 0; i < dim(); ++i)
            if (hi[i] < lo[i]) return true;
        return false;
    }
    std::size_t size() const
    {
        if (empty()) return 0;
        std::size_t n = 1;
        for (int i = 0; i < dim(); ++i) n *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
        return n;
    }
    bool inside(const Exponent& n) const
    {
        for (int i = 0; i < dim(); ++i)
            if (n[i] < lo[i] || n[i] > hi[i]) return false;
        return true;
    }
    std::size_t index(const Exponent& n) const
    {
        std::size_t idx = 0;
        for (int i = 0; i < dim(); ++i) idx = idx * static_cast<std::size_t>(hi[i] - lo[i] + 1) + (n[i] - lo[i]);
        return idx;
    }
    Exponent point(std::size_t idx) const
    {
        Exponent n(dim());
        for (int i = dim() - 1; i >= 0; --i) {
            auto w = static_cast<std::size_t>(hi[i] - lo[i] + 1);
            n[i] = lo[i] + static_cast<std::int64_t>(idx % w);
            idx /= w;
        }
        return n;
    }
    // flat index step of a unit move in each coordinate
    std::vector<std::int64_t> strides() const
    {
        std::vector<std::int64_t> s(dim(), 1);
        for (int i = dim() - 2; i >= 0; --i) s[i] = s[i + 1] * (hi[i + 1] - lo[i + 1] + 1);
        return s;
    }
    Rect shrunk(std::int64_t r) const
    {
        Rect o = *this;
        for (int i = 0; i < dim(); ++i) {
            o.lo[i] += r;
            o.hi[i] -= r;
        }
        return o;
    }
};

std::int64_t flat_offset(const Exponent& m, const std::vector<std::int64_t>& strides)
{
    std::int64_t off = 0;
    for (std::size_t i = 0; i < m.size(); ++i) off += m[i] * strides[i];
    return off;
}

double to_double(const mpz_class& c)
{
    return c.get_d();
}

struct Term {
    Exponent e;
    double c;
};

std::vector<Term> terms_of(const LaurentPoly& p)
{
    std::vector<Term> t;
    for (const auto& [e, c] : p.terms()) t.push_back({e, to_double(c)});
    return t;
}

// Per coordinate, s^-e on the grid s = rho e(j / G) for the exponents in [lo, hi].
struct PowerTable {
    int G = 0;
    std::vector<std::int64_t> lo;
    std::vector<std::vector<std::complex<double>>> tab;

    PowerTable(int grid, const std::vector<double>& rho, const Exponent& emin, const Exponent& emax) : G(grid), lo(emin)
    {
        int d = static_cast<int>(rho.size());
        tab.resize(d);
        for (int i = 0; i < d; ++i) {
            std::int64_t span = emax[i] - emin[i] + 1;
            tab[i].resize(static_cast<std::size_t>(span) * G);
            for (std::int64_t e = emin[i]; e <= emax[i]; ++e) {
                double mod = std::pow(rho[i], -static_cast<double>(e));
                for (int j = 0; j < G; ++j) {
                    std::int64_t r = ((-e * j) % G + G) % G;
                    tab[i][static_cast<std::size_t>(e - emin[i]) * G + j] = std::polar(mod, kTwoPi * r / G);
                }
            }
        }
    }
    // sum_n c_n s^-n
    std::complex<double> eval(const std::vector<Term>& terms, const std::vector<int>& j) const
    {
        std::complex<double> acc = 0.0;
        for (const auto& t : terms) {
            std::complex<double> z = t.c;
            for (std::size_t i = 0; i < j.size(); ++i)
                z *= tab[i][static_cast<std::size_t>(t.e[i] - lo[i]) * G + j[i]];
            acc += z;
        }
        return acc;
    }
};

void exponent_range(const LaurentPoly& f, const LaurentPoly& g, Exponent& lo, Exponent& hi)
{
    lo = f.min_exponent();
    hi = f.max_exponent();
    if (!g.is_zero()) {
        auto a = g.min_exponent(), b = g.max_exponent();
        for (std::size_t i = 0; i < lo.size(); ++i) {
            lo[i] = std::min(lo[i], a[i]);
            hi[i] = std::max(hi[i], b[i]);
        }
    }
}

std::vector<int> grid_point(std::size_t idx, int d, int G)
{
    std::vector<int> j(d);
    for (int i = d - 1; i >= 0; --i) {
        j[i] = static_cast<int>(idx % G);
        idx /= G;
    }
    return j;
}

// Radii per coordinate for sampling, or all ones when no orthant looks safe.
std::vector<double> choose_radii(const LaurentPoly& f, int G)
{
    int d = f.dim();
    double norm = to_double(one_norm(f));
    double r = 1.0 + 20.0 / G;
    int coarse = std::min(G, 256);
    while (coarse > 8 && std::pow(static_cast<double>(coarse), d) > 65536.0) coarse /= 2;
    auto terms = terms_of(f);
    Exponent lo = f.min_exponent(), hi = f.max_exponent();
    std::size_t pts = 1;
    for (int i = 0; i < d; ++i) pts *= static_cast<std::size_t>(coarse);

    double best = -1.0;
    std::vector<double> best_rho(d, 1.0);
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        double ratio = kInf;
        for (int k = 1; k <= 4; ++k) {
            double t = std::pow(r, k / 4.0);
            std::vector<double> rho(d);
            for (int i = 0; i < d; ++i) rho[i] = (mask >> i & 1u) ? 1.0 / t : t;
            PowerTable pt(coarse, rho, lo, hi);
            double m = kInf;
            for (std::size_t idx = 0; idx < pts; ++idx) m = std::min(m, std::abs(pt.eval(terms, grid_point(idx, d, coarse))));
            ratio = std::min(ratio, m / (t - 1.0));
        }
        if (ratio >= 0.05 * norm && ratio > best) {
            best = ratio;
            for (int i = 0; i < d; ++i) best_rho[i] = (mask >> i & 1u) ? 1.0 / r : r;
        }
    }
    return best_rho;
}

std::vector<double> grid_kernel(const LaurentPoly& f, const LaurentPoly& g, int G, int B, const ExecContext& exec)
{
    int d = f.dim();
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(G);
    std::vector<double> rho = choose_radii(f, G);
    bool plain = std::all_of(rho.begin(), rho.end(), [](double x) { return x == 1.0; });

    Exponent lo, hi;
    exponent_range(f, g, lo, hi);
    PowerTable pt(G, rho, lo, hi);
    auto tf = terms_of(f), tg = terms_of(g);
    double norm = to_double(one_norm(f));

    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    if (!buf) throw std::bad_alloc();
    std::unique_ptr<fftw_complex, void (*)(void*)> hold(buf, fftw_free);

    std::size_t row = total / static_cast<std::size_t>(G);
    parallel_for(exec, static_cast<std::size_t>(G), [&](std::size_t r0) {
        for (std::size_t q = 0; q < row; ++q) {
            std::size_t idx = r0 * row + q;
            auto j = grid_point(idx, d, G);
            std::complex<double> den = pt.eval(tf, j);
            std::complex<double> val;
            if (std::abs(den) < 1e-13 * norm) {
                std::vector<mpq_class> ang(d);
                for (int i = 0; i < d; ++i) ang[i] = mpq_class(j[i], G);
                if (!plain || !is_zero_at_character(f, make_character(std::move(ang))))
                    throw PrecisionError("grid point too close to a zero of f");
                val = 0.0;
            } else {
                val = pt.eval(tg, j) / den;
            }
            buf[idx][0] = val.real();
            buf[idx][1] = val.imag();
        }
    });

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        std::vector<int> n(d, G);
        plan = fftw_plan_dft(d, n.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
    }

    std::vector<double> values(box_size(d, B));
    Kernel shape;
    shape.dim = d;
    shape.box = B;
    for (std::size_t i = 0; i < values.size(); ++i) {
        Exponent k = shape.point(i);
        std::size_t idx = 0;
        double scale = 1.0 / static_cast<double>(total);
        for (int c = 0; c < d; ++c) {
            idx = idx * G + static_cast<std::size_t>((k[c] % G + G) % G);
            scale *= std::pow(rho[c], -static_cast<double>(k[c]));
        }
        values[i] = buf[idx][0] * scale;
    }
    return values;
}

void fit(const std::vector<std::pair<int, double>>& shells, double mass, int lo, int hi, double& p, double& C,
         bool& nondecreasing)
{
    double peak = 0.0;
    for (const auto& s : shells) peak = std::max(peak, s.second);
    double floor = std::max(1e-10 * peak, 1e-13 * mass);
    std::vector<double> xs, ys;
    nondecreasing = true;
    double prev = -1.0;
    for (const auto& [N, S] : shells) {
        if (N < lo || N > hi) continue;
        if (prev >= 0.0 && S < prev * (1.0 - 1e-9)) nondecreasing = false;
        prev = S;
        if (S > floor && S > 0.0) {
            xs.push_back(std::log(static_cast<double>(N)));
            ys.push_back(std::log(S));
        }
    }
    if (xs.size() < 2) {
        p = -kInf;
        C = 0.0;
        return;
    }
    double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    p = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    C = std::exp((sy - p * sx) / n);
}

void check_bound(const IntegerConfiguration& v, const mpz_class& K)
{
    if (mpz_class(v.max_abs()) > K) throw InputError("configuration exceeds the bound one_norm(f) = " + K.get_str());
}

// lift and values of sum_m k_m v_{n-m} over `out`; v must cover out + box
void convolve(const Kernel& k, const IntegerConfiguration& v, const Rect& out, const ExecContext& exec,
              std::vector<double>& lift)
{
    Rect vr{v.lo, v.hi};
    auto strides = vr.strides();
    std::vector<std::pair<std::int64_t, double>> taps;
    for (std::size_t i = 0; i < k.values.size(); ++i)
        if (k.values[i] != 0.0) taps.emplace_back(flat_offset(k.point(i), strides), k.values[i]);
    lift.assign(out.size(), 0.0);
    std::size_t n = out.size();
    std::size_t chunk = 256;
    parallel_for(exec, (n + chunk - 1) / chunk, [&](std::size_t c) {
        for (std::size_t i = c * chunk; i < std::min(n, (c + 1) * chunk); ++i) {
            auto base = static_cast<std::int64_t>(vr.index(out.point(i)));
            double acc = 0.0;
            for (const auto& [off, w] : taps) acc += w * static_cast<double>(v.values[base - off]);
            lift[i] = acc;
        }
    });
}

double frac(double x)
{
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

TorusConfiguration make_torus(const Rect& out, std::vector<double> lift)
{
    TorusConfiguration t;
    t.dim = out.dim();
    t.lo = out.lo;
    t.hi = out.hi;
    t.values.resize(lift.size());
    for (std::size_t i = 0; i < lift.size(); ++i) t.values[i] = frac(lift[i]);
    t.lift = std::move(lift);
    return t;
}

// Fills residual and identity_defect; lift_at and v_at read the (possibly periodic) data.
template <class LiftAt, class VAt>
void residuals(TorusConfiguration& t, const Rect& interior, const LaurentPoly& f, const LaurentPoly& g, LiftAt lift_at,
               VAt v_at)
{
    auto tf = terms_of(f);
    auto tg = terms_of(g);
    double res = 0.0, defect = 0.0;
    std::size_t n = interior.size();
    for (std::size_t i = 0; i < n; ++i) {
        Exponent p = interior.point(i);
        double a = 0.0, b = 0.0;
        Exponent q(p.size());
        for (const auto& term : tf) {
            for (std::size_t c = 0; c < p.size(); ++c) q[c] = p[c] + term.e[c];
            a += term.c * lift_at(q);
        }
        for (const auto& term : tg) {
            for (std::size_t c = 0; c < p.size(); ++c) q[c] = p[c] + term.e[c];
            b += term.c * static_cast<double>(v_at(q));
        }
        res = std::max(res, std::abs(a - std::nearbyint(a)));
        defect = std::max(defect, std::abs(a - b));
    }
    t.residual = res;
    t.identity_defect = defect;
}

double residual_bound(const Kernel& k, const LaurentPoly& f, double vmax)
{
    double K = to_double(one_norm(f));
    double kl1 = 0.0;
    for (double x : k.values) kl1 += std::abs(x);
    auto N = static_cast<double>(k.values.size());
    auto rf = static_cast<int>(f.support_radius());
    double layer = k.mass_outside(std::max(0, k.box - rf + 1));
    return K * vmax * (k.tail_bound + layer + N * (1e-14 + std::ldexp(kl1, -52)));
}

}  // namespace

double Kernel::at(const Exponent& n) const
{
    if (sup_norm(n) > box) return 0.0;
    return values[index(n)];
}

std::size_t Kernel::index(const Exponent& n) const
{
    std::size_t idx = 0;
    for (int i = 0; i < dim; ++i) idx = idx * static_cast<std::size_t>(2 * box + 1) + (n[i] + box);
    return idx;
}

Exponent Kernel::point(std::size_t i) const
{
    Exponent n(dim);
    auto w = static_cast<std::size_t>(2 * box + 1);
    for (int c = dim - 1; c >= 0; --c) {
        n[c] = static_cast<std::int64_t>(i % w) - box;
        i /= w;
    }
    return n;
}

double Kernel::mass_outside(int r) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (sup_norm(point(i)) >= r) s += std::abs(values[i]);
    return s;
}

mpq_class harmonic_value(long m, long n)
{
    if (m < 0 || n < 0) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m + n), static_cast<unsigned long>(n));
    mpq_class r(b, mpz_class(1) << static_cast<mp_bitcnt_t>(m + n + 1));
    r.canonicalize();
    return r;
}

Kernel harmonic_kernel(int box)
{
    if (box < 0) throw InputError("box radius must be nonnegative");
    Kernel k;
    k.dim = 2;
    k.box = box;
    k.values.assign(box_size(2, box), 0.0);
    for (long m = 0; m <= box; ++m)
        for (long n = 0; n <= box; ++n) k.values[k.index({-m, -n})] = harmonic_value(m, n).get_d();
    k.tail_bound = kInf;
    k.source = "closed-form";
    return k;
}

Kernel fft_kernel(const LaurentPoly& f, const LaurentPoly& g, int grid, int box, const ExecContext& exec,
                  bool alias_check)
{
    int d = f.dim();
    if (g.dim() != d) throw InputError("f and g have different dimensions");
    if (f.is_zero()) throw InputError("f is zero");
    if (grid < 4 || (grid & (grid - 1)) != 0) throw InputError("grid must be a power of two >= 4");
    if (box < 0 || box > grid / 4) throw InputError("box radius must lie in [0, grid/4]");
    if (std::pow(static_cast<double>(grid), d) > 16777216.0) throw InputError("grid^dim exceeds 2^24 samples");
    Exponent lo, hi;
    exponent_range(f, g, lo, hi);
    for (int i = 0; i < d; ++i)
        if (hi[i] - lo[i] >= grid) throw InputError("grid smaller than the support of f and g");

    Kernel k;
    k.dim = d;
    k.box = box;
    k.source = "fft(" + std::to_string(grid) + ")";
    k.values = grid_kernel(f, g, grid, box, exec);

    double alias = 0.0;
    if (alias_check && std::pow(2.0 * grid, d) <= 16777216.0) {
        auto fine = grid_kernel(f, g, 2 * grid, box, exec);
        for (std::size_t i = 0; i < fine.size(); ++i) alias += std::abs(fine[i] - k.values[i]);
    }
    double extra = kInf;
    if (box >= 2) {
        ShellReport s = shell_sums(k, box);
        if (s.fitted_exponent == -kInf)
            extra = 0.0;
        else if (s.fitted_exponent < -1.0)
            extra = s.fitted_constant * std::pow(static_cast<double>(box), s.fitted_exponent + 1.0) /
                    (-s.fitted_exponent - 1.0);
    }
    k.tail_bound = alias + extra;
    return k;
}

ShellReport shell_sums(const Kernel& k, int n_max)
{
    if (n_max < 1 || n_max > k.box) throw InputError("shell range must lie in [1, box]");
    std::vector<double> S(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (std::size_t i = 0; i < k.values.size(); ++i) {
        Exponent n = k.point(i);
        std::int64_t N = 0;
        for (auto x : n) N += std::llabs(x);
        if (N >= 1 && N <= n_max) S[N] += std::abs(k.values[i]);
    }
    double mass = 0.0;
    for (double x : k.values) mass += std::abs(x);
    ShellReport r;
    for (int N = 1; N <= n_max; ++N) r.shells.emplace_back(N, S[N]);
    bool nondecreasing = false;
    fit(r.shells, mass, std::max(1, n_max / 2), n_max, r.fitted_exponent, r.fitted_constant, nondecreasing);
    if (r.fitted_exponent <= -1.1)
        r.verdict = "summable-likely";
    else if (r.fitted_exponent >= -1.0 && nondecreasing)
        r.verdict = "divergent-likely";
    else
        r.verdict = "undecided";
    return r;
}

mpq_class g3_convolution_exact(long m, long n)
{
    if (m < 3 || n < 0) throw InputError("g3 convolution formula needs m >= 3 and n >= 0");
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m + n), static_cast<unsigned long>(m));
    mpz_class a = m - n, s = m + n;
    mpz_class num = a * a * a - 3 * (mpz_class(m) * m - mpz_class(n) * n) + 2 * a;
    mpz_class den = (s - 2) * (s - 1) * s;
    mpq_class r(b * num, den * (mpz_class(1) << static_cast<mp_bitcnt_t>(m + n + 1)));
    r.canonicalize();
    return r;
}

MultiplierDiagnostic multiplier_diagnostic(const LaurentPoly& f, const LaurentPoly& g,
                                           const std::vector<UnitaryPoint>& points, int grid, int box,
                                           const ExecContext& exec, std::uint64_t seed)
{
    const long prec = 256;
    const double hs[3] = {1e-2, 1e-3, 1e-4};
    int d = f.dim();
    MultiplierDiagnostic out;
    std::mt19937_64 rng(seed);
    for (const auto& pt : points) {
        if (static_cast<int>(pt.coords.size()) != d) throw InputError("point dimension mismatch");
        std::vector<Complex> w;
        for (const auto& c : pt.coords) w.push_back(refine(c, prec).enclosure);
        std::vector<double> of, og;
        for (int ray = 0; ray < 8; ++ray) {
            std::vector<double> theta(d);
            double norm = 0.0;
            for (auto& t : theta) {
                t = 2.0 * std::ldexp(static_cast<double>(rng() >> 11), -53) - 1.0;
                norm += t * t;
            }
            norm = std::sqrt(norm);
            if (norm == 0.0) {
                theta[0] = 1.0;
                norm = 1.0;
            }
            double lf[3], lg[3], lh[3];
            bool fz = false, gz = false;
            for (int k = 0; k < 3; ++k) {
                std::vector<Complex> z;
                for (int i = 0; i < d; ++i)
                    z.push_back(w[i] * Complex::expi(RealBall(Real(hs[k] * theta[i] / norm, prec), 0.0), prec));
                double af = abs(eval(f, z)).mid.to_double(), ag = abs(eval(g, z)).mid.to_double();
                if (!(af > 1e-60)) fz = true;
                if (!(ag > 1e-60)) gz = true;
                lf[k] = std::log(std::max(af, 1e-300));
                lg[k] = std::log(std::max(ag, 1e-300));
                lh[k] = std::log(hs[k]);
            }
            auto slope = [&](const double* y) {
                double mx = (lh[0] + lh[1] + lh[2]) / 3, my = (y[0] + y[1] + y[2]) / 3, sxy = 0, sxx = 0;
                for (int k = 0; k < 3; ++k) {
                    sxy += (lh[k] - mx) * (y[k] - my);
                    sxx += (lh[k] - mx) * (lh[k] - mx);
                }
                return sxy / sxx;
            };
            of.push_back(fz ? kInf : slope(lf));
            og.push_back(gz ? kInf : slope(lg));
        }
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            double a = v[v.size() / 2 - 1], b = v[v.size() / 2];
            return (a == kInf || b == kInf) ? b : (a + b) / 2;
        };
        out.order_f.push_back(median(of));
        out.order_g.push_back(median(og));
    }

    Kernel k = fft_kernel(f, g, grid, box, exec, false);
    out.shells = shell_sums(k, box);
    if (out.shells.verdict == "summable-likely") {
        out.verdict = "likely-in";
    } else if (out.shells.verdict == "divergent-likely") {
        out.verdict = "likely-out";
    } else if (points.empty()) {
        out.verdict = "undecided";
    } else {
        double gap = kInf;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double diff = out.order_g[i] == kInf ? kInf : out.order_g[i] - out.order_f[i];
            gap = std::min(gap, diff);
        }
        out.verdict = gap >= d - 0.25 ? "likely-in" : "likely-out";
    }
    return out;
}

IntegerConfiguration IntegerConfiguration::zeros(const Exponent& lo, const Exponent& hi)
{
    if (lo.size() != hi.size() || lo.empty()) throw InputError("window corners must have the same dimension");
    IntegerConfiguration v;
    v.dim = static_cast<int>(lo.size());
    v.lo = lo;
    v.hi = hi;
    Rect r{lo, hi};
    if (r.empty()) throw InputError("empty window");
    v.values.assign(r.size(), 0);
    return v;
}

IntegerConfiguration IntegerConfiguration::random(const Exponent& lo, const Exponent& hi, long bound,
                                                  std::uint64_t seed)
{
    if (bound < 0) throw InputError("bound must be nonnegative");
    IntegerConfiguration v = zeros(lo, hi);
    std::mt19937_64 rng(seed);
    auto span = static_cast<std::uint64_t>(2 * bound + 1);
    for (auto& x : v.values) x = static_cast<long>(rng() % span) - bound;
    return v;
}

bool IntegerConfiguration::inside(const Exponent& n) const
{
    return Rect{lo, hi}.inside(n);
}

std::size_t IntegerConfiguration::index(const Exponent& n) const
{
    return Rect{lo, hi}.index(n);
}

Exponent IntegerConfiguration::point(std::size_t i) const
{
    return Rect{lo, hi}.point(i);
}

long IntegerConfiguration::at(const Exponent& n) const
{
    return inside(n) ? values[index(n)] : 0;
}

long IntegerConfiguration::max_abs() const
{
    long m = 0;
    for (long x : values) m = std::max(m, std::labs(x));
    return m;
}

std::size_t TorusConfiguration::index(const Exponent& n) const
{
    return Rect{lo, hi}.index(n);
}

double circle_distance(double a, double b)
{
    double x = std::fmod(std::abs(a - b), 1.0);
    return std::min(x, 1.0 - x);
}

TorusConfiguration symbolic_cover(const LaurentPoly& f, const LaurentPoly& g, const Kernel& k,
                                  const IntegerConfiguration& v, const ExecContext& exec)
{
    if (f.dim() != k.dim || g.dim() != k.dim || v.dim != k.dim) throw InputError("dimension mismatch");
    mpz_class K = one_norm(f);
    check_bound(v, K);
    Rect out = Rect{v.lo, v.hi}.shrunk(k.box);
    if (out.empty()) throw InputError("window too small for the kernel box");
    std::vector<double> lift;
    convolve(k, v, out, exec, lift);
    TorusConfiguration t = make_torus(out, std::move(lift));
    Rect interior = out.shrunk(f.support_radius());
    residuals(
        t, interior, f, g, [&](const Exponent& q) { return t.lift[out.index(q)]; },
        [&](const Exponent& q) { return v.at(q); });
    t.residual_bound = residual_bound(k, f, static_cast<double>(v.max_abs()));
    return t;
}

int tail_radius(const Kernel& k, double budget)
{
    std::vector<double> suffix(static_cast<std::size_t>(k.box) + 2, 0.0);
    for (std::size_t i = 0; i < k.values.size(); ++i) suffix[sup_norm(k.point(i))] += std::abs(k.values[i]);
    for (int r = k.box - 1; r >= 0; --r) suffix[r] += suffix[r + 1];
    for (int r = 0; r <= k.box + 1; ++r)
        if (suffix[r] < budget) return r;
    return -1;
}

PeriodicApprox periodic_approx(const LaurentPoly& f, const LaurentPoly& g, const Kernel& k,
                               const IntegerConfiguration& v, const Lattice& L, double eps, const ExecContext& exec)
{
    int d = k.dim;
    if (f.dim() != d || g.dim() != d || v.dim != d || L.dim() != d) throw InputError("dimension mismatch");
    if (!(eps > 0.0)) throw InputError("eps must be positive");
    mpz_class Kz = one_norm(f);
    check_bound(v, Kz);
    double K = to_double(Kz);

    auto dom = L.fundamental_domain();
    Rect Q{dom.front(), dom.front()};
    for (const auto& p : dom)
        for (int i = 0; i < d; ++i) {
            Q.lo[i] = std::min(Q.lo[i], p[i]);
            Q.hi[i] = std::max(Q.hi[i], p[i]);
        }
    if (Q.size() != dom.size()) throw InputError("fundamental domain is not a box");
    Rect need = Q.shrunk(-k.box);
    if (!Rect{v.lo, v.hi}.inside(need.lo) || !Rect{v.lo, v.hi}.inside(need.hi))
        throw InputError("configuration window does not cover the fundamental domain inflated by the kernel box");

    int R = 0;
    if (eps <= 0.5) {
        int r = tail_radius(k, eps / (2.0 * K) - k.tail_bound);
        if (r < 0 || k.tail_bound >= eps / (2.0 * K))
            throw RegimeError("kernel tail too heavy for eps at this box radius");
        R = std::max(0, r - 1);
    }
    Rect core = Q.shrunk(R);
    if (core.empty()) throw RegimeError("fundamental domain smaller than the tail radius " + std::to_string(R));

    IntegerConfiguration vp = IntegerConfiguration::zeros(need.lo, need.hi);
    for (std::size_t i = 0; i < vp.size(); ++i) vp.values[i] = v.at(L.reduce(vp.point(i)));

    std::vector<double> y, yp;
    convolve(k, v, Q, exec, y);
    convolve(k, vp, Q, exec, yp);

    PeriodicApprox out;
    out.radius = R;
    for (std::size_t i = 0; i < core.size(); ++i) {
        std::size_t qi = Q.index(core.point(i));
        out.achieved_eps = std::max(out.achieved_eps, circle_distance(y[qi], yp[qi]));
    }
    out.periodic = make_torus(Q, std::move(yp));
    auto& t = out.periodic;
    residuals(
        t, Q, f, g, [&](const Exponent& q) { return t.lift[Q.index(L.reduce(q))]; },
        [&](const Exponent& q) { return v.at(L.reduce(q)); });
    t.residual_bound = residual_bound(k, f, static_cast<double>(v.max_abs()));
    return out;
}

GlueResult specification_glue(const LaurentPoly& f, const LaurentPoly& g, const Kernel& k,
                              const std::vector<IntegerConfiguration>& patterns, double eps)
{
    int d = k.dim;
    if (f.dim() != d || g.dim() != d) throw InputError("dimension mismatch");
    if (patterns.empty()) throw InputError("no patterns");
    if (!(eps > 0.0)) throw InputError("eps must be positive");
    mpz_class Kz = one_norm(f);
    double K = to_double(Kz);
    for (const auto& v : patterns) {
        if (v.dim != d) throw InputError("dimension mismatch");
        check_bound(v, Kz);
    }

    GlueResult out;
    if (eps > 0.5) {
        out.p_used = 1;
    } else {
        int r = tail_radius(k, eps / K);
        if (r < 0) throw RegimeError("kernel tail too heavy for eps");
        out.p_used = std::max(1, r);
    }
    for (std::size_t a = 0; a < patterns.size(); ++a)
        for (std::size_t b = a + 1; b < patterns.size(); ++b) {
            std::int64_t sep = 0;
            for (int i = 0; i < d; ++i)
                sep = std::max({sep, patterns[b].lo[i] - patterns[a].hi[i], patterns[a].lo[i] - patterns[b].hi[i]});
            if (sep < out.p_used)
                throw RegimeError("windows " + std::to_string(a) + " and " + std::to_string(b) +
                                  " are closer than p(eps) = " + std::to_string(out.p_used));
        }

    // sparse support of each pattern
    std::vector<std::vector<std::pair<Exponent, long>>> support(patterns.size());
    for (std::size_t j = 0; j < patterns.size(); ++j)
        for (std::size_t i = 0; i < patterns[j].size(); ++i)
            if (patterns[j].values[i] != 0) support[j].emplace_back(patterns[j].point(i), patterns[j].values[i]);
    auto field = [&](const Exponent& n, std::size_t j) {
        double acc = 0.0;
        Exponent m(d);
        for (const auto& [q, val] : support[j]) {
            for (int i = 0; i < d; ++i) m[i] = n[i] - q[i];
            acc += k.at(m) * static_cast<double>(val);
        }
        return acc;
    };
    auto v_at = [&](const Exponent& q) {
        for (const auto& p : patterns)
            if (p.inside(q)) return p.at(q);
        return 0L;
    };
    double vmax = 0.0;
    for (const auto& p : patterns) vmax = std::max(vmax, static_cast<double>(p.max_abs()));

    for (std::size_t j = 0; j < patterns.size(); ++j) {
        Rect Q{patterns[j].lo, patterns[j].hi};
        std::vector<double> lift(Q.size());
        double err = 0.0;
        for (std::size_t i = 0; i < Q.size(); ++i) {
            Exponent n = Q.point(i);
            double own = field(n, j), total = 0.0;
            for (std::size_t o = 0; o < patterns.size(); ++o) total += o == j ? own : field(n, o);
            lift[i] = total;
            err = std::max(err, circle_distance(total, own));
        }
        TorusConfiguration t = make_torus(Q, std::move(lift));
        Rect interior = Q.shrunk(f.support_radius());
        residuals(
            t, interior, f, g, [&](const Exponent& q) { return t.lift[Q.index(q)]; }, v_at);
        t.residual_bound = residual_bound(k, f, vmax);
        out.windows.push_back(std::move(t));
        out.errors.push_back(err);
    }
    return out;
}

}  // namespace algdyn
