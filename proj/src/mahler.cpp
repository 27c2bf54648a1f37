#include "algdyn/mahler.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "algdyn/errors.hpp"
#include "algdyn/intpoly.hpp"
#include "algdyn/periodic.hpp"

namespace algdyn {

namespace {

constexpr int kSobolBits = 32;
constexpr int kMaxSobolDim = 10;
constexpr int kReplicates = 16;
constexpr double kSingularCutoff = 1e-30;

struct SobolDir {
    int s;
    unsigned a;
    std::array<unsigned, 5> m;
};

// Joe-Kuo direction numbers for dimensions 2..10
constexpr SobolDir kSobol[] = {
    {1, 0, {1}},          {2, 1, {1, 3}},          {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},    {4, 1, {1, 1, 3, 3}},    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}}, {5, 4, {1, 1, 5, 5, 5}}, {5, 7, {1, 1, 7, 11, 19}},
};

std::vector<std::array<std::uint32_t, kSobolBits>> sobol_directions(int d)
{
    std::vector<std::array<std::uint32_t, kSobolBits>> v(d);
    for (int k = 0; k < kSobolBits; ++k) v[0][k] = std::uint32_t(1) << (kSobolBits - 1 - k);
    for (int j = 1; j < d; ++j) {
        const SobolDir& sd = kSobol[j - 1];
        auto& V = v[j];
        for (int k = 0; k < sd.s; ++k) V[k] = sd.m[k] << (kSobolBits - 1 - k);
        for (int k = sd.s; k < kSobolBits; ++k) {
            std::uint32_t x = V[k - sd.s] ^ (V[k - sd.s] >> sd.s);
            for (int i = 1; i < sd.s; ++i)
                if ((sd.a >> (sd.s - 1 - i)) & 1u) x ^= V[k - i];
            V[k] = x;
        }
    }
    return v;
}

RealBall from_double(double x, long prec)
{
    return RealBall(Real(x, prec), 0.0);
}

// log+ |z| as a ball
RealBall log_plus(const Complex& z, long prec)
{
    Real hi(prec + 16), lo(prec + 16), r(z.rad(), 53);
    mpfr_hypot(hi.get(), z.re().get(), z.im().get(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), r.get(), MPFR_RNDU);
    if (mpfr_cmp_si(hi.get(), 1) <= 0) return RealBall(Real(prec), 0.0);
    mpfr_hypot(lo.get(), z.re().get(), z.im().get(), MPFR_RNDD);
    mpfr_sub(lo.get(), lo.get(), r.get(), MPFR_RNDD);
    if (mpfr_cmp_si(lo.get(), 1) > 0) return log_abs(z);
    // straddles the circle: log+ lies in [0, log hi]
    Real top(prec);
    mpfr_log(top.get(), hi.get(), MPFR_RNDU);
    mpfr_div_2ui(top.get(), top.get(), 1, MPFR_RNDU);
    double rad = round_up(top.abs_up());
    return RealBall(std::move(top), rad);
}

void add_to(RealBall& acc, const RealBall& x)
{
    Real s(acc.prec());
    int t = mpfr_add(s.get(), acc.mid.get(), x.mid.get(), MPFR_RNDN);
    double r = acc.rad + x.rad;
    if (t != 0) r += s.abs_up() * pow2m(s.prec() - 1);
    acc = RealBall(std::move(s), round_up(r));
}

}  // namespace

std::string to_string(MahlerMethod m)
{
    switch (m) {
    case MahlerMethod::lattice: return "lattice";
    case MahlerMethod::qmc: return "qmc";
    case MahlerMethod::jensen: return "jensen";
    }
    return "";
}

MahlerEstimate mahler_lattice(const LaurentPoly& f, long N, long prec, const ExecContext& exec)
{
    if (f.is_zero()) throw InputError("zero polynomial");
    if (N <= 0) throw InputError("lattice parameter must be positive");
    PeriodicOptions opt;
    opt.precision = prec;
    opt.exec = exec;
    PeriodicCount pc = p_gamma(f, Lattice::diagonal(f.dim(), N), false, opt);
    MahlerEstimate e;
    e.value = std::move(pc.rate);
    e.method = MahlerMethod::lattice;
    e.n = static_cast<std::uint64_t>(N);
    return e;
}

MahlerEstimate mahler_qmc(const LaurentPoly& f, std::uint64_t samples, std::uint64_t seed, const ExecContext& exec)
{
    if (f.is_zero()) throw InputError("zero polynomial");
    const int d = f.dim();
    if (d > kMaxSobolDim) throw RegimeError("qmc supports at most 10 variables");
    if (samples < kReplicates) throw InputError("qmc needs at least 16 samples");
    const std::uint64_t per = samples / kReplicates;
    if (per >= (std::uint64_t(1) << kSobolBits)) throw InputError("too many qmc samples");
    const auto V = sobol_directions(d);

    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint32_t>> shifts(kReplicates, std::vector<std::uint32_t>(d));
    for (auto& s : shifts)
        for (auto& x : s) x = static_cast<std::uint32_t>(rng() >> 32);

    std::vector<std::pair<std::vector<int64_t>, double>> terms;
    for (const auto& [e, c] : f.terms()) terms.push_back({e, c.get_d()});

    std::vector<double> means(kReplicates);
    std::vector<std::uint64_t> skipped(kReplicates);
    parallel_for(exec, kReplicates, [&](std::size_t r) {
        std::vector<std::uint32_t> x(d, 0);
        std::vector<double> t(d);
        // Kahan summation keeps the mean independent of accumulated drift
        double sum = 0, comp = 0;
        std::uint64_t used = 0, skip = 0;
        for (std::uint64_t i = 0; i < per; ++i) {
            if (i > 0) {
                int c = __builtin_ctzll(i);
                for (int j = 0; j < d; ++j) x[j] ^= V[j][c];
            }
            for (int j = 0; j < d; ++j)
                t[j] = (static_cast<double>(x[j] ^ shifts[r][j]) + 0.5) * 0x1p-32;
            std::complex<double> v = 0;
            for (const auto& [e, c] : terms) {
                double ph = 0;
                for (int j = 0; j < d; ++j) ph += static_cast<double>(e[j]) * t[j];
                ph -= std::floor(ph);
                v += c * std::polar(1.0, 2 * M_PI * ph);
            }
            double a = std::abs(v);
            if (a < kSingularCutoff) {
                ++skip;
                continue;
            }
            double y = std::log(a) - comp;
            double s = sum + y;
            comp = (s - sum) - y;
            sum = s;
            ++used;
        }
        means[r] = used ? sum / static_cast<double>(used) : 0.0;
        skipped[r] = skip;
    });

    double mean = 0;
    std::uint64_t skip = 0;
    for (int r = 0; r < kReplicates; ++r) {
        mean += means[r];
        skip += skipped[r];
    }
    mean /= kReplicates;
    double var = 0;
    for (int r = 0; r < kReplicates; ++r) var += (means[r] - mean) * (means[r] - mean);
    var /= (kReplicates - 1);

    MahlerEstimate e;
    e.value = from_double(mean, kDefaultPrecision);
    e.method = MahlerMethod::qmc;
    e.n = per * kReplicates;
    e.err_est = std::sqrt(var / kReplicates);
    e.skipped = skip;
    e.skip_warning = static_cast<double>(skip) > 1e-3 * static_cast<double>(e.n);
    return e;
}

MahlerEstimate jensen_d1(const LaurentPoly& p, long prec)
{
    if (p.dim() != 1) throw InputError("jensen_d1 needs a one-variable polynomial");
    if (p.is_zero()) throw InputError("zero polynomial");
    std::int64_t lo = p.min_exponent()[0], hi = p.max_exponent()[0];
    std::vector<mpz_class> c(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [e, v] : p.terms()) c[static_cast<std::size_t>(e[0] - lo)] = v;
    IntPoly q(std::move(c));

    long wp = prec + 32;
    RealBall acc(wp);
    {
        Real l(wp), lead(mpz_class(abs(q.lead())), wp);
        mpfr_log(l.get(), lead.get(), MPFR_RNDN);
        acc = RealBall(std::move(l), pow2m(wp - 2));
    }
    for (const auto& [g, mult] : squarefree_decomposition(q)) {
        if (g.degree() < 1) continue;
        for (const auto& z : complex_roots(g, wp)) {
            RealBall lp = log_plus(z, wp);
            for (int k = 0; k < mult; ++k) add_to(acc, lp);
        }
    }
    MahlerEstimate e;
    Real v(prec);
    mpfr_set(v.get(), acc.mid.get(), MPFR_RNDN);
    e.value = RealBall(std::move(v), round_up(acc.rad + std::fabs(acc.mid.to_double()) * pow2m(prec - 1)));
    e.method = MahlerMethod::jensen;
    e.n = static_cast<std::uint64_t>(q.degree());
    e.err_est = 0.0;
    return e;
}

Entropy entropy(const LaurentPoly& f, long prec, const ExecContext& exec)
{
    Entropy out;
    if (f.is_zero()) {
        out.infinite = true;
        out.method = "zero";
        return out;
    }
    if (f.size() == 1) {
        // a single term: m = log|c|
        Real l(prec), c(mpz_class(abs(f.terms().begin()->second)), prec + 32);
        mpfr_log(l.get(), c.get(), MPFR_RNDN);
        out.value = RealBall(std::move(l), pow2m(prec - 2));
        out.method = "monomial";
        return out;
    }
    if (f.dim() == 1) {
        out.value = jensen_d1(f, prec).value;
        out.method = "jensen";
        return out;
    }
    // lattice sums at N and 2N with about 2^16 characters at the finer level;
    // the value is the finer sum, the spread between the two is the error estimate
    const int d = f.dim();
    long fine = static_cast<long>(std::floor(std::pow(65536.0, 1.0 / d) + 1e-9));
    fine = std::max(2L, fine - fine % 2);
    long n1 = fine / 2;
    double v1 = mahler_lattice(f, n1, prec, exec).value.mid.to_double();
    MahlerEstimate e2 = mahler_lattice(f, fine, prec, exec);
    double v2 = e2.value.mid.to_double();
    out.method = "lattice";
    out.value = RealBall(std::move(e2.value.mid), round_up(std::fabs(v2 - v1) + e2.value.rad));
    out.n_coarse = n1;
    out.n_fine = fine;
    return out;
}

}  // namespace algdyn
