#include "algdyn/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "algdyn/errors.hpp"
#include "algdyn/intpoly.hpp"

namespace algdyn {

namespace {

constexpr std::uint64_t kChunk = 4096;
constexpr std::int64_t kTableLimit = std::int64_t(1) << 22;

std::int64_t mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// |x| * 2^(1-prec) when the last operation was inexact.
double ulp_err(const Real& x, int tern)
{
    if (tern == 0 || x.is_zero()) return 0.0;
    return x.abs_up() * pow2m(x.prec() - 1);
}

// Remainder of g modulo the monic polynomial m, in place.
void rem_monic(std::vector<mpz_class>& g, const IntPoly& m)
{
    int dm = m.degree();
    const auto& mc = m.coeffs();
    for (int k = static_cast<int>(g.size()) - 1; k >= dm; --k) {
        if (g[k] == 0) continue;
        mpz_class q = g[k];
        for (int j = 0; j <= dm; ++j) g[k - dm + j] -= q * mc[j];
    }
    g.resize(std::min<std::size_t>(g.size(), static_cast<std::size_t>(dm)));
}

struct Term {
    Exponent m;
    mpz_class c;
};

std::vector<Term> terms_of(const LaurentPoly& f)
{
    std::vector<Term> t;
    for (const auto& [e, c] : f.terms()) t.push_back({e, c});
    return t;
}

// f at the character with angles a / E, at precision p, via direct root evaluation.
Complex eval_direct(const std::vector<Term>& terms, const std::vector<std::int64_t>& a, std::int64_t E, long p)
{
    Complex acc(p);
    for (const auto& t : terms) {
        std::int64_t r = 0;
        for (std::size_t j = 0; j < a.size(); ++j)
            r = mod(r + static_cast<std::int64_t>((static_cast<__int128>(a[j]) * mod(t.m[j], E)) % E), E);
        acc = acc + scale(Complex::unit_root(r, E, p), t.c);
    }
    return acc;
}

struct ChunkResult {
    Real sum;
    double rad = 0.0;
    std::vector<std::uint64_t> zeros;
    explicit ChunkResult(long wp) : sum(wp) {}
};

}  // namespace

bool is_zero_at_character(const LaurentPoly& f, const Character& w)
{
    if (f.dim() != static_cast<int>(w.angles.size())) throw InputError("dimension mismatch");
    if (f.is_zero()) return true;
    if (!w.order.fits_ulong_p() || w.order > mpz_class(1) << 26) throw RegimeError("character order too large");
    unsigned long N = w.order.get_ui();
    std::vector<mpz_class> g(N);
    for (const auto& [e, c] : f.terms()) {
        mpq_class ph = w.phase(e);  // in [0, 1)
        mpz_class k = ph.get_num() * (mpz_class(N) / ph.get_den());
        g[k.get_ui()] += c;
    }
    rem_monic(g, cyclotomic(N));
    return std::all_of(g.begin(), g.end(), [](const mpz_class& x) { return x == 0; });
}

SnfCount snf_oracle(const LaurentPoly& f, const Lattice& L, unsigned long cap)
{
    if (f.dim() != L.dim()) throw InputError("dimension mismatch");
    if (L.index() > cap) throw RegimeError("lattice index " + L.index().get_str() + " exceeds the exact oracle cap");
    auto dom = L.fundamental_domain();
    int d = L.dim();
    std::vector<long> radix(d);
    for (int i = 0; i < d; ++i) radix[i] = L.basis()(i, i).get_si();
    auto position = [&](const Exponent& x) {
        long p = 0;
        for (int i = 0; i < d; ++i) p = p * radix[i] + x[i];
        return static_cast<int>(p);
    };
    int n = static_cast<int>(dom.size());
    Matrix M(n, n);
    for (int p = 0; p < n; ++p)
        for (const auto& [e, c] : f.terms()) {
            Exponent x(d);
            for (int i = 0; i < d; ++i) x[i] = checked_add(dom[p][i], e[i]);
            M(p, position(L.reduce(x))) += c;
        }
    SmithForm s = smith_form(M, true);
    SnfCount out;
    int r = 0;
    for (const auto& x : s.diag)
        if (x != 0) ++r;
    out.torus_dim = n - r;
    if (r == n) {
        out.exact_count = 1;
        for (const auto& x : s.diag) out.exact_count *= x;
        return out;
    }
    // f acts on the saturated image lattice, whose basis is the first r columns
    // of U^-1; in that basis its matrix is the top r rows of U M U^-1
    Matrix MB(n, r);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (M(i, k) == 0) continue;
            for (int j = 0; j < r; ++j)
                if (s.Uinv(k, j) != 0) MB(i, j) += M(i, k) * s.Uinv(k, j);
        }
    Matrix C(r, r);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < n; ++k) {
            if (s.U(i, k) == 0) continue;
            for (int j = 0; j < r; ++j)
                if (MB(k, j) != 0) C(i, j) += s.U(i, k) * MB(k, j);
        }
    out.exact_count = abs(determinant(C));
    return out;
}

PeriodicCount p_gamma(const LaurentPoly& f, const Lattice& L, bool want_exact, const PeriodicOptions& opt)
{
    if (f.is_zero()) throw InputError("zero polynomial");
    if (f.dim() != L.dim()) throw InputError("dimension mismatch");
    const long prec = opt.precision;
    const long wp = prec + 64;
    const int d = L.dim();
    if (f.size() == 1) {
        // |c u^m| = |c| at every character
        PeriodicCount out;
        out.index = L.index();
        Real c(mpz_class(abs(f.terms().begin()->second)), wp), l(wp), lc(prec), rate(prec);
        mpfr_log(l.get(), c.get(), MPFR_RNDN);
        mpfr_set(rate.get(), l.get(), MPFR_RNDN);
        mpfr_mul_z(l.get(), l.get(), out.index.get_mpz_t(), MPFR_RNDN);
        mpfr_set(lc.get(), l.get(), MPFR_RNDN);
        double rl = lc.abs_up() * pow2m(prec - 2), rr = rate.abs_up() * pow2m(prec - 2);
        out.log_count = RealBall(std::move(lc), rl);
        out.rate = RealBall(std::move(rate), rr);
        if (want_exact) {
            SnfCount s = snf_oracle(f, L, opt.snf_cap);
            out.exact_count = s.exact_count;
        }
        return out;
    }
    CharacterSpace cs(L);
    const std::int64_t E = cs.exponent();
    const auto terms = terms_of(f);
    const std::size_t nt = terms.size();

    // per term and SNF coordinate: phase increment of the term
    std::vector<std::vector<std::int64_t>> dphase(d, std::vector<std::int64_t>(nt));
    for (int i = 0; i < d; ++i)
        for (std::size_t t = 0; t < nt; ++t) {
            std::int64_t r = 0;
            for (int j = 0; j < d; ++j)
                r = mod(r + static_cast<std::int64_t>(
                                (static_cast<__int128>(cs.steps()[i][j]) * mod(terms[t].m[j], E)) % E),
                        E);
            dphase[i][t] = r;
        }

    const bool use_table = E <= kTableLimit;
    std::vector<Complex> table;
    if (use_table) {
        table.reserve(static_cast<std::size_t>(E));
        for (std::int64_t r = 0; r < E; ++r) table.push_back(Complex::unit_root(r, E, prec));
    }

    const std::uint64_t total = cs.size();
    const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
    std::vector<ChunkResult> results;
    results.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) results.emplace_back(wp);

    parallel_for(opt.exec, chunks, [&](std::size_t c) {
        ChunkResult& res = results[c];
        std::uint64_t begin = c * kChunk, end = std::min(total, begin + kChunk);
        auto k = cs.coords(begin);
        auto a = cs.numerators(k);
        std::vector<std::int64_t> phase(nt);
        for (std::size_t t = 0; t < nt; ++t) {
            std::int64_t r = 0;
            for (int j = 0; j < d; ++j)
                r = mod(r + static_cast<std::int64_t>((static_cast<__int128>(a[j]) * mod(terms[t].m[j], E)) % E), E);
            phase[t] = r;
        }
        std::map<std::int64_t, mpz_class> grouped;
        Real re(prec), im(prec), tmp(prec);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            Complex val(prec);
            if (use_table) {
                grouped.clear();
                for (std::size_t t = 0; t < nt; ++t) grouped[phase[t]] += terms[t].c;
                mpfr_set_zero(re.get(), 1);
                mpfr_set_zero(im.get(), 1);
                double rad = 0.0;
                for (const auto& [r, cf] : grouped) {
                    if (cf == 0) continue;
                    const Complex& z = table[static_cast<std::size_t>(r)];
                    int t1 = mpfr_mul_z(tmp.get(), z.re().get(), cf.get_mpz_t(), MPFR_RNDN);
                    rad += ulp_err(tmp, t1);
                    t1 = mpfr_add(re.get(), re.get(), tmp.get(), MPFR_RNDN);
                    rad += ulp_err(re, t1);
                    int t2 = mpfr_mul_z(tmp.get(), z.im().get(), cf.get_mpz_t(), MPFR_RNDN);
                    rad += ulp_err(tmp, t2);
                    t2 = mpfr_add(im.get(), im.get(), tmp.get(), MPFR_RNDN);
                    rad += ulp_err(im, t2);
                    rad += z.rad() * std::fabs(cf.get_d()) * (1.0 + 0x1p-40);
                }
                val = Complex(re, im, round_up(rad));
            } else {
                val = eval_direct(terms, a, E, prec);
            }

            if (val.contains_zero()) {
                std::vector<mpq_class> ang(d);
                for (int j = 0; j < d; ++j) ang[j] = mpq_class(static_cast<long>(a[j]), static_cast<long>(E));
                if (is_zero_at_character(f, make_character(std::move(ang)))) {
                    res.zeros.push_back(idx);
                } else {
                    long p = 2 * prec;
                    do {
                        if (p > 64 * prec) throw PrecisionError("cannot separate f(omega) from zero");
                        val = eval_direct(terms, a, E, p);
                        p *= 2;
                    } while (val.contains_zero());
                }
            }
            if (!val.contains_zero()) {
                RealBall l = log_abs(val);
                int t = mpfr_add(res.sum.get(), res.sum.get(), l.mid.get(), MPFR_RNDN);
                res.rad += l.rad + ulp_err(res.sum, t);
            }

            // odometer step over SNF coordinates; a full wrap of coordinate i adds
            // d_i * step_i = 0 mod E, so every carry just adds the step
            for (int i = d - 1; i >= 0; --i) {
                for (int j = 0; j < d; ++j) a[j] = mod(a[j] + cs.steps()[i][j], E);
                for (std::size_t t = 0; t < nt; ++t) phase[t] = mod(phase[t] + dphase[i][t], E);
                if (++k[i] < cs.moduli()[i]) break;
                k[i] = 0;
            }
        }
    });

    PeriodicCount out;
    out.index = L.index();
    Real sum(wp);
    double rad = 0.0;
    for (auto& r : results) {
        int t = mpfr_add(sum.get(), sum.get(), r.sum.get(), MPFR_RNDN);
        rad += r.rad + ulp_err(sum, t);
        for (auto z : r.zeros) out.zero_chars.push_back(cs.at(z));
    }
    out.torus_dim = static_cast<std::int64_t>(out.zero_chars.size());
    Real lc(prec);
    int t = mpfr_set(lc.get(), sum.get(), MPFR_RNDN);
    rad += ulp_err(lc, t);
    out.log_count = RealBall(std::move(lc), round_up(rad));
    Real rate(prec);
    t = mpfr_div_z(rate.get(), out.log_count.mid.get(), out.index.get_mpz_t(), MPFR_RNDN);
    double rrad = out.log_count.rad / out.index.get_d() * (1.0 + 0x1p-40) + ulp_err(rate, t);
    out.rate = RealBall(std::move(rate), round_up(rrad));

    if (want_exact) {
        SnfCount s = snf_oracle(f, L, opt.snf_cap);
        out.exact_count = s.exact_count;
        if (s.torus_dim != out.torus_dim)
            throw CrossCheckError("torus dimension " + std::to_string(out.torus_dim) +
                                  " disagrees with the Smith-form count " + std::to_string(s.torus_dim));
        Real ex(s.exact_count, wp), lex(prec);
        mpfr_log(lex.get(), ex.get(), MPFR_RNDN);
        double diff = std::fabs(lex.to_double() - out.log_count.mid.to_double());
        double lcd = std::fabs(out.log_count.mid.to_double());
        if (diff > 1e-8 * std::max(1.0, lcd))
            throw CrossCheckError("log P = " + out.log_count.mid.to_sci(17) + " disagrees with the Smith-form count " +
                                  s.exact_count.get_str());
    }
    return out;
}

std::vector<GrowthRow> growth_table(const LaurentPoly& f, const std::vector<Lattice>& lattices,
                                    const PeriodicOptions& opt)
{
    std::vector<GrowthRow> rows;
    for (const auto& L : lattices) {
        PeriodicCount pc = p_gamma(f, L, false, opt);
        GrowthRow r;
        r.gamma_min = gamma_min(L);
        r.index = pc.index;
        r.rate = std::move(pc.rate);
        r.torus_dim = pc.torus_dim;
        rows.push_back(std::move(r));
    }
    return rows;
}

TorsionLattice torsion_lattice(int dim, const std::vector<Character>& points)
{
    TorsionLattice out;
    out.exponent = 1;
    for (const auto& p : points) {
        if (static_cast<int>(p.angles.size()) != dim) throw InputError("dimension mismatch");
        mpz_lcm(out.exponent.get_mpz_t(), out.exponent.get_mpz_t(), p.order.get_mpz_t());
    }
    const mpz_class& N = out.exponent;
    int k = static_cast<int>(points.size());
    if (k == 0) {
        out.lattice = Lattice::diagonal(dim, 1);
        return out;
    }
    // integer kernel of [A | N I] with A the angle numerators over N
    Matrix M(k, dim + k);
    for (int r = 0; r < k; ++r) {
        for (int j = 0; j < dim; ++j) {
            mpq_class x = points[r].angles[j] * N;
            M(r, j) = x.get_num();
        }
        M(r, dim + r) = N;
    }
    SmithForm s = smith_form(M, true);
    int rank = 0;
    for (const auto& x : s.diag)
        if (x != 0) ++rank;
    std::vector<Exponent> gens;
    for (int c = rank; c < dim + k; ++c) {
        Exponent g(dim);
        for (int j = 0; j < dim; ++j) {
            if (!s.V(j, c).fits_slong_p()) throw RegimeError("torsion lattice entries too large");
            g[j] = s.V(j, c).get_si();
        }
        gens.push_back(std::move(g));
    }
    out.lattice = Lattice::from_generators(dim, gens);
    return out;
}

}  // namespace algdyn
