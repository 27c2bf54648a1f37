// Zassenhaus factorization over Z: Cantor-Zassenhaus modulo a small prime,
// multifactor Hensel lifting, exhaustive recombination.

#include <algorithm>
#include <cstdint>
#include <random>

#include "algdyn/errors.hpp"
#include "algdyn/intpoly.hpp"

namespace algdyn {

namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

struct Field {
    u64 p;
    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
    u64 pow(u64 a, u64 e) const
    {
        u64 r = 1;
        while (e > 0) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }
};

void trim(ModPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly reduce(const IntPoly& f, u64 p)
{
    ModPoly r(f.coeffs().size());
    mpz_class t;
    for (std::size_t i = 0; i < r.size(); ++i) {
        t = f.coeffs()[i] % static_cast<unsigned long>(p);
        if (t < 0) t += static_cast<unsigned long>(p);
        r[i] = t.get_ui();
    }
    trim(r);
    return r;
}

ModPoly mp_add(const Field& F, const ModPoly& a, const ModPoly& b)
{
    ModPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

ModPoly mp_sub(const Field& F, const ModPoly& a, const ModPoly& b)
{
    ModPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(r);
    return r;
}

ModPoly mp_mul(const Field& F, const ModPoly& a, const ModPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    trim(r);
    return r;
}

void mp_divrem(const Field& F, const ModPoly& a, const ModPoly& b, ModPoly& q, ModPoly& r)
{
    r = a;
    int db = deg(b);
    if (deg(a) < db) {
        q.clear();
        return;
    }
    q.assign(deg(a) - db + 1, 0);
    u64 li = F.inv(b.back());
    for (int i = deg(a); i >= db; --i) {
        u64 t = F.mul(r[i], li);
        q[i - db] = t;
        if (t == 0) continue;
        for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(t, b[j]));
    }
    r.resize(db);
    trim(r);
    trim(q);
}

ModPoly mp_mod(const Field& F, const ModPoly& a, const ModPoly& b)
{
    ModPoly q, r;
    mp_divrem(F, a, b, q, r);
    return r;
}

ModPoly mp_monic(const Field& F, ModPoly a)
{
    if (a.empty()) return a;
    u64 li = F.inv(a.back());
    for (auto& x : a) x = F.mul(x, li);
    return a;
}

ModPoly mp_gcd(const Field& F, ModPoly a, ModPoly b)
{
    while (!b.empty()) {
        ModPoly r = mp_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(F, a);
}

// Returns g = gcd(a, b) monic with s a + t b = g.
ModPoly mp_xgcd(const Field& F, const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t)
{
    ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        ModPoly q, r;
        mp_divrem(F, r0, r1, q, r);
        ModPoly s2 = mp_sub(F, s0, mp_mul(F, q, s1));
        ModPoly t2 = mp_sub(F, t0, mp_mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    u64 li = F.inv(r0.back());
    for (auto& x : s0) x = F.mul(x, li);
    for (auto& x : t0) x = F.mul(x, li);
    s = s0;
    t = t0;
    return mp_monic(F, r0);
}

ModPoly mp_powmod(const Field& F, ModPoly base, const mpz_class& e, const ModPoly& m)
{
    ModPoly r{1};
    base = mp_mod(F, base, m);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mp_mod(F, mp_mul(F, r, r), m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mp_mod(F, mp_mul(F, r, base), m);
    }
    return r;
}

ModPoly mp_deriv(const Field& F, const ModPoly& a)
{
    if (a.size() < 2) return {};
    ModPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
    trim(r);
    return r;
}

// Distinct-degree factorization of a monic square-free polynomial.
std::vector<std::pair<ModPoly, int>> ddf(const Field& F, ModPoly f)
{
    std::vector<std::pair<ModPoly, int>> out;
    ModPoly x{0, 1};
    ModPoly h = x;
    mpz_class p(static_cast<unsigned long>(F.p));
    for (int i = 1; 2 * i <= deg(f); ++i) {
        h = mp_powmod(F, h, p, f);
        ModPoly g = mp_gcd(F, mp_sub(F, h, x), f);
        if (deg(g) > 0) {
            out.emplace_back(g, i);
            ModPoly q, r;
            mp_divrem(F, f, g, q, r);
            f = q;
            h = mp_mod(F, h, f);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
}

void edf(const Field& F, const ModPoly& g, int k, std::mt19937_64& rng, std::vector<ModPoly>& out)
{
    if (deg(g) == k) {
        out.push_back(g);
        return;
    }
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), F.p, k);
    mpz_class e = (pk - 1) / 2;
    for (;;) {
        ModPoly a(deg(g));
        for (auto& c : a) c = rng() % F.p;
        trim(a);
        if (deg(a) < 1) continue;
        ModPoly b = mp_powmod(F, a, e, g);
        b = mp_sub(F, b, ModPoly{1});
        ModPoly d = mp_gcd(F, b, g);
        if (deg(d) > 0 && deg(d) < deg(g)) {
            ModPoly q, r;
            mp_divrem(F, g, d, q, r);
            edf(F, d, k, rng, out);
            edf(F, mp_monic(F, q), k, rng, out);
            return;
        }
    }
}

std::vector<ModPoly> factor_mod_p(const Field& F, const ModPoly& f)
{
    std::mt19937_64 rng(0x5eed + F.p);
    std::vector<ModPoly> out;
    for (auto& [g, k] : ddf(F, mp_monic(F, f))) edf(F, g, k, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

// Integer polynomials with coefficients reduced mod m into [0, m).
using ZPoly = std::vector<mpz_class>;

ZPoly to_z(const ModPoly& a)
{
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
    return r;
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

void z_mod(ZPoly& a, const mpz_class& m)
{
    for (auto& x : a) {
        x %= m;
        if (x < 0) x += m;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly z_to_mod(const ZPoly& a, u64 p)
{
    ModPoly r(a.size());
    mpz_class t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        t = a[i] % static_cast<unsigned long>(p);
        if (t < 0) t += static_cast<unsigned long>(p);
        r[i] = t.get_ui();
    }
    trim(r);
    return r;
}

// Lifts f = g0 * h0 (mod p), g0 monic, to f = g * h (mod p^k).
void hensel_two(const Field& F, const ZPoly& f, const ModPoly& g0, const ModPoly& h0, int k, ZPoly& g, ZPoly& h)
{
    ModPoly s, t;
    mp_xgcd(F, g0, h0, s, t);
    g = to_z(g0);
    h = to_z(h0);
    mpz_class m = static_cast<unsigned long>(F.p);
    for (int j = 1; j < k; ++j) {
        ZPoly gh = z_mul(g, h);
        ZPoly e(std::max(f.size(), gh.size()));
        for (std::size_t i = 0; i < e.size(); ++i) {
            mpz_class v = (i < f.size() ? f[i] : mpz_class(0)) - (i < gh.size() ? gh[i] : mpz_class(0));
            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
            e[i] = v;
        }
        ModPoly em = z_to_mod(e, F.p);
        ModPoly q, r;
        mp_divrem(F, mp_mul(F, t, em), g0, q, r);
        ModPoly u = mp_add(F, mp_mul(F, s, em), mp_mul(F, q, h0));
        ZPoly rz = to_z(r), uz = to_z(u);
        if (g.size() < rz.size()) g.resize(rz.size());
        for (std::size_t i = 0; i < rz.size(); ++i) g[i] += m * rz[i];
        if (h.size() < uz.size()) h.resize(uz.size());
        for (std::size_t i = 0; i < uz.size(); ++i) h[i] += m * uz[i];
        m *= static_cast<unsigned long>(F.p);
        z_mod(g, m);
        z_mod(h, m);
    }
}

// Lifts f = lc * prod fac_i (mod p), fac_i monic, to mod p^k.
std::vector<ZPoly> hensel_multi(const Field& F, const ZPoly& f, const std::vector<ModPoly>& fac, int k, const mpz_class& pk)
{
    if (fac.size() == 1) {
        // monic representative of f mod p^k
        ZPoly g = f;
        z_mod(g, pk);
        mpz_class li;
        mpz_invert(li.get_mpz_t(), g.back().get_mpz_t(), pk.get_mpz_t());
        for (auto& x : g) x *= li;
        z_mod(g, pk);
        return {g};
    }
    ModPoly fm = z_to_mod(f, F.p);
    u64 lc = fm.back();
    ModPoly rest{lc};
    for (std::size_t i = 1; i < fac.size(); ++i) rest = mp_mul(F, rest, fac[i]);
    ZPoly g, h;
    hensel_two(F, f, fac[0], rest, k, g, h);
    std::vector<ModPoly> others(fac.begin() + 1, fac.end());
    auto lifted = hensel_multi(F, h, others, k, pk);
    lifted.insert(lifted.begin(), g);
    return lifted;
}

IntPoly symmetric(ZPoly a, const mpz_class& m)
{
    mpz_class half = m / 2;
    for (auto& x : a) {
        x %= m;
        if (x < 0) x += m;
        if (x > half) x -= m;
    }
    return IntPoly(std::move(a));
}

bool next_combination(std::vector<int>& idx, int n)
{
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

const u64 kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                       83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
                       173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263};

}  // namespace

std::vector<IntPoly> factor_squarefree(const IntPoly& p, int degree_cap)
{
    IntPoly f = primitive_part(p);
    if (f.degree() < 1) return {};
    if (f.degree() > degree_cap) throw RegimeError("degree cap exceeded in factorization");
    if (f.degree() == 1) return {f};

    // choose a prime with few modular factors
    Field best{0};
    std::vector<ModPoly> best_fac;
    int good = 0;
    for (u64 p : kPrimes) {
        Field F{p};
        ModPoly fm = reduce(f, p);
        if (deg(fm) != f.degree()) continue;
        ModPoly g = mp_gcd(F, fm, mp_deriv(F, fm));
        if (deg(g) > 0) continue;
        auto fac = factor_mod_p(F, fm);
        if (best.p == 0 || fac.size() < best_fac.size()) {
            best = F;
            best_fac = fac;
        }
        if (best_fac.size() == 1 || ++good >= 6) break;
    }
    if (best.p == 0) throw RegimeError("no suitable prime for factorization");
    if (best_fac.size() == 1) return {f};

    // coefficient bound for factors of lc * f
    mpz_class norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    mpz_class nb = sqrt(norm2) + 1;
    mpz_class bound = 2 * abs(f.lead()) * (mpz_class(1) << f.degree()) * nb;
    int k = 1;
    mpz_class pk = static_cast<unsigned long>(best.p);
    while (pk <= bound) {
        pk *= static_cast<unsigned long>(best.p);
        ++k;
    }
    ZPoly fz(f.coeffs());
    auto lifted = hensel_multi(best, fz, best_fac, k, pk);

    std::vector<IntPoly> result;
    IntPoly rem = f;
    std::vector<ZPoly> pool = lifted;
    long tried = 0;
    for (int s = 1; 2 * s <= static_cast<int>(pool.size());) {
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        bool found = false;
        do {
            if (++tried > 2000000) throw RegimeError("factor recombination cap exceeded");
            ZPoly prod{mpz_class(rem.lead())};
            for (int i : idx) {
                prod = z_mul(prod, pool[i]);
                z_mod(prod, pk);
            }
            IntPoly cand = primitive_part(symmetric(prod, pk));
            if (cand.degree() < 1) continue;
            if (rem.coeffs()[0] != 0 && cand.coeffs()[0] != 0 &&
                !mpz_divisible_p(rem.coeffs()[0].get_mpz_t(), cand.coeffs()[0].get_mpz_t()))
                continue;
            auto q = divide_exact(rem, cand);
            if (!q) continue;
            result.push_back(cand);
            rem = *q;
            std::vector<ZPoly> next;
            for (int i = 0; i < static_cast<int>(pool.size()); ++i)
                if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(pool[i]);
            pool = std::move(next);
            found = true;
            break;
        } while (next_combination(idx, static_cast<int>(pool.size())));
        if (!found) ++s;
    }
    if (rem.degree() >= 1) result.push_back(primitive_part(rem));
    std::sort(result.begin(), result.end(), [](const IntPoly& a, const IntPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.coeffs() < b.coeffs();
    });
    return result;
}

Factorization factor(const IntPoly& p, int degree_cap)
{
    if (p.is_zero()) throw InputError("factorization of the zero polynomial");
    Factorization out;
    out.unit = content(p);
    if (p.lead() < 0) out.unit = -out.unit;
    for (auto& [q, e] : squarefree_decomposition(p))
        for (auto& g : factor_squarefree(q, degree_cap)) out.factors.emplace_back(g, e);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

}  // namespace algdyn
