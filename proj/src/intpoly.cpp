#include "algdyn/intpoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "algdyn/errors.hpp"

namespace algdyn {

IntPoly::IntPoly(std::vector<mpz_class> c) : c_(std::move(c)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> c)
{
    for (long x : c) c_.emplace_back(x);
    normalize();
}

IntPoly IntPoly::constant(const mpz_class& c) { return IntPoly(std::vector<mpz_class>{c}); }

IntPoly IntPoly::monomial(int deg, const mpz_class& c)
{
    std::vector<mpz_class> v(deg + 1);
    v[deg] = c;
    return IntPoly(std::move(v));
}

void IntPoly::normalize()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::operator-() const
{
    IntPoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

std::string IntPoly::to_string(const std::string& var) const
{
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& a = c_[i];
        if (a == 0) continue;
        mpz_class m = abs(a);
        if (out.empty()) {
            if (a < 0) out += "-";
        } else {
            out += a < 0 ? " - " : " + ";
        }
        if (i == 0) {
            out += m.get_str();
            continue;
        }
        if (m != 1) out += m.get_str() + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b)
{
    std::vector<mpz_class> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<mpz_class> c(a.coeffs().size() + b.coeffs().size() - 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
    return IntPoly(std::move(c));
}

IntPoly operator*(const mpz_class& s, const IntPoly& a)
{
    std::vector<mpz_class> c(a.coeffs());
    for (auto& x : c) x *= s;
    return IntPoly(std::move(c));
}

IntPoly pow(const IntPoly& a, unsigned k)
{
    IntPoly r = IntPoly::constant(1);
    IntPoly b = a;
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k > 0) b = b * b;
    }
    return r;
}

IntPoly derivative(const IntPoly& p)
{
    if (p.degree() < 1) return IntPoly();
    std::vector<mpz_class> c(p.degree());
    for (int i = 1; i <= p.degree(); ++i) c[i - 1] = p.coeffs()[i] * i;
    return IntPoly(std::move(c));
}

mpz_class content(const IntPoly& p)
{
    mpz_class g = 0;
    for (const auto& x : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IntPoly primitive_part(const IntPoly& p)
{
    if (p.is_zero()) return p;
    mpz_class g = content(p);
    if (p.lead() < 0) g = -g;
    std::vector<mpz_class> c(p.coeffs());
    for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
}

IntPoly reversed(const IntPoly& p)
{
    std::vector<mpz_class> c(p.coeffs().rbegin(), p.coeffs().rend());
    return IntPoly(std::move(c));
}

IntPoly negated_arg(const IntPoly& p)
{
    std::vector<mpz_class> c(p.coeffs());
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return IntPoly(std::move(c));
}

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b)
{
    if (b.is_zero()) throw InputError("polynomial division by zero");
    if (a.is_zero()) return IntPoly();
    int db = b.degree();
    if (a.degree() < db) return std::nullopt;
    std::vector<mpz_class> r(a.coeffs());
    std::vector<mpz_class> q(a.degree() - db + 1);
    const mpz_class& lb = b.lead();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        mpz_class t = r[i] / lb;
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
    }
    for (int i = 0; i < db; ++i)
        if (r[i] != 0) return std::nullopt;
    return IntPoly(std::move(q));
}

IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b)
{
    if (b.is_zero()) throw InputError("polynomial division by zero");
    if (a.degree() < b.degree()) return a;
    int db = b.degree();
    std::vector<mpz_class> r(a.coeffs());
    const mpz_class& lb = b.lead();
    for (int i = a.degree(); i >= db; --i) {
        mpz_class t = r[i];
        for (auto& x : r) x *= lb;
        if (t != 0)
            for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
        r.resize(i);
    }
    return IntPoly(std::move(r));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b)
{
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    IntPoly x = primitive_part(a), y = primitive_part(b);
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = pseudo_rem(x, y);
        x = std::move(y);
        y = primitive_part(r);
    }
    return primitive_part(x);
}

namespace {

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b)
{
    auto q = divide_exact(a, b);
    if (!q) throw std::logic_error("expected exact polynomial division");
    return *q;
}

}  // namespace

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p)
{
    std::vector<std::pair<IntPoly, int>> out;
    if (p.degree() < 1) return out;
    IntPoly f = primitive_part(p);
    IntPoly fp = derivative(f);
    IntPoly a = gcd(f, fp);
    IntPoly b = exact_quotient(f, a);
    IntPoly c = exact_quotient(fp, a);
    IntPoly d = c - derivative(b);
    for (int i = 1; b.degree() >= 1; ++i) {
        IntPoly g = gcd(b, d);
        if (g.degree() >= 1) out.emplace_back(primitive_part(g), i);
        IntPoly nb = exact_quotient(b, g);
        c = exact_quotient(d, g);
        b = nb;
        d = c - derivative(b);
    }
    return out;
}

IntPoly squarefree_part(const IntPoly& p)
{
    if (p.degree() < 1) return IntPoly::constant(1);
    IntPoly f = primitive_part(p);
    return primitive_part(exact_quotient(f, gcd(f, derivative(f))));
}

mpz_class eval(const IntPoly& p, const mpz_class& x)
{
    mpz_class acc = 0;
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeffs()[i];
    return acc;
}

mpq_class eval(const IntPoly& p, const mpq_class& x)
{
    mpq_class acc = 0;
    for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeffs()[i];
    return acc;
}

int sign_at(const IntPoly& p, const mpq_class& x)
{
    // Homogenized Horner: den^deg * p(num/den) stays integral.
    int n = p.degree();
    if (n < 0) return 0;
    const mpz_class& num = x.get_num();
    const mpz_class& den = x.get_den();
    mpz_class acc = p.coeffs()[n];
    mpz_class dpow = 1;
    for (int i = n - 1; i >= 0; --i) {
        dpow *= den;
        acc = acc * num + p.coeffs()[i] * dpow;
    }
    return sgn(acc);
}

Complex eval(const IntPoly& p, const Complex& z)
{
    Complex acc(z.prec());
    for (int i = p.degree(); i >= 0; --i) acc = acc * z + Complex::exact(p.coeffs()[i], 0, z.prec());
    return acc;
}

bool is_self_reciprocal(const IntPoly& p)
{
    IntPoly r = reversed(p);
    return r == p || r == -p;
}

unsigned long euler_phi(unsigned long n)
{
    unsigned long result = n;
    for (unsigned long q = 2; q * q <= n; ++q) {
        if (n % q != 0) continue;
        while (n % q == 0) n /= q;
        result -= result / q;
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

int moebius(unsigned long n)
{
    int m = 1;
    for (unsigned long q = 2; q * q <= n; ++q) {
        if (n % q != 0) continue;
        n /= q;
        if (n % q == 0) return 0;
        m = -m;
    }
    if (n > 1) m = -m;
    return m;
}

// Multiply / divide by t^d - 1 in place.
void mul_binomial(std::vector<mpz_class>& c, unsigned long d)
{
    std::size_t n = c.size();
    c.resize(n + d);
    for (std::size_t i = n + d; i-- > 0;) {
        mpz_class hi = i >= d ? c[i - d] : mpz_class(0);
        c[i] = hi - c[i];
    }
}

void div_binomial(std::vector<mpz_class>& c, unsigned long d)
{
    // q = c / (t^d - 1), exact: q_i = -(c_i) + q_{i-d}... solved from the top.
    std::size_t n = c.size();
    std::vector<mpz_class> q(n - d);
    std::vector<mpz_class> r(c);
    for (std::size_t i = n; i-- > d;) {
        q[i - d] = r[i];
        r[i - d] += r[i];
        r[i] = 0;
    }
    for (std::size_t i = 0; i < d; ++i)
        if (r[i] != 0) throw std::logic_error("inexact cyclotomic division");
    c = std::move(q);
}

std::mutex cyclo_mutex;
std::map<unsigned long, IntPoly> cyclo_cache;

}  // namespace

const IntPoly& cyclotomic(unsigned long n)
{
    if (n == 0) throw InputError("cyclotomic index must be positive");
    {
        std::lock_guard<std::mutex> lock(cyclo_mutex);
        auto it = cyclo_cache.find(n);
        if (it != cyclo_cache.end()) return it->second;
    }
    // Phi_n = prod_{d | n} (t^d - 1)^mu(n/d): multiply the positive factors,
    // then divide exactly by the negative ones.
    std::vector<unsigned long> divs;
    for (unsigned long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            divs.push_back(d);
            if (d * d != n) divs.push_back(n / d);
        }
    std::sort(divs.begin(), divs.end());
    std::vector<mpz_class> c{mpz_class(1)};
    for (auto d : divs)
        if (moebius(n / d) == 1) mul_binomial(c, d);
    for (auto d : divs)
        if (moebius(n / d) == -1) div_binomial(c, d);
    IntPoly phi(std::move(c));
    if (phi.lead() < 0) phi = -phi;
    std::lock_guard<std::mutex> lock(cyclo_mutex);
    return cyclo_cache.emplace(n, std::move(phi)).first->second;
}

unsigned long cyclotomic_search_bound(int deg)
{
    // phi(n) >= sqrt(n / 2), so phi(n) = deg forces n <= 2 deg^2.
    unsigned long k = static_cast<unsigned long>(std::max(deg, 1));
    return std::max<unsigned long>(2 * k * k, 6);
}

std::optional<unsigned long> cyclotomic_index(const IntPoly& p, unsigned long cap)
{
    if (p.degree() < 1 || p.lead() != 1) return std::nullopt;
    if (abs(p.coeffs()[0]) != 1) return std::nullopt;
    unsigned long bound = std::min(cap, cyclotomic_search_bound(p.degree()));
    for (unsigned long n = 1; n <= bound; ++n) {
        if (euler_phi(n) != static_cast<unsigned long>(p.degree())) continue;
        if (cyclotomic(n) == p) return n;
    }
    return std::nullopt;
}

std::vector<IntPoly> sturm_sequence(const IntPoly& p)
{
    std::vector<IntPoly> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    IntPoly d = derivative(p);
    if (d.is_zero()) return seq;
    seq.push_back(d);
    for (;;) {
        const IntPoly& a = seq[seq.size() - 2];
        const IntPoly& b = seq.back();
        IntPoly r = pseudo_rem(a, b);
        if (r.is_zero()) break;
        // pseudo_rem multiplies by lc(b)^(delta+1); undo its sign, then negate.
        int delta = a.degree() - b.degree();
        bool flip = b.lead() < 0 && ((delta + 1) % 2 != 0);
        mpz_class g = content(r);
        std::vector<mpz_class> c(r.coeffs());
        for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        IntPoly rr(std::move(c));
        seq.push_back(flip ? rr : -rr);
    }
    return seq;
}

namespace {

int variations(const std::vector<int>& signs)
{
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int variations_at(const std::vector<IntPoly>& sturm, const mpq_class& x)
{
    std::vector<int> s;
    s.reserve(sturm.size());
    for (const auto& q : sturm) s.push_back(sign_at(q, x));
    return variations(s);
}

int variations_at_infinity(const std::vector<IntPoly>& sturm, bool positive)
{
    std::vector<int> s;
    for (const auto& q : sturm) {
        int sg = sgn(q.lead());
        if (!positive && q.degree() % 2 != 0) sg = -sg;
        s.push_back(sg);
    }
    return variations(s);
}

}  // namespace

int count_real_roots(const std::vector<IntPoly>& sturm, const mpq_class& a, const mpq_class& b)
{
    return variations_at(sturm, a) - variations_at(sturm, b);
}

int count_real_roots(const IntPoly& p)
{
    IntPoly q = squarefree_part(p);
    if (q.degree() < 1) return 0;
    auto s = sturm_sequence(q);
    return variations_at_infinity(s, false) - variations_at_infinity(s, true);
}

mpz_class root_bound(const IntPoly& p)
{
    mpz_class m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, mpz_class(abs(p.coeffs()[i])));
    mpz_class l = abs(p.lead());
    return 1 + (m + l - 1) / l;
}

namespace {

RealRoot make_root(const IntPoly& q, const std::vector<IntPoly>& sturm, mpq_class lo, mpq_class hi)
{
    RealRoot r;
    r.poly = q;
    if (sign_at(q, hi) == 0) {
        r.lo = r.hi = hi;
        r.exact = true;
        return r;
    }
    if (sign_at(q, lo) == 0) {
        mpq_class step = (hi - lo) / 2;
        for (;;) {
            mpq_class cand = lo + step;
            if (sign_at(q, cand) != 0 && count_real_roots(sturm, cand, hi) == 1) {
                lo = cand;
                break;
            }
            step /= 2;
        }
    }
    r.lo = lo;
    r.hi = hi;
    return r;
}

std::vector<RealRoot> isolate(const IntPoly& q, mpq_class lo, mpq_class hi)
{
    // roots in (lo, hi]
    std::vector<RealRoot> out;
    auto sturm = sturm_sequence(q);
    struct Iv {
        mpq_class lo, hi;
        int count;
    };
    std::vector<Iv> stack;
    int total = count_real_roots(sturm, lo, hi);
    if (total > 0) stack.push_back({lo, hi, total});
    while (!stack.empty()) {
        Iv iv = stack.back();
        stack.pop_back();
        if (iv.count == 1) {
            out.push_back(make_root(q, sturm, iv.lo, iv.hi));
            continue;
        }
        mpq_class mid = (iv.lo + iv.hi) / 2;
        int c1 = count_real_roots(sturm, iv.lo, mid);
        if (iv.count - c1 > 0) stack.push_back({mid, iv.hi, iv.count - c1});
        if (c1 > 0) stack.push_back({iv.lo, mid, c1});
    }
    std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace

std::vector<RealRoot> real_roots(const IntPoly& p)
{
    if (p.is_zero()) throw InputError("real roots of the zero polynomial");
    IntPoly q = squarefree_part(p);
    if (q.degree() < 1) return {};
    mpq_class b(root_bound(q));
    return isolate(q, -b, b);
}

std::vector<RealRoot> real_roots_in(const IntPoly& p, const mpq_class& a, const mpq_class& b)
{
    if (p.is_zero()) throw InputError("real roots of the zero polynomial");
    IntPoly q = squarefree_part(p);
    std::vector<RealRoot> out;
    if (q.degree() < 1) return out;
    if (sign_at(q, a) == 0) {
        RealRoot r;
        r.poly = q;
        r.lo = r.hi = a;
        r.exact = true;
        out.push_back(r);
    }
    for (auto& r : isolate(q, a, b)) out.push_back(std::move(r));
    return out;
}

void refine(RealRoot& r, long bits)
{
    if (r.exact) return;
    mpq_class width;
    mpz_class one = 1;
    mpq_class eps(one, mpz_class(1) << bits);
    int slo = sign_at(r.poly, r.lo);
    while (r.hi - r.lo >= eps) {
        mpq_class mid = (r.lo + r.hi) / 2;
        int s = sign_at(r.poly, mid);
        if (s == 0) {
            r.lo = r.hi = mid;
            r.exact = true;
            return;
        }
        if (s == slo) {
            r.lo = mid;
        } else {
            r.hi = mid;
        }
    }
}

RealBall to_ball(RealRoot r, long prec)
{
    if (r.exact) {
        Real m(r.lo, prec);
        double err = m.abs_up() * pow2m(prec - 1);
        return RealBall(std::move(m), round_up(err));
    }
    refine(r, prec + 8);
    if (r.exact) return to_ball(r, prec);
    mpq_class mid = (r.lo + r.hi) / 2;
    Real m(mid, prec);
    double half = mpq_class((r.hi - r.lo) / 2).get_d();
    double err = half * (1.0 + 0x1p-40) + m.abs_up() * pow2m(prec - 1);
    return RealBall(std::move(m), round_up(err));
}

}  // namespace algdyn
