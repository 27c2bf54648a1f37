#include "algdyn/bipoly.hpp"

#include <algorithm>

#include "algdyn/errors.hpp"
#include "algdyn/lattice.hpp"

namespace algdyn {

BiPoly::BiPoly(std::vector<IntPoly> by_y) : c_(std::move(by_y))
{
    normalize();
}

void BiPoly::normalize()
{
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int BiPoly::deg_x() const
{
    int d = -1;
    for (const auto& p : c_) d = std::max(d, p.degree());
    return d;
}

const IntPoly& BiPoly::coeff_y(int j) const
{
    static const IntPoly zero;
    return j >= 0 && j <= deg_y() ? c_[j] : zero;
}

IntPoly BiPoly::eval_x(const mpz_class& a) const
{
    std::vector<mpz_class> out;
    out.reserve(c_.size());
    for (const auto& p : c_) out.push_back(eval(p, a));
    return IntPoly(std::move(out));
}

BiPoly BiPoly::swapped() const
{
    int dx = deg_x();
    std::vector<std::vector<mpz_class>> t(static_cast<std::size_t>(dx + 1),
                                          std::vector<mpz_class>(c_.size()));
    for (std::size_t j = 0; j < c_.size(); ++j)
        for (int i = 0; i <= c_[j].degree(); ++i) t[i][j] = c_[j].coeffs()[i];
    std::vector<IntPoly> by;
    for (auto& row : t) by.emplace_back(std::move(row));
    return BiPoly(std::move(by));
}

BiPoly operator+(const BiPoly& a, const BiPoly& b)
{
    std::vector<IntPoly> c(std::max(a.by_y().size(), b.by_y().size()));
    for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = a.coeff_y(static_cast<int>(j)) + b.coeff_y(static_cast<int>(j));
    return BiPoly(std::move(c));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b)
{
    std::vector<IntPoly> c(std::max(a.by_y().size(), b.by_y().size()));
    for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = a.coeff_y(static_cast<int>(j)) - b.coeff_y(static_cast<int>(j));
    return BiPoly(std::move(c));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b)
{
    if (a.is_zero() || b.is_zero()) return BiPoly();
    std::vector<IntPoly> c(a.by_y().size() + b.by_y().size() - 1);
    for (std::size_t i = 0; i < a.by_y().size(); ++i)
        for (std::size_t j = 0; j < b.by_y().size(); ++j) c[i + j] = c[i + j] + a.by_y()[i] * b.by_y()[j];
    return BiPoly(std::move(c));
}

IntPoly content_y(const BiPoly& p)
{
    IntPoly g;
    for (const auto& c : p.by_y()) g = g.is_zero() ? primitive_part(c) : gcd(g, c);
    if (!g.is_zero() && g.lead() < 0) g = -g;
    return g;
}

mpz_class sylvester_resultant(const std::vector<mpz_class>& p, const std::vector<mpz_class>& q)
{
    int m = static_cast<int>(p.size()) - 1, n = static_cast<int>(q.size()) - 1;
    if (m < 0 || n < 0) return 0;
    int s = m + n;
    if (s == 0) return 1;
    Matrix S(s, s);
    // rows hold coefficients from the leading one down
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S(r, r + k) = p[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S(n + r, r + k) = q[n - k];
    return determinant(S);
}

IntPoly resultant_y(const BiPoly& p, const BiPoly& q)
{
    int m = p.deg_y(), n = q.deg_y();
    if (m < 0 || n < 0) return IntPoly();
    if (m == 0 && n == 0) return IntPoly::constant(1);
    // degree bound in x: n rows of p, m rows of q
    int D = n * std::max(0, p.deg_x()) + m * std::max(0, q.deg_x());
    std::vector<mpq_class> xs, ys;
    auto formal = [](const BiPoly& b, const mpz_class& x) {
        std::vector<mpz_class> v(static_cast<std::size_t>(b.deg_y() + 1));
        for (int j = 0; j <= b.deg_y(); ++j) v[j] = eval(b.coeff_y(j), x);
        return v;
    };
    for (int k = 0; k <= D; ++k) {
        // points 0, 1, -1, 2, -2, ... keep the values small
        mpz_class x = (k % 2) ? mpz_class((k + 1) / 2) : mpz_class(-(k / 2));
        xs.emplace_back(x);
        ys.emplace_back(sylvester_resultant(formal(p, x), formal(q, x)));
    }
    // Newton divided differences
    std::vector<mpq_class> a = ys;
    for (int j = 1; j <= D; ++j)
        for (int i = D; i >= j; --i) a[i] = (a[i] - a[i - 1]) / (xs[i] - xs[i - j]);
    std::vector<mpq_class> c(1, a[D]);
    for (int i = D - 1; i >= 0; --i) {
        // c = c * (x - xs[i]) + a[i]
        std::vector<mpq_class> nc(c.size() + 1);
        for (std::size_t k = 0; k < c.size(); ++k) {
            nc[k + 1] += c[k];
            nc[k] -= c[k] * xs[i];
        }
        nc[0] += a[i];
        c = std::move(nc);
    }
    std::vector<mpz_class> out;
    for (auto& v : c) {
        v.canonicalize();
        if (v.get_den() != 1) throw PrecisionError("resultant interpolation is not integral");
        out.push_back(v.get_num());
    }
    return IntPoly(std::move(out));
}

Complex eval(const BiPoly& p, const Complex& x, const Complex& y)
{
    long prec = std::max(x.prec(), y.prec());
    Complex acc(prec);
    for (int j = p.deg_y(); j >= 0; --j) acc = acc * y + eval(p.coeff_y(j), x);
    return acc;
}

}  // namespace algdyn
