// Simultaneous root finding (Aberth-Ehrlich) with a posteriori inclusion discs.

#include <algorithm>
#include <cmath>

#include "algdyn/errors.hpp"
#include "algdyn/intpoly.hpp"

namespace algdyn {

namespace {

Complex center(const Complex& z)
{
    Complex c(z);
    c.set_rad(0.0);
    return c;
}

// p(z) and p'(z) by Horner, radii ignored.
void horner2(const IntPoly& p, const Complex& z, Complex& v, Complex& dv)
{
    long prec = z.prec();
    v = Complex(prec);
    dv = Complex(prec);
    for (int i = p.degree(); i >= 0; --i) {
        dv = center(dv * z + v);
        v = center(v * z + Complex::exact(p.coeffs()[i], 0, prec));
    }
}

bool aberth(const IntPoly& p, long wp, std::vector<Complex>& z)
{
    int n = p.degree();
    double an = std::fabs(p.lead().get_d());
    double a0 = std::fabs(p.coeffs()[0].get_d());
    double r0 = a0 > 0 ? std::pow(a0 / an, 1.0 / n) : 1.0;
    if (!(r0 > 0) || !std::isfinite(r0)) r0 = 1.0;
    z.clear();
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * k / n + 0.4;
        z.push_back(Complex::from_double(r0 * std::cos(th), r0 * std::sin(th), wp));
        z.back().set_rad(0.0);
    }
    std::vector<bool> done(n, false);
    Complex v(wp), dv(wp);
    for (int iter = 0; iter < 4000; ++iter) {
        bool all = true;
        for (int j = 0; j < n; ++j) {
            if (done[j]) continue;
            horner2(p, z[j], v, dv);
            if (v.re().is_zero() && v.im().is_zero()) {
                done[j] = true;
                continue;
            }
            Complex ratio = center(v / dv);
            Complex sum(wp);
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                Complex diff = center(z[j] - z[k]);
                if (diff.re().is_zero() && diff.im().is_zero()) continue;
                sum = center(sum + inverse(diff));
            }
            Complex denom = center(Complex::exact(1, 0, wp) - ratio * sum);
            Complex w = (denom.re().is_zero() && denom.im().is_zero()) ? ratio : center(ratio / denom);
            z[j] = center(z[j] - w);
            double wa = w.mid_abs_upper();
            double za = std::max(1.0, z[j].mid_abs_upper());
            if (wa <= za * pow2m(wp - 8)) {
                done[j] = true;
            } else {
                all = false;
            }
        }
        if (all) return true;
    }
    return false;
}

bool disjoint(const std::vector<Complex>& r)
{
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (overlaps(r[i], r[j])) return false;
    return true;
}

}  // namespace

std::vector<Complex> complex_roots(const IntPoly& p, long prec)
{
    int n = p.degree();
    if (n < 1) return {};
    if (p.coeffs()[0] == 0 && n >= 1) {
        // split off the root at 0
        std::vector<mpz_class> c(p.coeffs().begin() + 1, p.coeffs().end());
        auto rest = complex_roots(IntPoly(std::move(c)), prec);
        rest.insert(rest.begin(), Complex(prec));
        return rest;
    }
    if (n == 1) {
        mpq_class r(-p.coeffs()[0], p.coeffs()[1]);
        r.canonicalize();
        return {Complex::from_rational(r, 0, prec)};
    }
    for (long wp = prec + 32; wp <= 16 * prec + 256; wp *= 2) {
        std::vector<Complex> z;
        if (!aberth(p, wp, z)) continue;
        std::vector<Complex> out;
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            Complex val = eval(p, z[j]);
            Complex den = Complex::exact(p.lead(), 0, wp);
            for (int k = 0; k < n; ++k)
                if (k != j) den = den * (z[j] - z[k]);
            double lo = den.abs_lower();
            if (lo <= 0.0) {
                ok = false;
                break;
            }
            double r = round_up(n * val.abs_upper() / lo);
            Complex c = z[j];
            c.set_rad(r);
            out.push_back(c);
        }
        if (!ok || !disjoint(out)) continue;
        std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
            int c = mpfr_cmp(a.re().get(), b.re().get());
            if (c != 0) return c < 0;
            return mpfr_cmp(a.im().get(), b.im().get()) < 0;
        });
        return out;
    }
    throw PrecisionError("root isolation did not converge");
}

}  // namespace algdyn
