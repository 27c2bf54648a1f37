#include "algdyn/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "algdyn/errors.hpp"

namespace algdyn {

double round_up(double x)
{
    if (x <= 0.0) return 0.0;
    return std::nextafter(x * (1.0 + 0x1p-48), std::numeric_limits<double>::infinity());
}

double pow2m(long e) { return std::ldexp(1.0, static_cast<int>(-e)); }

Real::Real(long prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

Real::Real(double x, long prec)
{
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
}

Real::Real(const mpz_class& x, long prec)
{
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& x, long prec)
{
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o)
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o)
{
    if (this != &o) {
        if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

double Real::abs_up() const
{
    return sign() >= 0 ? mpfr_get_d(v_, MPFR_RNDU) : -mpfr_get_d(v_, MPFR_RNDD);
}

double Real::abs_down() const
{
    return sign() >= 0 ? mpfr_get_d(v_, MPFR_RNDD) : -mpfr_get_d(v_, MPFR_RNDU);
}

std::string Real::to_fixed(int digits) const
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNf", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
    return s;
}

std::string Real::to_sci(int digits) const
{
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNe", std::max(digits - 1, 0), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

namespace {

// Bound on the rounding error of a result produced with the given ternary value.
double rounding_err(const Real& x, int tern)
{
    if (tern == 0) return 0.0;
    return x.abs_up() * pow2m(x.prec() - 1);
}

long max_prec(const Complex& a, const Complex& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

Complex::Complex(long prec) : re_(prec), im_(prec) {}

Complex::Complex(Real re, Real im, double rad) : re_(std::move(re)), im_(std::move(im)), rad_(rad) {}

Complex Complex::exact(const mpz_class& re, const mpz_class& im, long prec)
{
    Complex z(prec);
    int t1 = mpfr_set_z(z.re_.get(), re.get_mpz_t(), MPFR_RNDN);
    int t2 = mpfr_set_z(z.im_.get(), im.get_mpz_t(), MPFR_RNDN);
    z.rad_ = round_up(rounding_err(z.re_, t1) + rounding_err(z.im_, t2));
    return z;
}

Complex Complex::from_rational(const mpq_class& re, const mpq_class& im, long prec)
{
    Complex z(prec);
    int t1 = mpfr_set_q(z.re_.get(), re.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_set_q(z.im_.get(), im.get_mpq_t(), MPFR_RNDN);
    z.rad_ = round_up(rounding_err(z.re_, t1) + rounding_err(z.im_, t2));
    return z;
}

Complex Complex::from_double(double re, double im, long prec)
{
    Complex z(prec);
    int t1 = mpfr_set_d(z.re_.get(), re, MPFR_RNDN);
    int t2 = mpfr_set_d(z.im_.get(), im, MPFR_RNDN);
    z.rad_ = round_up(rounding_err(z.re_, t1) + rounding_err(z.im_, t2));
    return z;
}

Complex Complex::unit_root(const mpz_class& r, const mpz_class& n, long prec)
{
    mpz_class rr = r % n;
    if (rr < 0) rr += n;
    Complex z(prec);
    mpz_class r4 = 4 * rr;
    if (r4 % n == 0) {
        long q = mpz_class(r4 / n).get_si();
        static const int cs[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        mpfr_set_si(z.re_.get(), cs[q][0], MPFR_RNDN);
        mpfr_set_si(z.im_.get(), cs[q][1], MPFR_RNDN);
        return z;
    }
    long wp = prec + 20;
    Real ang(wp);
    mpfr_const_pi(ang.get(), MPFR_RNDN);
    mpfr_mul_z(ang.get(), ang.get(), mpz_class(2 * rr).get_mpz_t(), MPFR_RNDN);
    mpfr_div_z(ang.get(), ang.get(), n.get_mpz_t(), MPFR_RNDN);
    Real s(wp), c(wp);
    mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
    mpfr_set(z.re_.get(), c.get(), MPFR_RNDN);
    mpfr_set(z.im_.get(), s.get(), MPFR_RNDN);
    z.rad_ = pow2m(prec - 1);
    return z;
}

Complex Complex::expi(const mpq_class& x, long prec)
{
    return unit_root(x.get_num(), x.get_den(), prec);
}

Complex Complex::expi(const RealBall& x, long prec)
{
    long wp = prec + 20;
    Real ang(wp);
    mpfr_const_pi(ang.get(), MPFR_RNDN);
    mpfr_mul_ui(ang.get(), ang.get(), 2, MPFR_RNDN);
    mpfr_mul(ang.get(), ang.get(), x.mid.get(), MPFR_RNDN);
    Real s(wp), c(wp);
    mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
    Complex z(prec);
    mpfr_set(z.re_.get(), c.get(), MPFR_RNDN);
    mpfr_set(z.im_.get(), s.get(), MPFR_RNDN);
    double angle_err = x.rad * 6.2831853071795866 + ang.abs_up() * pow2m(wp - 3);
    z.rad_ = round_up(angle_err + pow2m(prec - 1));
    return z;
}

void Complex::add_rad(double r) { rad_ = round_up(rad_ + r); }

double Complex::mid_abs_upper() const
{
    return round_up(std::hypot(re_.abs_up(), im_.abs_up()));
}

double Complex::abs_upper() const { return round_up(mid_abs_upper() + rad_); }

double Complex::abs_lower() const
{
    double m = std::hypot(re_.abs_down(), im_.abs_down()) * (1.0 - 0x1p-48);
    double lo = m - round_up(rad_);
    return lo > 0.0 ? lo * (1.0 - 0x1p-48) : 0.0;
}

Complex Complex::conj() const
{
    Complex z(*this);
    mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
    return z;
}

Complex Complex::operator-() const
{
    Complex z(*this);
    mpfr_neg(z.re_.get(), z.re_.get(), MPFR_RNDN);
    mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
    return z;
}

std::string Complex::to_string(int digits) const
{
    return "(" + re_.to_sci(digits) + ", " + im_.to_sci(digits) + ") +/- " + std::to_string(rad_);
}

Complex operator+(const Complex& a, const Complex& b)
{
    Complex z(max_prec(a, b));
    int t1 = mpfr_add(z.re().get(), a.re().get(), b.re().get(), MPFR_RNDN);
    int t2 = mpfr_add(z.im().get(), a.im().get(), b.im().get(), MPFR_RNDN);
    z.set_rad(round_up(a.rad() + b.rad() + rounding_err(z.re(), t1) + rounding_err(z.im(), t2)));
    return z;
}

Complex operator-(const Complex& a, const Complex& b)
{
    Complex z(max_prec(a, b));
    int t1 = mpfr_sub(z.re().get(), a.re().get(), b.re().get(), MPFR_RNDN);
    int t2 = mpfr_sub(z.im().get(), a.im().get(), b.im().get(), MPFR_RNDN);
    z.set_rad(round_up(a.rad() + b.rad() + rounding_err(z.re(), t1) + rounding_err(z.im(), t2)));
    return z;
}

Complex operator*(const Complex& a, const Complex& b)
{
    long p = max_prec(a, b);
    Complex z(p);
    Real ac(p), bd(p), ad(p), bc(p);
    int t1 = mpfr_mul(ac.get(), a.re().get(), b.re().get(), MPFR_RNDN);
    int t2 = mpfr_mul(bd.get(), a.im().get(), b.im().get(), MPFR_RNDN);
    int t3 = mpfr_mul(ad.get(), a.re().get(), b.im().get(), MPFR_RNDN);
    int t4 = mpfr_mul(bc.get(), a.im().get(), b.re().get(), MPFR_RNDN);
    int t5 = mpfr_sub(z.re().get(), ac.get(), bd.get(), MPFR_RNDN);
    int t6 = mpfr_add(z.im().get(), ad.get(), bc.get(), MPFR_RNDN);
    double err = rounding_err(ac, t1) + rounding_err(bd, t2) + rounding_err(ad, t3) +
                 rounding_err(bc, t4) + rounding_err(z.re(), t5) + rounding_err(z.im(), t6);
    double ma = a.mid_abs_upper(), mb = b.mid_abs_upper();
    double prop = ma * b.rad() + mb * a.rad() + a.rad() * b.rad();
    z.set_rad(round_up(err + prop));
    return z;
}

Complex scale(const Complex& a, const mpz_class& c)
{
    Complex z(a.prec());
    int t1 = mpfr_mul_z(z.re().get(), a.re().get(), c.get_mpz_t(), MPFR_RNDN);
    int t2 = mpfr_mul_z(z.im().get(), a.im().get(), c.get_mpz_t(), MPFR_RNDN);
    double cabs = std::fabs(c.get_d()) * (1.0 + 0x1p-50);
    z.set_rad(round_up(a.rad() * cabs + rounding_err(z.re(), t1) + rounding_err(z.im(), t2)));
    return z;
}

Complex inverse(const Complex& a)
{
    double lo = a.abs_lower();
    if (lo <= 0.0) throw PrecisionError("inverse of a disc containing zero");
    long p = a.prec();
    Real n(p + 8), t(p + 8);
    int tn = mpfr_sqr(n.get(), a.re().get(), MPFR_RNDN);
    tn |= mpfr_sqr(t.get(), a.im().get(), MPFR_RNDN);
    tn |= mpfr_add(n.get(), n.get(), t.get(), MPFR_RNDN);
    Complex z(p);
    int t1 = mpfr_div(z.re().get(), a.re().get(), n.get(), MPFR_RNDN);
    int t2 = mpfr_div(z.im().get(), a.im().get(), n.get(), MPFR_RNDN);
    mpfr_neg(z.im().get(), z.im().get(), MPFR_RNDN);
    double err = 0.0;
    if (tn != 0 || t1 != 0 || t2 != 0) err = z.mid_abs_upper() * pow2m(p - 3);
    double mlo = lo + a.rad();
    double prop = a.rad() / (mlo * lo) * (1.0 + 0x1p-40);
    z.set_rad(round_up(err + prop));
    return z;
}

Complex operator/(const Complex& a, const Complex& b) { return a * inverse(b); }

Complex pow(const Complex& a, long k)
{
    if (k < 0) return pow(inverse(a), -k);
    Complex result = Complex::exact(1, 0, a.prec());
    Complex base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

RealBall abs(const Complex& z)
{
    Real m(z.prec());
    int t = mpfr_hypot(m.get(), z.re().get(), z.im().get(), MPFR_RNDN);
    double r = z.rad() + rounding_err(m, t);
    return RealBall(std::move(m), round_up(r));
}

RealBall log_abs(const Complex& z)
{
    double lo = z.abs_lower();
    if (lo <= 0.0) throw PrecisionError("log of a disc containing zero");
    long p = z.prec();
    Real m(p + 8);
    mpfr_hypot(m.get(), z.re().get(), z.im().get(), MPFR_RNDN);
    Real l(p);
    int t = mpfr_log(l.get(), m.get(), MPFR_RNDN);
    double mdown = m.abs_down();
    double r = z.rad() / lo * (1.0 + 0x1p-40);
    r += std::fabs(std::log(std::max(mdown, 1e-300))) * pow2m(p + 6) + pow2m(p + 6);
    r += rounding_err(l, t);
    return RealBall(std::move(l), round_up(r));
}

bool overlaps(const Complex& a, const Complex& b)
{
    Complex d = a - b;
    double dist = std::hypot(d.re().abs_down(), d.im().abs_down()) * (1.0 - 0x1p-48);
    return dist <= d.rad();
}

}  // namespace algdyn
