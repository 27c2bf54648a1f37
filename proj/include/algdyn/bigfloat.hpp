#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace algdyn {

inline constexpr long kDefaultPrecision = 128;

// Owning wrapper around mpfr_t.
class Real {
public:
    explicit Real(long prec = kDefaultPrecision);
    Real(double x, long prec);
    Real(const mpz_class& x, long prec);
    Real(const mpq_class& x, long prec);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long prec() const { return static_cast<long>(mpfr_get_prec(v_)); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // |x| rounded up / down to double.
    double abs_up() const;
    double abs_down() const;
    // Fixed-point decimal with the given number of digits after the point.
    std::string to_fixed(int digits) const;
    // Shortest scientific form carrying `digits` significant digits.
    std::string to_sci(int digits) const;

private:
    mpfr_t v_;
};

// Real interval [mid - rad, mid + rad].
struct RealBall {
    Real mid;
    double rad = 0.0;

    explicit RealBall(long prec = kDefaultPrecision) : mid(prec) {}
    RealBall(Real m, double r) : mid(std::move(m)), rad(r) {}
    long prec() const { return mid.prec(); }
};

// Complex disc {z : |z - (re + i im)| <= rad}.  This is the numeric carrier
// for polynomial values and kernel quotients.
class Complex {
public:
    explicit Complex(long prec = kDefaultPrecision);
    Complex(Real re, Real im, double rad);

    static Complex exact(const mpz_class& re, const mpz_class& im, long prec);
    static Complex from_rational(const mpq_class& re, const mpq_class& im, long prec);
    static Complex from_double(double re, double im, long prec);
    // e^{2 pi i r / n}; exact when 4r = 0 mod n.
    static Complex unit_root(const mpz_class& r, const mpz_class& n, long prec);
    // e^{2 pi i x} for rational x.
    static Complex expi(const mpq_class& x, long prec);
    // e^{2 pi i x} for a real ball.
    static Complex expi(const RealBall& x, long prec);

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    Real& re() { return re_; }
    Real& im() { return im_; }
    double rad() const { return rad_; }
    void set_rad(double r) { rad_ = r; }
    void add_rad(double r);
    long prec() const { return re_.prec(); }
    bool is_exact() const { return rad_ == 0.0; }

    // Bounds on the modulus of every point in the disc.
    double abs_upper() const;
    double abs_lower() const;
    bool contains_zero() const { return abs_lower() == 0.0; }
    // Upper bound for the modulus of the center only.
    double mid_abs_upper() const;

    Complex conj() const;
    Complex operator-() const;

    std::string to_string(int digits = 20) const;

private:
    Real re_, im_;
    double rad_ = 0.0;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex scale(const Complex& a, const mpz_class& c);
Complex inverse(const Complex& a);
Complex pow(const Complex& a, long k);

// |z| as a real ball.
RealBall abs(const Complex& z);
// log|z| as a real ball; throws PrecisionError if the disc touches 0.
RealBall log_abs(const Complex& z);
// Discs overlap.
bool overlaps(const Complex& a, const Complex& b);

// Inflate a nonnegative double bound to absorb the rounding of its own computation.
double round_up(double x);
// 2^-e as double.
double pow2m(long e);

}  // namespace algdyn
