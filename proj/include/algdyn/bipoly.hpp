#pragma once

#include <gmpxx.h>

#include <vector>

#include "algdyn/bigfloat.hpp"
#include "algdyn/intpoly.hpp"

namespace algdyn {

// Polynomial in x and y over Z, stored by powers of y with coefficients in Z[x].
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<IntPoly> by_y);

    // degree in y, -1 for the zero polynomial
    int deg_y() const { return static_cast<int>(c_.size()) - 1; }
    int deg_x() const;
    bool is_zero() const { return c_.empty(); }
    // coefficient of y^j
    const IntPoly& coeff_y(int j) const;
    const std::vector<IntPoly>& by_y() const { return c_; }
    mpz_class coeff(int i, int j) const { return j <= deg_y() ? c_[j][i] : mpz_class(0); }

    // polynomial in y after x := a
    IntPoly eval_x(const mpz_class& a) const;
    // exchange the roles of x and y
    BiPoly swapped() const;

    bool operator==(const BiPoly& o) const { return c_ == o.c_; }

private:
    std::vector<IntPoly> c_;
    void normalize();
};

BiPoly operator+(const BiPoly& a, const BiPoly& b);
BiPoly operator-(const BiPoly& a, const BiPoly& b);
BiPoly operator*(const BiPoly& a, const BiPoly& b);

// gcd over Z[x] of the coefficients in y
IntPoly content_y(const BiPoly& p);

// Sylvester determinant with formal degrees m = deg p, n = deg q (1 when m = n = 0).
mpz_class sylvester_resultant(const std::vector<mpz_class>& p, const std::vector<mpz_class>& q);

// Res_y(p, q) in Z[x], by evaluation at integer points and interpolation.
IntPoly resultant_y(const BiPoly& p, const BiPoly& q);

Complex eval(const BiPoly& p, const Complex& x, const Complex& y);

}  // namespace algdyn
