#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algdyn/bigfloat.hpp"

namespace algdyn {

// Dense univariate polynomial over Z, coefficient i belongs to t^i.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> c);
    IntPoly(std::initializer_list<long> c);
    static IntPoly constant(const mpz_class& c);
    static IntPoly monomial(int deg, const mpz_class& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    mpz_class operator[](int i) const { return i >= 0 && i <= degree() ? c_[i] : mpz_class(0); }
    const mpz_class& lead() const { return c_.back(); }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return c_ != o.c_; }
    IntPoly operator-() const;

    std::string to_string(const std::string& var = "t") const;

private:
    std::vector<mpz_class> c_;
    void normalize();
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const mpz_class& s, const IntPoly& a);
IntPoly pow(const IntPoly& a, unsigned k);

IntPoly derivative(const IntPoly& p);
mpz_class content(const IntPoly& p);
// Divides out the content and makes the leading coefficient positive.
IntPoly primitive_part(const IntPoly& p);
// t^deg p(1/t).
IntPoly reversed(const IntPoly& p);
// p(-t).
IntPoly negated_arg(const IntPoly& p);
// Exact quotient a / b over Z, or nothing when b does not divide a.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);
// lc(b)^(deg a - deg b + 1) a mod b.
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b);
// Primitive gcd with positive leading coefficient (gcd(0,0) = 0).
IntPoly gcd(const IntPoly& a, const IntPoly& b);
// Square-free decomposition p = c * prod f_i^i, f_i primitive; returns (f_i, i) with f_i != 1.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);
IntPoly squarefree_part(const IntPoly& p);

mpz_class eval(const IntPoly& p, const mpz_class& x);
mpq_class eval(const IntPoly& p, const mpq_class& x);
int sign_at(const IntPoly& p, const mpq_class& x);
Complex eval(const IntPoly& p, const Complex& z);

// True if p(t) = +-t^deg p(1/t).
bool is_self_reciprocal(const IntPoly& p);

// n-th cyclotomic polynomial (cached, thread-safe).
const IntPoly& cyclotomic(unsigned long n);
// Euler's totient.
unsigned long euler_phi(unsigned long n);
// n with Phi_n == p (p primitive, positive lead), searching n up to `cap`.
std::optional<unsigned long> cyclotomic_index(const IntPoly& p, unsigned long cap);
// Largest n with phi(n) <= deg, i.e. the search bound for cyclotomic_index.
unsigned long cyclotomic_search_bound(int deg);

// Real root of a square-free polynomial, isolated in the open interval
// (lo, hi), or exactly equal to lo when `exact`.
struct RealRoot {
    IntPoly poly;
    mpq_class lo, hi;
    bool exact = false;
};

// Sturm sequence of a square-free polynomial.
std::vector<IntPoly> sturm_sequence(const IntPoly& p);
// Number of distinct real roots of p in (a, b].
int count_real_roots(const std::vector<IntPoly>& sturm, const mpq_class& a, const mpq_class& b);
// Number of distinct real roots of p.
int count_real_roots(const IntPoly& p);
// All distinct real roots of p (any nonzero p), ascending.
std::vector<RealRoot> real_roots(const IntPoly& p);
// Distinct real roots in the closed interval [a, b].
std::vector<RealRoot> real_roots_in(const IntPoly& p, const mpq_class& a, const mpq_class& b);
// Shrinks the isolating interval below 2^-bits.
void refine(RealRoot& r, long bits);
RealBall to_ball(RealRoot r, long prec);
// Cauchy bound: every complex root has modulus < bound.
mpz_class root_bound(const IntPoly& p);

// Irreducible factorization over Z of a nonzero polynomial:
// p = sign * content * prod f_i^e_i with f_i primitive, positive lead.
struct Factorization {
    mpz_class unit;
    std::vector<std::pair<IntPoly, int>> factors;
};
Factorization factor(const IntPoly& p, int degree_cap = 64);
// Irreducible factors of a primitive square-free polynomial.
std::vector<IntPoly> factor_squarefree(const IntPoly& p, int degree_cap = 64);

// All complex roots of a square-free polynomial as disjoint inclusion discs.
std::vector<Complex> complex_roots(const IntPoly& p, long prec);

}  // namespace algdyn
