#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "algdyn/bigfloat.hpp"

namespace algdyn {

using Exponent = std::vector<std::int64_t>;

// Integer Laurent polynomial in d variables, stored as a sparse map
// from exponent vector to nonzero coefficient (lexicographic order).
class LaurentPoly {
public:
    using TermMap = std::map<Exponent, mpz_class>;

    explicit LaurentPoly(int dim = 1);
    static LaurentPoly constant(int dim, const mpz_class& c);
    static LaurentPoly monomial(const Exponent& e, const mpz_class& c = 1);
    // u_k for k in [1, dim].
    static LaurentPoly variable(int dim, int k);

    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    mpz_class coeff(const Exponent& e) const;
    void add_term(const Exponent& e, const mpz_class& c);

    // Componentwise min / max exponent over the support (zero polynomial: zeros).
    Exponent min_exponent() const;
    Exponent max_exponent() const;
    // max over the support of the sup-norm of the exponent.
    std::int64_t support_radius() const;
    // Multiply by u^m.
    LaurentPoly shifted(const Exponent& m) const;
    bool is_monomial() const { return terms_.size() == 1; }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    bool operator==(const LaurentPoly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // Canonical text form accepted by parse_poly.
    std::string to_string() const;

private:
    int dim_;
    TermMap terms_;
};

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly pow(const LaurentPoly& a, std::uint64_t k);
// Monomial to a signed power; throws InputError if `a` is not a monomial
// with coefficient +-1 and k < 0.
LaurentPoly pow_signed(const LaurentPoly& a, std::int64_t k);

LaurentPoly adjoint(const LaurentPoly& f);
mpz_class one_norm(const LaurentPoly& f);
// Value at a point of (C^x)^d.
Complex eval(const LaurentPoly& f, const std::vector<Complex>& z);

// Checked exponent arithmetic.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

// Parses the polynomial grammar (see README).  Variables are u1..ud, with
// u, v, w aliasing u1, u2, u3 when dim <= 3.
LaurentPoly parse_poly(std::string_view text, int dim);
// Highest variable index referenced by the text (0 for constants); aliases count.
int max_variable_index(std::string_view text);

}  // namespace algdyn
