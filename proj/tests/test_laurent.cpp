#include <doctest.h>

#include <random>

#include "algdyn/errors.hpp"
#include "algdyn/laurent.hpp"

using namespace algdyn;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, int dim, int terms, int span)
{
    LaurentPoly p(dim);
    std::uniform_int_distribution<int> ex(-span, span), co(-5, 5);
    for (int t = 0; t < terms; ++t) {
        Exponent e(dim);
        for (auto& x : e) x = ex(rng);
        p.add_term(e, co(rng));
    }
    return p;
}

Complex unit_point(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(0, 996);
    return Complex::unit_root(num(rng), 997, 128);
}

}  // namespace

TEST_CASE("parse examples")
{
    LaurentPoly f = parse_poly("2 - u1 - u2", 2);
    CHECK(f.size() == 3);
    CHECK(f.coeff({0, 0}) == 2);
    CHECK(f.coeff({1, 0}) == -1);
    CHECK(f.coeff({0, 1}) == -1);

    CHECK(parse_poly("0", 3).is_zero());
    CHECK(parse_poly("0", 3).dim() == 3);

    // (u-1)^3 by binomial coefficients
    LaurentPoly g = parse_poly("(u1-1)^3", 2);
    CHECK(g.size() == 4);
    CHECK(g.coeff({0, 0}) == -1);
    CHECK(g.coeff({1, 0}) == 3);
    CHECK(g.coeff({2, 0}) == -3);
    CHECK(g.coeff({3, 0}) == 1);

    CHECK(parse_poly("2-u-v", 2) == f);
    CHECK(parse_poly("2 u v", 2) == parse_poly("2*u1*u2", 2));
    CHECK(parse_poly("(u-1)(v+1)", 2) == parse_poly("u*v + u - v - 1", 2));
    CHECK(parse_poly("u^-2", 2).coeff({-2, 0}) == 1);
    CHECK(parse_poly("(-u)^-1", 2).coeff({-1, 0}) == -1);
    CHECK(parse_poly("-3^2", 1).coeff({0}) == 9);
    CHECK(parse_poly("- u + 1", 1) == parse_poly("1-u", 1));
    CHECK(parse_poly("u12", 12).coeff(Exponent{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}) == 1);
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_AS(parse_poly("u3", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("2 + ", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("(u-1", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("(u-1)^-1", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("u^99999999999999999999", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("u^4611686018427387904 * u^4611686018427387904", 2), InputError);
    CHECK_THROWS_AS(parse_poly("x", 2), ParseError);
    CHECK_THROWS_AS(parse_poly("v", 5), ParseError);
    CHECK_THROWS_AS(parse_poly("u0", 2), ParseError);
    try {
        parse_poly("2 - u + $", 2);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 8);
    }
}

TEST_CASE("print and reparse")
{
    std::mt19937_64 rng(1);
    for (int dim : {1, 2, 3, 5}) {
        for (int i = 0; i < 50; ++i) {
            LaurentPoly p = random_poly(rng, dim, 6, 4);
            CHECK(parse_poly(p.to_string(), dim) == p);
        }
    }
}

TEST_CASE("ring operations")
{
    LaurentPoly a = parse_poly("u-1", 1), b = parse_poly("u+1", 1);
    CHECK(a * b == parse_poly("u^2-1", 1));
    CHECK(pow(a, 0) == LaurentPoly::constant(1, 1));
    LaurentPoly f = parse_poly("2-u-v", 2);
    CHECK(f * LaurentPoly::constant(2, 1) == f);
    CHECK_THROWS_AS(f + a, InputError);

    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly x = random_poly(rng, 2, 4, 3), y = random_poly(rng, 2, 4, 3), z = random_poly(rng, 2, 4, 3);
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x - x == LaurentPoly(2));
        CHECK(adjoint(x * y) == adjoint(x) * adjoint(y));
        CHECK(adjoint(adjoint(x)) == x);
        CHECK(pow(x, 3) == x * x * x);
    }
}

TEST_CASE("adjoint and one_norm")
{
    CHECK(adjoint(parse_poly("2-u-v", 2)) == parse_poly("2-u^-1-v^-1", 2));
    CHECK(adjoint(LaurentPoly::constant(2, 7)) == LaurentPoly::constant(2, 7));
    CHECK(one_norm(parse_poly("2-u-v", 2)) == 4);
    CHECK(one_norm(LaurentPoly(2)) == 0);
    CHECK(one_norm(parse_poly("(u-1)^3", 2)) == 8);
}

TEST_CASE("eval examples")
{
    LaurentPoly f = parse_poly("2-u-v", 2);
    Complex one = Complex::exact(1, 0, 128);
    Complex v = eval(f, {one, one});
    CHECK(v.re().is_zero());
    CHECK(v.im().is_zero());
    CHECK(v.rad() == 0.0);

    Complex w = Complex::unit_root(1, 3, 128), w2 = Complex::unit_root(2, 3, 128);
    CHECK(eval(parse_poly("1+u+v", 2), {w, w2}).contains_zero());

    Complex m1 = Complex::exact(-1, 0, 128);
    Complex r = eval(f, {m1, m1});
    CHECK(r.rad() == 0.0);
    CHECK(mpfr_cmp_si(r.re().get(), 4) == 0);

    CHECK_THROWS_AS(eval(parse_poly("u^-1", 2), {Complex(128), one}), InputError);
}

TEST_CASE("adjoint transform is the conjugate on the torus")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly f = random_poly(rng, 2, 5, 3);
        std::vector<Complex> z{unit_point(rng), unit_point(rng)};
        Complex a = eval(adjoint(f), z);
        Complex b = eval(f, z).conj();
        CHECK(overlaps(a, b));
    }
}

TEST_CASE("eval radius is conservative")
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly f = random_poly(rng, 2, 6, 5);
        std::uniform_int_distribution<long> num(0, 996);
        long r1 = num(rng), r2 = num(rng);
        Complex lo = eval(f, {Complex::unit_root(r1, 997, 64), Complex::unit_root(r2, 997, 64)});
        Complex hi = eval(f, {Complex::unit_root(r1, 997, 128), Complex::unit_root(r2, 997, 128)});
        Complex hc = hi;
        hc.set_rad(0.0);
        Complex diff = hc - lo;
        CHECK(diff.mid_abs_upper() <= lo.rad());
    }
}
