#include <doctest.h>

#include <cmath>
#include <random>

#include "algdyn/errors.hpp"
#include "algdyn/intpoly.hpp"

using namespace algdyn;

namespace {

IntPoly product(const std::vector<IntPoly>& fs)
{
    IntPoly r = IntPoly::constant(1);
    for (const auto& f : fs) r = r * f;
    return r;
}

IntPoly random_poly(std::mt19937_64& rng, int deg)
{
    std::uniform_int_distribution<long> co(-6, 6);
    std::vector<mpz_class> c(deg + 1);
    for (auto& x : c) x = co(rng);
    if (c.back() == 0) c.back() = 1;
    return IntPoly(c);
}

}  // namespace

TEST_CASE("arithmetic and division")
{
    IntPoly a{-1, 0, 1};  // t^2 - 1
    IntPoly b{-1, 1};
    auto q = divide_exact(a, b);
    REQUIRE(q);
    CHECK(*q == IntPoly{1, 1});
    CHECK_FALSE(divide_exact(a, IntPoly{1, 2}));
    CHECK(derivative(IntPoly{1, 2, 3}) == IntPoly{2, 6});
    CHECK(primitive_part(IntPoly{-4, 0, -6}) == IntPoly{2, 0, 3});
    CHECK(gcd(IntPoly{-1, 0, 1} * IntPoly{3, 1}, IntPoly{-1, 1} * IntPoly{3, 1} * IntPoly{5, 0, 1}) ==
          IntPoly{-3, 2, 1});
    CHECK(IntPoly{2, -1, -3, -1, 2}.to_string() == "2*t^4 - t^3 - 3*t^2 - t + 2");
}

TEST_CASE("square-free decomposition")
{
    IntPoly f = pow(IntPoly{-1, 1}, 2) * pow(IntPoly{2, 1}, 3) * IntPoly{1, 0, 1};
    auto sq = squarefree_decomposition(3 * f);
    REQUIRE(sq.size() == 3);
    CHECK(sq[0].first == IntPoly{1, 0, 1});
    CHECK(sq[0].second == 1);
    CHECK(sq[1].first == IntPoly{-1, 1});
    CHECK(sq[1].second == 2);
    CHECK(sq[2].first == IntPoly{2, 1});
    CHECK(sq[2].second == 3);
    CHECK(squarefree_part(f) == IntPoly{-1, 1} * IntPoly{2, 1} * IntPoly{1, 0, 1});
}

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic(1) == IntPoly{-1, 1});
    CHECK(cyclotomic(2) == IntPoly{1, 1});
    CHECK(cyclotomic(3) == IntPoly{1, 1, 1});
    CHECK(cyclotomic(4) == IntPoly{1, 0, 1});
    CHECK(cyclotomic(6) == IntPoly{1, -1, 1});
    CHECK(cyclotomic(12) == IntPoly{1, 0, -1, 0, 1});
    // first coefficient outside {-1,0,1}
    CHECK(cyclotomic(105)[7] == -2);
    for (unsigned long n = 1; n <= 60; ++n) {
        IntPoly prod = IntPoly::constant(1);
        for (unsigned long d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic(d);
        CHECK(prod == IntPoly::monomial(static_cast<int>(n)) - IntPoly::constant(1));
        CHECK(cyclotomic(n).degree() == static_cast<int>(euler_phi(n)));
    }
    CHECK(cyclotomic_index(IntPoly{1, 1, 1}, 100) == 3ul);
    CHECK(cyclotomic_index(IntPoly{1, 0, 1}, 100) == 4ul);
    CHECK_FALSE(cyclotomic_index(IntPoly{5, 6, 5}, 100));
    CHECK_FALSE(cyclotomic_index(IntPoly{1, 3, 1}, 100));
}

TEST_CASE("Sturm sequences and real roots")
{
    IntPoly f = IntPoly{-2, 0, 1} * IntPoly{-3, 1};
    CHECK(count_real_roots(f) == 3);
    CHECK(count_real_roots(IntPoly{1, 0, 1}) == 0);
    auto roots = real_roots(f);
    REQUIRE(roots.size() == 3);
    CHECK(std::fabs(to_ball(roots[2], 64).mid.to_double() - 3.0) < 1e-15);
    RealRoot r = roots[1];
    refine(r, 100);
    CHECK(std::fabs(mpq_class(r.lo).get_d() - std::sqrt(2.0)) < 1e-15);
    RealBall b = to_ball(roots[0], 128);
    CHECK(std::fabs(b.mid.to_double() + std::sqrt(2.0)) < 1e-15);
    CHECK(b.rad < 1e-35);

    // closed interval with an endpoint root
    auto in = real_roots_in(IntPoly{-1, 0, 1}, -1, 1);
    CHECK(in.size() == 2);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i) {
        IntPoly p = random_poly(rng, 6);
        if (p.degree() < 1) continue;
        IntPoly q = squarefree_part(p);
        auto rs = real_roots(q);
        CHECK(static_cast<int>(rs.size()) == count_real_roots(q));
        for (auto& x : rs) {
            if (x.exact) {
                CHECK(sign_at(q, x.lo) == 0);
            } else {
                CHECK(sign_at(q, x.lo) * sign_at(q, x.hi) < 0);
            }
        }
    }
}

TEST_CASE("factorization over Z")
{
    IntPoly a{-1, -1, 0, 1};  // t^3 - t - 1
    IntPoly b{1, 0, 1};
    IntPoly c{3, 2};
    auto fac = factor(mpz_class(-6) * a * b * c * c);
    CHECK(fac.unit == -6);
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.factors[0].first == c);
    CHECK(fac.factors[0].second == 2);
    CHECK(fac.factors[1].first == b);
    CHECK(fac.factors[2].first == a);

    // irreducible but reducible modulo every prime
    IntPoly sd{1, 0, -10, 0, 1};
    CHECK(factor_squarefree(sd).size() == 1);
    // product of two conjugate-like quartics
    IntPoly p1{2, -1, -3, -1, 2}, p2{2, 13, 18, 13, 2};
    auto fs = factor_squarefree(p1 * p2);
    REQUIRE(fs.size() == 2);
    CHECK(product(fs) == p1 * p2);

    std::mt19937_64 rng(6);
    for (int i = 0; i < 30; ++i) {
        std::vector<IntPoly> parts;
        int k = 1 + static_cast<int>(rng() % 4);
        for (int j = 0; j < k; ++j) parts.push_back(random_poly(rng, 1 + static_cast<int>(rng() % 4)));
        IntPoly p = product(parts);
        if (p.degree() < 1) continue;
        auto f = factor(p);
        IntPoly back = IntPoly::constant(f.unit);
        for (auto& [g, e] : f.factors) {
            back = back * pow(g, static_cast<unsigned>(e));
            // each reported factor has no proper factor with a rational root
            CHECK(g.degree() >= 1);
        }
        CHECK(back == p);
    }
}

TEST_CASE("complex root enclosures")
{
    auto r = complex_roots(IntPoly{1, 0, 1}, 128);
    REQUIRE(r.size() == 2);
    CHECK(r[0].contains_zero() == false);
    CHECK(std::fabs(r[0].im().to_double() + 1.0) < 1e-30);
    CHECK(std::fabs(r[1].im().to_double() - 1.0) < 1e-30);
    CHECK(r[0].rad() < 1e-30);

    auto g = complex_roots(IntPoly{-1, -1, 1}, 128);
    REQUIRE(g.size() == 2);
    CHECK(std::fabs(g[1].re().to_double() - (1 + std::sqrt(5.0)) / 2) < 1e-15);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        IntPoly p = squarefree_part(random_poly(rng, 8));
        if (p.degree() < 1) continue;
        auto rs = complex_roots(p, 128);
        CHECK(static_cast<int>(rs.size()) == p.degree());
        for (auto& z : rs) CHECK(eval(p, z).contains_zero());
    }
}
