#include <doctest.h>

#include <cmath>
#include <random>

#include "algdyn/errors.hpp"
#include "algdyn/periodic.hpp"

using namespace algdyn;

namespace {

Character chr(std::vector<mpq_class> a)
{
    return make_character(std::move(a));
}

double mid(const RealBall& b)
{
    return b.mid.to_double();
}

// Direct product over characters with plain double arithmetic.
double naive_log_count(const LaurentPoly& f, const Lattice& L, int& zeros)
{
    double s = 0;
    zeros = 0;
    for (const auto& w : CharacterSpace(L).all()) {
        double re = 0, im = 0;
        for (const auto& [e, c] : f.terms()) {
            double ph = 2 * M_PI * w.phase(e).get_d();
            re += c.get_d() * std::cos(ph);
            im += c.get_d() * std::sin(ph);
        }
        double a = std::hypot(re, im);
        if (a < 1e-9)
            ++zeros;
        else
            s += std::log(a);
    }
    return s;
}

Lattice random_hnf(std::mt19937_64& rng, long max_index)
{
    for (;;) {
        long a = 1 + static_cast<long>(rng() % 12), c = 1 + static_cast<long>(rng() % 12);
        if (a * c > max_index) continue;
        long b = static_cast<long>(rng() % static_cast<unsigned long>(a));
        return Lattice::gamma_abc(a, b, c);
    }
}

}  // namespace

TEST_CASE("cyclotomic zero test")
{
    LaurentPoly f = parse_poly("2-u-v", 2), g = parse_poly("1+u+v", 2);
    CHECK(is_zero_at_character(f, chr({0, 0})));
    CHECK(is_zero_at_character(g, chr({mpq_class(1, 3), mpq_class(2, 3)})));
    CHECK(is_zero_at_character(g, chr({mpq_class(2, 3), mpq_class(1, 3)})));
    CHECK_FALSE(is_zero_at_character(g, chr({mpq_class(1, 3), mpq_class(1, 3)})));
    CHECK_FALSE(is_zero_at_character(f, chr({mpq_class(1, 2), 0})));

    std::vector<LaurentPoly> fs{f, g, parse_poly("u-v", 2), parse_poly("1+u+u^2+u^3+u^4", 2),
                                parse_poly("u^2-2*u*v+v^2-u^3", 2), parse_poly("1-u+u^2*v^-1", 2)};
    std::mt19937_64 rng(21);
    int zeros = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto& p = fs[t % fs.size()];
        long n = 1 + static_cast<long>(rng() % 30);
        long a = static_cast<long>(rng() % static_cast<unsigned long>(n));
        long b = static_cast<long>(rng() % static_cast<unsigned long>(n));
        Character w = chr({mpq_class(a, n), mpq_class(b, n)});
        Complex v = eval(p, {Complex::expi(w.angles[0], 128), Complex::expi(w.angles[1], 128)});
        bool z = is_zero_at_character(p, w);
        zeros += z;
        CHECK(z == v.contains_zero());
    }
    CHECK(zeros > 100);
}

TEST_CASE("p_gamma examples")
{
    LaurentPoly f = parse_poly("2-u-v", 2);
    auto one = p_gamma(f, Lattice::diagonal(2, 1));
    CHECK(one.log_count.mid.is_zero());
    CHECK(one.torus_dim == 1);

    auto two = p_gamma(f, Lattice::diagonal(2, 2), true);
    CHECK(std::fabs(mid(two.log_count) - std::log(16.0)) < 1e-30 + 1e-15);
    CHECK(two.log_count.rad < 1e-30);
    CHECK(two.torus_dim == 1);
    REQUIRE(two.exact_count);
    CHECK(*two.exact_count == 16);
    CHECK(std::fabs(mid(two.rate) - std::log(16.0) / 4) < 1e-15);

    auto s = snf_oracle(f, Lattice::diagonal(2, 2));
    CHECK(s.exact_count == 16);
    CHECK(s.torus_dim == 1);
    auto unit = snf_oracle(LaurentPoly::constant(2, 1), Lattice::gamma_abc(3, 1, 2));
    CHECK(unit.exact_count == 1);
    CHECK(unit.torus_dim == 0);

    auto e32 = p_gamma(parse_poly("1+u+v", 2), Lattice::gamma_abc(3, 1, 1), true);
    CHECK(e32.torus_dim == 2);

    auto three = p_gamma(f, Lattice::diagonal(2, 3), true);
    CHECK(std::fabs(std::exp(mid(three.log_count)) - three.exact_count->get_d()) <
          1e-8 * three.exact_count->get_d());

    CHECK_THROWS_AS(p_gamma(LaurentPoly(2), Lattice::diagonal(2, 2)), InputError);
    CHECK_THROWS_AS(snf_oracle(f, Lattice::diagonal(2, 21)), RegimeError);
}

TEST_CASE("oracle equivalence")
{
    std::vector<LaurentPoly> fs{parse_poly("2-u-v", 2), parse_poly("1+u+v", 2), parse_poly("2-u^2+v-u*v", 2)};
    std::vector<Lattice> ls;
    for (long n = 1; n <= 6; ++n) ls.push_back(Lattice::diagonal(2, n));
    std::mt19937_64 rng(22);
    for (int i = 0; i < 10; ++i) ls.push_back(random_hnf(rng, 60));
    for (const auto& f : fs)
        for (const auto& L : ls) {
            auto pc = p_gamma(f, L, true);
            double exact = pc.exact_count->get_d();
            CHECK(std::fabs(std::exp(mid(pc.log_count)) - exact) <= 1e-8 * exact);
            int zeros = 0;
            double naive = naive_log_count(f, L, zeros);
            CHECK(zeros == pc.torus_dim);
            CHECK(std::fabs(naive - mid(pc.log_count)) < 1e-9 * std::max(1.0, std::fabs(naive)));
        }
}

TEST_CASE("p_gamma invariances")
{
    std::vector<LaurentPoly> fs{parse_poly("2-u-v", 2), parse_poly("3+u-v^2+u*v", 2)};
    std::vector<Lattice> ls{Lattice::diagonal(2, 7), Lattice::gamma_abc(6, 2, 5)};
    LaurentPoly mono = parse_poly("u^3*v^-2", 2);
    for (const auto& f : fs)
        for (const auto& L : ls) {
            auto a = p_gamma(f, L), b = p_gamma(adjoint(f), L), c = p_gamma(mono * f, L);
            CHECK(std::fabs(mid(a.log_count) - mid(b.log_count)) <= a.log_count.rad + b.log_count.rad);
            CHECK(std::fabs(mid(a.log_count) - mid(c.log_count)) <= a.log_count.rad + c.log_count.rad);
            CHECK(a.torus_dim == b.torus_dim);
            CHECK(a.torus_dim == c.torus_dim);
        }
}

TEST_CASE("Example 3.2 intersection rule")
{
    LaurentPoly f = parse_poly("1+u+v", 2);
    int mismatches = 0;
    for (long a = 1; a <= 6; ++a)
        for (long b = 0; b < a; ++b)
            for (long c = 1; c <= 6; ++c) {
                auto pc = p_gamma(f, Lattice::gamma_abc(a, b, c));
                bool rule = a % 3 == 0 && (b + 2 * c) % 3 == 0;
                if (pc.torus_dim != (rule ? 2 : 0)) ++mismatches;
            }
    CHECK(mismatches == 0);
}

TEST_CASE("growth tables")
{
    std::vector<Lattice> ls{Lattice::diagonal(2, 4), Lattice::diagonal(2, 8), Lattice::diagonal(2, 16)};
    auto rows = growth_table(parse_poly("2-u-v", 2), ls);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].gamma_min == 4);
    CHECK(rows[2].index == 256);
    // the Riemann sums approach log 2 from above
    double e0 = mid(rows[0].rate) - std::log(2.0), e1 = mid(rows[1].rate) - std::log(2.0),
           e2 = mid(rows[2].rate) - std::log(2.0);
    CHECK(e0 > e1);
    CHECK(e1 > e2);
    CHECK(e2 > 0);
    CHECK(e2 < 0.011);

    for (const auto& r : growth_table(LaurentPoly::constant(2, 1), ls)) {
        CHECK(r.rate.mid.is_zero());
        CHECK(r.torus_dim == 0);
    }
    for (long k = 1; k <= 4; ++k) {
        auto r = growth_table(parse_poly("1+u+v", 2), {Lattice::diagonal(2, 3 * k)});
        CHECK(r[0].torus_dim == 2);
    }
}

TEST_CASE("thread count does not change the sum")
{
    LaurentPoly f = parse_poly("2-u-v", 2);
    Lattice L = Lattice::diagonal(2, 100);
    std::string ref;
    for (int th : {1, 2, 8}) {
        PeriodicOptions opt;
        opt.exec.threads = th;
        auto pc = p_gamma(f, L, false, opt);
        std::string s = pc.log_count.mid.to_sci(40) + "/" + std::to_string(pc.log_count.rad);
        if (ref.empty())
            ref = s;
        else
            CHECK(s == ref);
    }
}

TEST_CASE("torsion lattices")
{
    auto t1 = torsion_lattice(2, {chr({0, 0})});
    CHECK(t1.exponent == 1);
    CHECK(t1.lattice == Lattice::diagonal(2, 1));

    auto t3 = torsion_lattice(2, {chr({mpq_class(1, 3), mpq_class(2, 3)}), chr({mpq_class(2, 3), mpq_class(1, 3)})});
    CHECK(t3.exponent == 3);
    CHECK(t3.lattice.index() == 3);
    CHECK(t3.lattice.contains({1, 1}));
    CHECK(t3.lattice.contains({3, 0}));
    CHECK_FALSE(t3.lattice.contains({1, 0}));
    CHECK(Lattice::diagonal(2, 3).basis()(0, 0) % t3.lattice.basis()(0, 0) == 0);

    auto t2 = torsion_lattice(2, {chr({0, 0}), chr({mpq_class(1, 2), mpq_class(1, 2)})});
    CHECK(t2.exponent == 2);
    CHECK(t2.lattice.index() == 2);
}
