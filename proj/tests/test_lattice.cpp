#include <doctest.h>

#include <random>
#include <set>

#include "algdyn/errors.hpp"
#include "algdyn/lattice.hpp"

using namespace algdyn;

namespace {

// brute force over coefficient vectors
long brute_min(const Matrix& b, int range)
{
    long best = -1;
    for (int x = -range; x <= range; ++x)
        for (int y = -range; y <= range; ++y) {
            if (x == 0 && y == 0) continue;
            mpz_class p = b(0, 0) * x + b(0, 1) * y, q = b(1, 0) * x + b(1, 1) * y;
            long n = std::max(mpz_class(abs(p)).get_si(), mpz_class(abs(q)).get_si());
            if (best < 0 || n < best) best = n;
        }
    return best;
}

bool is_unimodular(const Matrix& m)
{
    return abs(determinant(m)) == 1;
}

Matrix diag_matrix(const std::vector<mpz_class>& d)
{
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

}  // namespace

TEST_CASE("Hermite normal form")
{
    Lattice a = Lattice::from_columns(Matrix::from_rows({{3, 1}, {0, 1}}));
    CHECK(a.basis() == Matrix::from_rows({{3, 1}, {0, 1}}));
    CHECK(a.index() == 3);

    // another generating set of the same subgroup
    Lattice b = Lattice::from_columns(Matrix::from_rows({{4, 1}, {1, 1}}));
    CHECK(b == a);

    CHECK(Lattice::diagonal(2, 7).index() == 49);
    CHECK(Lattice::gamma_abc(4, 2, 5).index() == 20);
    CHECK_THROWS_AS(Lattice::from_columns(Matrix::from_rows({{1, 2}, {2, 4}})), InputError);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> e(-6, 6);
    for (int t = 0; t < 60; ++t) {
        Matrix m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = e(rng);
        if (determinant(m) == 0) continue;
        Lattice L = Lattice::from_columns(m);
        const Matrix& h = L.basis();
        CHECK(L.index() == abs(determinant(m)));
        for (int i = 0; i < 3; ++i) {
            CHECK(h(i, i) > 0);
            for (int j = 0; j < i; ++j) CHECK(h(i, j) == 0);
            for (int j = i + 1; j < 3; ++j) CHECK((h(i, j) >= 0 && h(i, j) < h(i, i)));
        }
        for (int j = 0; j < 3; ++j) {
            Exponent col(3);
            for (int i = 0; i < 3; ++i) col[i] = m(i, j).get_si();
            CHECK(L.contains(col));
        }
        // unimodular change of generators
        Matrix w = Matrix::from_rows({{1, 2, 0}, {0, 1, -3}, {0, 0, 1}});
        CHECK(Lattice::from_columns(m * w) == L);
    }
}

TEST_CASE("Smith form")
{
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> e(-9, 9);
    for (int t = 0; t < 60; ++t) {
        int n = 2 + static_cast<int>(rng() % 3);
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = e(rng);
        SmithForm s = smith_form(m);
        CHECK(is_unimodular(s.U));
        CHECK(is_unimodular(s.V));
        CHECK(s.U * m * s.V == diag_matrix(s.diag));
        CHECK(s.U * s.Uinv == Matrix::identity(n));
        for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
            if (s.diag[i] == 0) {
                CHECK(s.diag[i + 1] == 0);
            } else {
                CHECK(mpz_divisible_p(s.diag[i + 1].get_mpz_t(), s.diag[i].get_mpz_t()));
            }
        }
        mpz_class prod = 1;
        for (auto& x : s.diag) prod *= x;
        CHECK(prod == abs(determinant(m)));
    }
    SmithForm s = smith_form(Matrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(s.diag == std::vector<mpz_class>{1, 6});
}

TEST_CASE("gamma_min")
{
    CHECK(gamma_min(Lattice::diagonal(2, 5)) == 5);
    CHECK(gamma_min(Lattice::gamma_abc(4, 2, 1)) == 2);
    CHECK(gamma_min(Lattice::gamma_abc(3, 1, 3)) == 3);
    for (long k = 1; k <= 16; ++k) {
        CHECK(gamma_min(Lattice::diagonal(2, k)) == k);
        CHECK(gamma_min(Lattice::diagonal(3, k)) == k);
    }
    for (long a = 1; a <= 7; ++a)
        for (long b = 0; b < a; ++b)
            for (long c = 1; c <= 7; ++c) {
                Lattice L = Lattice::gamma_abc(a, b, c);
                CHECK(gamma_min(L) == brute_min(L.basis(), 16));
            }
}

TEST_CASE("characters")
{
    CharacterSpace one(Lattice::diagonal(2, 1));
    REQUIRE(one.size() == 1);
    CHECK(one.at(0).angles == std::vector<mpq_class>{0, 0});
    CHECK(one.at(0).order == 1);

    auto c22 = CharacterSpace(Lattice::diagonal(2, 2)).all();
    REQUIRE(c22.size() == 4);
    std::set<std::pair<mpq_class, mpq_class>> seen;
    for (auto& c : c22) {
        for (auto& a : c.angles) CHECK((a == 0 || a == mpq_class(1, 2)));
        seen.insert({c.angles[0], c.angles[1]});
    }
    CHECK(seen.size() == 4);

    auto c311 = CharacterSpace(Lattice::gamma_abc(3, 1, 1)).all();
    REQUIRE(c311.size() == 3);
    for (auto& c : c311) CHECK(3 % c.order.get_si() == 0);

    std::vector<Lattice> ls{Lattice::gamma_abc(6, 4, 10), Lattice::gamma_abc(5, 3, 4), Lattice::diagonal({3, 6}),
                            Lattice::from_columns(Matrix::from_rows({{4, 1, 2}, {0, 6, 3}, {2, 0, 5}}))};
    for (const auto& L : ls) {
        CharacterSpace cs(L);
        auto all = cs.all();
        CHECK(all.size() == L.index().get_ui());
        std::set<std::vector<mpq_class>> distinct;
        for (auto& c : all) {
            distinct.insert(c.angles);
            for (int j = 0; j < L.dim(); ++j) {
                Exponent col(L.dim());
                for (int i = 0; i < L.dim(); ++i) col[i] = L.basis()(i, j).get_si();
                mpq_class s = 0;
                for (int i = 0; i < L.dim(); ++i) s += c.angles[i] * static_cast<long>(col[i]);
                CHECK(s.get_den() == 1);
                CHECK(c.phase(col) == 0);
            }
        }
        CHECK(distinct.size() == all.size());
    }
}

TEST_CASE("fundamental domains")
{
    auto q = Lattice::diagonal(2, 2).fundamental_domain();
    CHECK(q == std::vector<Exponent>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(Lattice::diagonal(2, 1).fundamental_domain() == std::vector<Exponent>{{0, 0}});
    CHECK(Lattice::gamma_abc(3, 1, 1).fundamental_domain() == std::vector<Exponent>{{0, 0}, {1, 0}, {2, 0}});

    std::vector<Lattice> ls{Lattice::gamma_abc(6, 4, 10), Lattice::gamma_abc(5, 3, 4), Lattice::diagonal({3, 6}),
                            Lattice::from_columns(Matrix::from_rows({{4, 1, 2}, {0, 6, 3}, {2, 0, 5}}))};
    for (const auto& L : ls) {
        auto dom = L.fundamental_domain();
        CHECK(dom.size() == L.index().get_ui());
        std::set<std::vector<mpz_class>> coords;
        for (auto& x : dom) {
            coords.insert(L.snf_coords(x));
            CHECK(L.reduce(x) == x);
        }
        CHECK(coords.size() == dom.size());
        // every point reduces into the domain and differs from it by a lattice vector
        std::set<Exponent> doms(dom.begin(), dom.end());
        std::mt19937_64 rng(13);
        std::uniform_int_distribution<long> e(-50, 50);
        for (int t = 0; t < 200; ++t) {
            Exponent m(L.dim());
            for (auto& x : m) x = e(rng);
            Exponent r = L.reduce(m);
            CHECK(doms.count(r) == 1);
            Exponent diff(L.dim());
            for (int i = 0; i < L.dim(); ++i) diff[i] = m[i] - r[i];
            CHECK(L.contains(diff));
            CHECK(L.snf_coords(m) == L.snf_coords(r));
        }
    }

    // boundary of the cube domain: points with a neighbour outside
    for (long n = 2; n <= 40; n += 7) {
        auto dom = Lattice::diagonal(2, n).fundamental_domain();
        long boundary = 0;
        for (auto& x : dom)
            if (x[0] == 0 || x[1] == 0 || x[0] == n - 1 || x[1] == n - 1) ++boundary;
        CHECK(static_cast<double>(boundary) / static_cast<double>(n * n) <= 4.0 / static_cast<double>(n));
    }
}

TEST_CASE("lattice specs")
{
    CHECK(parse_lattice("diag:4", 2) == Lattice::diagonal(2, 4));
    CHECK(parse_lattice("diag:2,3", 2) == Lattice::diagonal({2, 3}));
    CHECK(parse_lattice("hnf:3,1,2", 2) == Lattice::gamma_abc(3, 1, 2));
    CHECK(parse_lattice("cols:3,0;1,1", 2).basis() == Matrix::from_rows({{3, 1}, {0, 1}}));
    CHECK_THROWS_AS(parse_lattice("cube:3", 2), InputError);
    CHECK_THROWS_AS(parse_lattice("diag:x", 2), InputError);
    CHECK_THROWS_AS(parse_lattice("hnf:0,1,1", 2), InputError);
    CHECK_THROWS_AS(parse_lattice("cols:1,2;2,4", 2), InputError);
    CHECK(Lattice::from_generators(2, {{2, 0}, {0, 2}, {1, 1}}) == Lattice::from_columns(Matrix::from_rows({{2, 1}, {0, 1}})));
}
