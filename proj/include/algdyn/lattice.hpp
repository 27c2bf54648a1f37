#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "algdyn/laurent.hpp"

namespace algdyn {

// Dense integer matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    static Matrix identity(int n);
    static Matrix from_rows(const std::vector<std::vector<long>>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    mpz_class& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const mpz_class& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    Matrix transposed() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<mpz_class> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
mpz_class determinant(const Matrix& m);

// Upper triangular column Hermite form of a full-rank d x k generator matrix:
// positive diagonal, 0 <= H(i,j) < H(i,i) for j > i.
Matrix hermite_columns(const Matrix& gens);

// Smith form U * M * V = D with diagonal d_1 | d_2 | ...; zero invariant
// factors come last.  With `transforms` false, U and V are left empty and the
// divisibility chain is not enforced (the diagonal still has the same product
// and the same number of zeros).  Uinv is the inverse of U.
struct SmithForm {
    Matrix U, V, Uinv;
    std::vector<mpz_class> diag;
};
SmithForm smith_form(Matrix m, bool transforms = true);

struct SNFData {
    Matrix U, V;
    std::vector<mpz_class> d;
};

// Point of the dual group of Z^d / Gamma: rational angles in [0, 1).
struct Character {
    std::vector<mpq_class> angles;
    mpz_class order;

    bool operator==(const Character& o) const { return angles == o.angles; }
    // angles . m mod 1
    mpq_class phase(const Exponent& m) const;
};

// Character with the given rational angles (reduced mod 1).
Character make_character(std::vector<mpq_class> angles);

// Finite-index subgroup of Z^d.
class Lattice {
public:
    Lattice() = default;
    // Columns of `gens` generate the subgroup; must have rank d.
    static Lattice from_columns(const Matrix& gens);
    static Lattice diagonal(int dim, long n);
    static Lattice diagonal(const std::vector<long>& n);
    // Columns (a, 0), (b, c).
    static Lattice gamma_abc(long a, long b, long c);
    // Subgroup generated by arbitrary vectors, which must span a full-rank sublattice.
    static Lattice from_generators(int dim, const std::vector<Exponent>& gens);

    int dim() const { return dim_; }
    const Matrix& basis() const { return h_; }
    const mpz_class& index() const { return index_; }
    const SNFData& snf() const { return snf_; }

    bool contains(const Exponent& m) const;
    // Representative of m in the Hermite box.
    Exponent reduce(const Exponent& m) const;
    // Hermite box, lexicographic order.
    std::vector<Exponent> fundamental_domain() const;
    // (U m)_i mod d_i.
    std::vector<mpz_class> snf_coords(const Exponent& m) const;
    bool is_cube() const;

    bool operator==(const Lattice& o) const { return h_ == o.h_; }
    std::string to_string() const;

private:
    int dim_ = 0;
    Matrix h_;
    mpz_class index_;
    SNFData snf_;
    void init(Matrix h);
};

std::int64_t gamma_min(const Lattice& L);

// Characters of Z^d / Gamma indexed 0 .. index-1, lexicographic in SNF
// coordinates (last coordinate fastest).
class CharacterSpace {
public:
    explicit CharacterSpace(const Lattice& L);
    std::uint64_t size() const { return size_; }
    // Common denominator: the largest invariant factor.
    std::int64_t exponent() const { return e_; }
    // SNF coordinates of the i-th character.
    std::vector<std::int64_t> coords(std::uint64_t i) const;
    // Numerators a with angles a / exponent() for the given SNF coordinates.
    std::vector<std::int64_t> numerators(const std::vector<std::int64_t>& k) const;
    Character at(std::uint64_t i) const;
    std::vector<Character> all() const;
    // Per-coordinate step vectors: numerators(k) = sum_i k_i * step(i) mod exponent.
    const std::vector<std::vector<std::int64_t>>& steps() const { return steps_; }
    const std::vector<std::int64_t>& moduli() const { return mod_; }

private:
    int dim_;
    std::uint64_t size_;
    std::int64_t e_;
    std::vector<std::int64_t> mod_;
    std::vector<std::vector<std::int64_t>> steps_;
};

// "diag:N", "cols:a,b;c,d" (column-major), "hnf:a,b,c".
Lattice parse_lattice(const std::string& spec, int dim);

}  // namespace algdyn
