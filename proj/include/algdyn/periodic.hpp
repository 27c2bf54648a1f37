#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "algdyn/bigfloat.hpp"
#include "algdyn/exec.hpp"
#include "algdyn/lattice.hpp"
#include "algdyn/laurent.hpp"

namespace algdyn {

inline constexpr unsigned long kDefaultSnfCap = 400;

struct PeriodicOptions {
    long precision = kDefaultPrecision;
    unsigned long snf_cap = kDefaultSnfCap;
    ExecContext exec;
};

struct PeriodicCount {
    mpz_class index;
    RealBall log_count;
    RealBall rate;
    std::int64_t torus_dim = 0;
    std::vector<Character> zero_chars;
    std::optional<mpz_class> exact_count;
};

// Exact test f(omega) = 0 by cyclotomic divisibility.
bool is_zero_at_character(const LaurentPoly& f, const Character& w);

// log P_Gamma as a sum of log|f(omega)| over the characters where f does not
// vanish.  With want_exact the Smith-form count is computed as well and must agree.
PeriodicCount p_gamma(const LaurentPoly& f, const Lattice& L, bool want_exact = false,
                      const PeriodicOptions& opt = {});

struct SnfCount {
    mpz_class exact_count;
    std::int64_t torus_dim = 0;
};

// Torsion size and rank of the cokernel of multiplication by f on Z[Z^d / Gamma].
SnfCount snf_oracle(const LaurentPoly& f, const Lattice& L, unsigned long cap = kDefaultSnfCap);

struct GrowthRow {
    std::int64_t gamma_min = 0;
    mpz_class index;
    RealBall rate;
    std::int64_t torus_dim = 0;
};

std::vector<GrowthRow> growth_table(const LaurentPoly& f, const std::vector<Lattice>& lattices,
                                    const PeriodicOptions& opt = {});

struct TorsionLattice {
    Lattice lattice;
    mpz_class exponent;
};

// {n : omega^n = 1 for every given point}; all points must be torsion.
TorsionLattice torsion_lattice(int dim, const std::vector<Character>& points);

}  // namespace algdyn
