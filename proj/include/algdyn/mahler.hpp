#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "algdyn/bigfloat.hpp"
#include "algdyn/exec.hpp"
#include "algdyn/laurent.hpp"

namespace algdyn {

enum class MahlerMethod { lattice, qmc, jensen };

std::string to_string(MahlerMethod m);

struct MahlerEstimate {
    RealBall value;
    MahlerMethod method = MahlerMethod::lattice;
    std::uint64_t n = 0;
    // standard error for qmc, 0 for jensen, absent for lattice
    std::optional<double> err_est;
    // qmc only: samples with |f| below the singular cutoff
    std::uint64_t skipped = 0;
    bool skip_warning = false;
};

// Mean of log_0|f| over the characters of N Z^d.
MahlerEstimate mahler_lattice(const LaurentPoly& f, long N, long prec = kDefaultPrecision, const ExecContext& exec = {});

// Randomized quasi-Monte Carlo average of log|f| over the torus: a Sobol
// sequence (up to 10 variables) under 16 independent digital shifts drawn from seed.
MahlerEstimate mahler_qmc(const LaurentPoly& f, std::uint64_t samples, std::uint64_t seed,
                          const ExecContext& exec = {});

// log|lead| + sum of log+|root| for a one-variable polynomial.
MahlerEstimate jensen_d1(const LaurentPoly& p, long prec = kDefaultPrecision);

struct Entropy {
    bool infinite = false;
    RealBall value;
    std::string method;
    // lattice parameters used by the lattice route (0 otherwise)
    long n_coarse = 0, n_fine = 0;
};

// +inf for f = 0; Jensen for one variable; extrapolated lattice sums otherwise.
Entropy entropy(const LaurentPoly& f, long prec = kDefaultPrecision, const ExecContext& exec = {});

}  // namespace algdyn
