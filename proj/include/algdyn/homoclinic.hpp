#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "algdyn/exec.hpp"
#include "algdyn/laurent.hpp"
#include "algdyn/lattice.hpp"
#include "algdyn/unitary.hpp"

namespace algdyn {

// Real sequence on the box |n|_inf <= box, zero outside.
struct Kernel {
    int dim = 2;
    int box = 0;
    // (2 box + 1)^dim values, last coordinate fastest
    std::vector<double> values;
    // estimate of the l1 mass the box misses; +inf when the sequence is not summable
    double tail_bound = 0.0;
    std::string source;

    double at(const Exponent& n) const;
    std::size_t index(const Exponent& n) const;
    Exponent point(std::size_t i) const;
    // l1 mass of the entries with |n|_inf >= r
    double mass_outside(int r) const;
};

// w at (-m, -n): 2^-(m+n+1) binom(m+n, n) for m, n >= 0, else 0.
mpq_class harmonic_value(long m, long n);
Kernel harmonic_kernel(int box);

// Fourier coefficients of conj(g) / conj(f) on the torus, by an FFT on a
// grid x grid ... grid sample.  When conj(f) has no zeros just outside the torus
// in some orthant the samples are taken on a slightly inflated torus there.
Kernel fft_kernel(const LaurentPoly& f, const LaurentPoly& g, int grid, int box, const ExecContext& exec = {},
                  bool alias_check = true);

struct ShellReport {
    // (N, sum of |w_n| over |n|_1 = N)
    std::vector<std::pair<int, double>> shells;
    double fitted_exponent = 0.0;
    double fitted_constant = 0.0;
    std::string verdict;
};

ShellReport shell_sums(const Kernel& k, int n_max);

// (g3* conv w)(-m, -n) in closed form, m >= 3, n >= 0, m + n > 3.
mpq_class g3_convolution_exact(long m, long n);

struct MultiplierDiagnostic {
    // per unitary point, median vanishing order along random rays
    std::vector<double> order_f, order_g;
    ShellReport shells;
    std::string verdict;
};

MultiplierDiagnostic multiplier_diagnostic(const LaurentPoly& f, const LaurentPoly& g,
                                           const std::vector<UnitaryPoint>& points, int grid, int box,
                                           const ExecContext& exec = {}, std::uint64_t seed = 0);

// Integer values on the box lo..hi (inclusive), zero outside.
struct IntegerConfiguration {
    int dim = 2;
    Exponent lo, hi;
    std::vector<long> values;

    static IntegerConfiguration zeros(const Exponent& lo, const Exponent& hi);
    static IntegerConfiguration random(const Exponent& lo, const Exponent& hi, long bound, std::uint64_t seed);
    std::size_t size() const { return values.size(); }
    bool inside(const Exponent& n) const;
    std::size_t index(const Exponent& n) const;
    Exponent point(std::size_t i) const;
    long at(const Exponent& n) const;
    long& ref(const Exponent& n) { return values[index(n)]; }
    long max_abs() const;
};

struct TorusConfiguration {
    int dim = 2;
    Exponent lo, hi;
    // values in [0, 1) and the real lifts they reduce from
    std::vector<double> values, lift;
    // max distance of f(shift) lift from Z, and from g* conv v, over the interior
    double residual = 0.0;
    double identity_defect = 0.0;
    double residual_bound = 0.0;

    std::size_t index(const Exponent& n) const;
    double at(const Exponent& n) const { return values[index(n)]; }
};

// distance on R / Z
double circle_distance(double a, double b);

// frac(w conv v) on the window of v shrunk by the kernel box.
TorusConfiguration symbolic_cover(const LaurentPoly& f, const LaurentPoly& g, const Kernel& k,
                                  const IntegerConfiguration& v, const ExecContext& exec = {});

// Smallest r with the l1 mass of k on |n|_inf >= r below budget, or -1.
int tail_radius(const Kernel& k, double budget);

struct PeriodicApprox {
    TorusConfiguration periodic;
    double achieved_eps = 0.0;
    int radius = 0;
};

// Replaces v by its L-periodic extension from the fundamental domain and compares the covers.
PeriodicApprox periodic_approx(const LaurentPoly& f, const LaurentPoly& g, const Kernel& k,
                               const IntegerConfiguration& v, const Lattice& L, double eps,
                               const ExecContext& exec = {});

struct GlueResult {
    // cover of the concatenated configuration, sampled on each window
    std::vector<TorusConfiguration> windows;
    std::vector<double> errors;
    int p_used = 0;
};

GlueResult specification_glue(const LaurentPoly& f, const LaurentPoly& g, const Kernel& k,
                              const std::vector<IntegerConfiguration>& patterns, double eps);

}  // namespace algdyn
