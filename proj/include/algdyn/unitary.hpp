#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "algdyn/bigfloat.hpp"
#include "algdyn/intpoly.hpp"
#include "algdyn/laurent.hpp"
#include "algdyn/lattice.hpp"
#include "algdyn/periodic.hpp"

namespace algdyn {

// A root of an irreducible integer polynomial together with a disc isolating it.
struct AlgebraicNumber {
    IntPoly min_poly;
    Complex enclosure;
};

// The root of a.min_poly inside a.enclosure, re-isolated at `prec` bits.
AlgebraicNumber refine(const AlgebraicNumber& a, long prec);
AlgebraicNumber conj(const AlgebraicNumber& a);

struct UnitaryPoint {
    std::vector<AlgebraicNumber> coords;
    std::vector<bool> torsion;
    // multiplicative order per coordinate, 0 when not a root of unity
    std::vector<unsigned long> orders;
    bool is_torsion = false;
};

// Same minimal polynomials and overlapping enclosures coordinatewise.
bool same_point(const UnitaryPoint& a, const UnitaryPoint& b);

struct UnitaryOptions {
    long precision = kDefaultPrecision;
    int degree_cap = 64;
    // 0 picks the full search bound for each degree
    unsigned long order_cap = 0;
};

struct UnitarySolution {
    bool infinite = false;
    std::string diagnostic;
    // eliminant in the first parameter
    IntPoly eliminant;
    std::vector<UnitaryPoint> points;
};

// s(t) = (2t + i(1 - t^2)) / (1 + t^2), a bijection from R onto the circle minus -i.
Complex circle_param(const RealBall& t, long prec);
// The point s(t) for a real root t of q, with its own minimal polynomial.
AlgebraicNumber from_parameter(const IntPoly& q, RealRoot t, long prec);

UnitarySolution solve_unitary_bivariate(const LaurentPoly& f, const UnitaryOptions& opt = {});

struct VLinearSolution {
    // integer polynomial in c = (u + 1/u) / 2 whose roots in [-1, 1] carry U(f)
    IntPoly c_eliminant;
    std::vector<RealRoot> c_roots;
    std::vector<UnitaryPoint> points;
};

// f of degree exactly one in the second variable.
VLinearSolution solve_unitary_v_linear(const LaurentPoly& f, const UnitaryOptions& opt = {});

// Refines every coordinate to `precision` bits and checks that f vanishes there.
bool verify_point(const LaurentPoly& f, const UnitaryPoint& p, long precision);

UnitaryPoint classify_torsion(UnitaryPoint p, unsigned long order_cap = 0);

struct CriticalPoint {
    AlgebraicNumber t;
    RealRoot root;
    // |g(s(t))|^2
    RealBall phi;
};

struct CriticalPoints {
    // numerator of phi'(t): N'(t)(1 + t^2) - 2 n t N(t) with phi = N / (1 + t^2)^n
    IntPoly numerator;
    std::vector<IntPoly> factors;
    bool constant = false;
    std::vector<CriticalPoint> points;
};

CriticalPoints critical_points_on_circle(const IntPoly& g, long prec = kDefaultPrecision);

// Rational angles of a torsion point, or nothing if some coordinate is not a root of unity.
std::optional<Character> to_character(const UnitaryPoint& p);
TorsionLattice torsion_lattice(const std::vector<UnitaryPoint>& points);

nlohmann::json to_json(const AlgebraicNumber& a);
nlohmann::json to_json(const UnitaryPoint& p);
// Reads coordinates from {coords: [{min_poly, approx: {re, im}, radius}]}.
UnitaryPoint point_from_json(const nlohmann::json& j);

}  // namespace algdyn
