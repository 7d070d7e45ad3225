/// @file planecurve.hpp
/// Intersection multiplicities of plane projective curves over the
/// rationals or a prime field, line/conic meeting patterns, and the
/// cuspidal-cubic reference configuration.
#pragma once

#include <array>
#include <map>
#include <string>

#include "workbench/rational.hpp"
#include "workbench/report.hpp"

namespace workbench {

/// The rationals (p == 0) or the prime field F_p.
struct FieldSpec {
    long p = 0;
};

FieldSpec rationals();
/// Throws std::invalid_argument unless p is prime.
FieldSpec prime_field(long p);
/// Convenience: 0 -> rationals, prime -> prime field, else throws.
FieldSpec field_of_characteristic(long p);

/// Homogeneous polynomial in x, y, z with rational coefficients.
struct HomPoly {
    std::map<std::array<int, 3>, Rat> terms;  ///< exponents (a,b,c) -> coeff
    bool zero() const { return terms.empty(); }
    int degree() const;  ///< total degree, -1 for the zero polynomial
};

/// Parses sparse term lists such as "x^3-y^2*z" or "-45*x^2+24*x*y+z^2".
/// Coefficients may be integers or fractions. Requires homogeneity.
HomPoly parse_hompoly(const std::string& text);
std::string hompoly_str(const HomPoly& f);

HomPoly hompoly_mul(const HomPoly& a, const HomPoly& b);
/// Substitutes variable i by sum_j m[i][j] * (new variable j).
HomPoly substitute_linear(const HomPoly& f, const std::array<std::array<Rat, 3>, 3>& m);
Rat hompoly_eval(const HomPoly& f, const std::array<Rat, 3>& point);

struct ProjPoint {
    std::array<Rat, 3> coords;
};

/// Intersection multiplicity: a nonnegative integer or infinite (the two
/// curves share a component through the point).
struct Mult {
    bool infinite = false;
    long value = 0;
    bool operator==(const Mult&) const = default;
};
inline Mult finite_mult(long v) { return {false, v}; }
inline Mult infinite_mult() { return {true, 0}; }
std::string mult_str(const Mult& m);

/// Exact intersection multiplicity of f and g at the point, over the given
/// field. Inputs must be nonzero homogeneous; coefficients and coordinates
/// are reduced into the field first.
Mult intersection_multiplicity(const FieldSpec& field, const HomPoly& f, const HomPoly& g,
                               const ProjPoint& p);

/// How a line meets a conic over the algebraic closure.
enum class ConicMeeting { two_simple_points, one_double_point, contained };
std::string conic_meeting_str(ConicMeeting m);

/// Restriction of the quadratic form to the line; handles characteristic 2
/// by the perfect-square criterion. `conic` must have degree 2, `line`
/// degree 1.
ConicMeeting line_meets_conic(const FieldSpec& field, const HomPoly& conic, const HomPoly& line);

/// Runs the cuspidal-cubic / conic configuration checks over the field and
/// reports each outcome (cusp meeting number, residual point behavior,
/// tangency patterns).
Report verify_special_config(const FieldSpec& field);

}  // namespace workbench
