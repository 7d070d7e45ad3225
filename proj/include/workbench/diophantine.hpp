/// @file diophantine.hpp
/// Enumeration of numerical solutions to the degree constraint
/// ksq + sum of gaps = 9, plus closed-form degree evaluators and
/// divisibility scans.
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "workbench/dualgraph.hpp"
#include "workbench/rational.hpp"

namespace workbench {

/// (K.S)^2 / S^2 for a one-dimensional span; throws if sigma_sq is zero.
Rat ksq_from_sigma(const Rat& k_dot_sigma, const Rat& sigma_sq);

/// Closed-form selfintersection degree for the tabulated chain families,
/// parameterized by the curve invariant g >= 2 and, where applicable, the
/// chain length parameter k >= 0. Family keys:
///   "[3,2^k]" (g,k), "[4]" (g), "[3,2^k,3]" (g,k), "[2,3,2]" (g),
///   "[2;[2],[2],[2^k,3]]" (g,k), "[2,3,2^k]" (g, 2 <= k <= 4), "[2,4]" ().
/// Throws std::domain_error on parameters outside the family's domain.
Rat ksq_formula(const std::string& family, long g, long k = 0);

/// ksq + sum of component gaps - 9; zero on every consistent model.
Rat noether_defect(const Rat& ksq, const DynkinType& type);

/// Output of one enumeration: named integer columns, sorted rows.
struct SolutionSet {
    std::string id;
    std::vector<std::string> varnames;
    std::vector<std::vector<long>> rows;
    unsigned long long scanned = 0;

    bool same_solutions(const SolutionSet& other) const {
        return varnames == other.varnames && rows == other.rows;
    }
};

/// Runs one of the preconfigured searches: "D1".."D5", "GEN-1".."GEN-3".
/// Throws std::invalid_argument on an unknown id.
SolutionSet run_search(const std::string& id);

/// Independent re-derivation of the same search by unoptimized nested
/// loops over the stated parameter ranges (closed-form gap values).
SolutionSet run_search_oracle(const std::string& id);

/// All pairs (g, a) with g in [g_lo, g_hi], a in moduli, such that
/// denominator(g) divides numerator(g) * base * a. Sorted.
std::vector<std::pair<long, long>> divisibility_search(
    const std::function<Int(long)>& numerator, const std::function<Int(long)>& denominator,
    const Int& base, const std::vector<long>& moduli, long g_lo, long g_hi);

/// Deterministic text form: "vars ..." header then one row per line.
std::string solution_text(const SolutionSet& s);

/// Parses the text form back (for comparing against stored files).
SolutionSet parse_solution_text(const std::string& id, const std::string& text);

}  // namespace workbench
