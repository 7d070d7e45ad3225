/// @file dualgraph.hpp
/// Weighted dual graphs of contractible curve configurations: parsing,
/// intersection matrices, discrepancies, gap arithmetic.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "workbench/linalg.hpp"
#include "workbench/rational.hpp"
#include "workbench/report.hpp"

namespace workbench {

/// Parse failure; `position` is the 0-based index of the offending input.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// A weighted tree. Vertex j carries weight >= 2; edges form a tree.
struct DualGraph {
    std::vector<int> weights;
    std::vector<std::pair<int, int>> edges;
    int vertex_count() const { return static_cast<int>(weights.size()); }
};

/// Chain with the given weights (nonempty, each >= 2).
DualGraph make_chain(const std::vector<int>& weights);
/// Star: central vertex plus exactly three nonempty chain branches.
DualGraph make_star(int center_weight, const std::vector<std::vector<int>>& branches);

/// Canonical isomorphism key; equal keys iff isomorphic weighted trees.
std::string canonical_key(const DualGraph& g);

/// A finite multiset of weighted trees, held in canonical sorted form.
struct DynkinType {
    std::vector<DualGraph> components;
    bool empty() const { return components.empty(); }
    bool operator==(const DynkinType& other) const;
    bool operator!=(const DynkinType& other) const { return !(*this == other); }
};

/// Builds the canonical multiset from arbitrary graphs.
DynkinType dynkin_of(std::vector<DualGraph> comps);

/// Parses expressions like "[3,2^4]", "[2;[2],[2],[2,3]]", "2[3]+[2^5]".
/// Throws ParseError with the offending position.
DynkinType parse_dynkin(const std::string& text);

/// Canonical text forms; parse(serialize(x)) == x for chains and stars.
std::string serialize(const DualGraph& g);
std::string serialize(const DynkinType& t);

/// Symmetric intersection matrix: diagonal -weight, 1 on adjacency.
IntMatrix intersection_matrix(const DualGraph& g);

/// Negative definiteness of the intersection matrix (contractibility).
bool is_negative_definite(const DualGraph& g);

struct DiscrepancyVector {
    std::vector<Rat> entries;  ///< one value per vertex, in graph order
    bool klt = false;          ///< all entries < 1
};

/// Solves M e = d with d_j = 2 - weight_j. Requires negative definiteness.
DiscrepancyVector discrepancies(const DualGraph& g);

/// Boundary variant: solves M e = d - t for nonnegative rational t.
DiscrepancyVector discrepancies_with_boundary(const DualGraph& g, const std::vector<Rat>& t);

/// Largest discrepancy entry.
Rat coefficient(const DualGraph& g);

/// gap = vertex_count + sum_j e_j (2 - weight_j).
Rat gap(const DualGraph& g);
Int gap_floor(const DualGraph& g);

/// (j - 2) * (m + 1) for j >= 3, m >= 0; throws std::invalid_argument else.
Int spectral_value_chain(long j, long m);

/// Absolute value of det of the intersection matrix.
Int determinant(const DualGraph& g);

inline int vertex_count(const DualGraph& g) { return g.vertex_count(); }

/// One row of the reference gap table.
struct TableRow {
    std::string label;
    DualGraph graph;
    Rat gap_value;
    Int floor_value;
};

/// All 34 instantiated rows of the reference gap table, in fixed order.
std::vector<TableRow> table_e35_rows();

/// Compares computed rows against stored "label gap floor" lines.
Report verify_table_e35(const std::string& expected_table_text);

}  // namespace workbench
