/// @file lattice.hpp
/// Picard-lattice bookkeeping for iterated point blow-ups of rational
/// surfaces, contraction of curve configurations, and log del Pezzo checks.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "workbench/dualgraph.hpp"
#include "workbench/linalg.hpp"
#include "workbench/rational.hpp"
#include "workbench/report.hpp"

namespace workbench {

/// Geometrically inconsistent input (genus violations, bad contractions).
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A base surface: named basis of the intersection lattice, its Gram
/// matrix, and the canonical class in that basis.
struct BaseSurface {
    std::vector<std::string> names;
    IntMatrix gram;
    std::vector<Int> canonical;

    static BaseSurface plane();            ///< H^2 = 1, K = -3H
    static BaseSurface hirzebruch(int n);  ///< s^2 = -n, f^2 = 0, s.f = 1
    static BaseSurface custom(std::vector<std::string> names, IntMatrix gram,
                              std::vector<Int> canonical);
    /// Parses the "names / gram / k" text form used by fixture files.
    static BaseSurface from_text(const std::string& text);
};

/// A smooth surface built from a base by successive point blow-ups, with a
/// set of tracked curve classes.
class SurfaceState {
  public:
    explicit SurfaceState(const BaseSurface& base);

    /// Declares a curve by its class in the current basis; shorter vectors
    /// are padded with zeros. Checks arithmetic-genus consistency.
    void declare_curve(const std::string& name, std::vector<Int> cls,
                       std::optional<long> expected_genus = std::nullopt);
    /// Single-generator bases only: class d * H - sum m_i e_i over the
    /// exceptional classes created so far.
    void declare_curve_dm(const std::string& name, const Int& d, const std::vector<Int>& mults,
                          std::optional<long> expected_genus = std::nullopt);

    /// Blows up one point lying on the listed curves with the listed
    /// multiplicities (>= 1). Returns the new curve's name ("E1", "E2", ...).
    /// Throws GeometryError if any tracked curve's genus turns invalid.
    std::string blow_up(const std::vector<std::pair<std::string, long>>& incidence);

    Int pairing(const std::string& a, const std::string& b) const;
    Int self_int(const std::string& name) const;
    Int k_degree(const std::string& name) const;  ///< K . C
    Int genus(const std::string& name) const;     ///< arithmetic genus
    Int k_selfint() const;                        ///< K . K
    int rank() const;
    int blow_up_count() const { return blow_ups_; }
    bool has_curve(const std::string& name) const;
    const std::vector<std::string>& curve_names() const { return order_; }
    std::vector<Int> curve_class(const std::string& name) const;

  private:
    const std::vector<Int>& cls(const std::string& name) const;
    Int pair_classes(const std::vector<Int>& a, const std::vector<Int>& b) const;
    void check_genus(const std::string& name) const;

    IntMatrix gram_;
    std::vector<Int> k_;
    std::vector<std::string> order_;
    std::map<std::string, std::vector<Int>> curves_;
    int base_rank_ = 0;
    int blow_ups_ = 0;
};

/// Result of contracting a validated curve configuration.
struct SingularModel {
    SurfaceState state;
    std::vector<std::string> contracted;
    std::vector<std::vector<std::string>> components;
    std::vector<DualGraph> component_graphs;
    std::vector<DiscrepancyVector> component_discrepancies;
    std::map<std::string, Rat> gamma;
    bool all_klt = true;
};

/// Validates the configuration (rational, self-intersection <= -2, pairwise
/// meetings in {0,1}, no cycles, negative definite) and computes the
/// contraction data. Throws GeometryError naming the offending curves.
SingularModel contract(const SurfaceState& s, const std::vector<std::string>& names);

DynkinType dynkin_type(const SingularModel& m);
int picard_rank(const SingularModel& m);

/// Selfintersection of the canonical class on the contracted model.
Rat anticanonical_selfint(const SingularModel& m);

/// -(K + Gamma) . C for a tracked curve that was not contracted; throws
/// std::invalid_argument for contracted or unknown curves.
Rat anticanonical_degree(const SingularModel& m, const std::string& name);

struct LogDpResult {
    bool value;
    Report report;
};

/// Rank-one log del Pezzo test: Picard rank 1, all singularities klt,
/// positive canonical selfintersection, all tracked curve degrees positive.
LogDpResult is_rank_one_log_dp(const SingularModel& m);

/// Executes a construction script (see README for the line format) and
/// reports one check per `expect` line. `loader` resolves file references
/// on `base abstract FILE` lines.
Report run_construction(const std::string& script, const std::string& script_name,
                        const std::function<std::string(const std::string&)>& loader);

/// Same as run_construction but also hands back the singular model the
/// script built (absent when the script never contracted or expected).
struct ConstructionOutcome {
    Report report;
    std::optional<SingularModel> model;
};
ConstructionOutcome run_construction_full(
    const std::string& script, const std::string& script_name,
    const std::function<std::string(const std::string&)>& loader);

}  // namespace workbench
