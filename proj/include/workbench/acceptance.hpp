/// @file acceptance.hpp
/// The release verification battery: eight numbered criteria covering the
/// gap table, coefficient spot values, the enumeration searches, the
/// degree-plus-gap identity, the bundled construction fixtures, the tail
/// coefficient identity, the plane-curve configuration, and randomized
/// property suites. All checks are exact.
#pragma once

#include <string>
#include <vector>

#include "workbench/report.hpp"

namespace workbench {

/// One numbered verification block with its detailed check records.
struct CriterionResult {
    int number = 0;
    std::string title;
    Report report;
    std::string note;  ///< optional informational remark, printed with the line
    bool pass() const { return report.ok(); }
};

/// Runs the whole battery. `fixture_dir` must contain the bundled
/// construction scripts (*.cons) and the expected/ data files. Throws
/// std::runtime_error when a bundled file cannot be read.
std::vector<CriterionResult> run_acceptance(const std::string& fixture_dir);

/// One line per criterion, "PASS"/"FAIL" first, then a final summary line.
std::string acceptance_text(const std::vector<CriterionResult>& results);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace workbench
