// The verification suite behind `gaea verify` and the acceptance test binary:
// nine property-based and scaled-down quantitative checks, each with its
// tolerances pinned in code. Every criterion reports one pass/fail line.
#pragma once

#include "gaea/run_record.hpp"

#include <string>
#include <vector>

namespace gaea::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceConfig {
    /// Directory holding the frozen golden records (criterion 9).
    std::string golden_dir = "data/golden";
    /// Run only these criterion ids (empty = all).
    std::vector<int> only;
    /// Print progress lines while running.
    bool verbose = false;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);

/// Formats "PASS criterion 3: ..." / "FAIL criterion 3: ..." lines.
std::string format_result(const CriterionResult& r);

/// True when every result passed.
bool all_passed(const std::vector<CriterionResult>& results);

namespace detail {
/// The exact runs frozen as golden records; used by the generator tool.
RunRecord make_golden_rwc();
RunRecord make_golden_search();
}  // namespace detail

}  // namespace gaea::acceptance
