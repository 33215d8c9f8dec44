#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vpent {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// The release gate: every numbered end-to-end check with its pinned
// tolerance. Used by the acceptance test binary and the `selftest`
// subcommand.
std::vector<CriterionResult> run_all_criteria();

// Prints one PASS/FAIL line per criterion; returns true iff all pass.
bool run_selftest(std::ostream& out);

}  // namespace vpent
