#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace vpent::cli {

// Reproducibility record written next to each result file: what ran, on which
// input (by digest), with which seed and tolerances.
struct RunManifest {
    std::string subcommand;
    std::string input_digest;
    std::uint64_t seed = 0;
    std::map<std::string, double> tolerances;
    std::map<std::string, std::string> versions;
    std::vector<std::string> outputs;
};

std::string manifest_to_json(const RunManifest& m);

// Exit codes: 0 success (infinite-entropy answers included), 2 input error,
// 3 size/infeasibility error, 4 non-convergence with partial certificate.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vpent::cli
