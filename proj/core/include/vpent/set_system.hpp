#pragma once

#include <string>
#include <vector>

#include "vpent/distribution.hpp"

namespace vpent {

enum class SystemOrigin { explicit_family, graph_derived, graphon_quotient };

// A finite universe with masses plus a family of subsets. This is the solver
// input everything else reduces to. Sets are stored as sorted atom-index
// vectors; the family is non-empty and duplicate-free.
class SetSystem {
public:
    SetSystem(Distribution universe, std::vector<std::vector<int>> family, SystemOrigin origin);

    // Convenience constructor taking sets of symbol ids.
    static SetSystem from_ids(Distribution universe,
                              const std::vector<std::vector<std::string>>& sets,
                              SystemOrigin origin);

    const Distribution& universe() const { return universe_; }
    const std::vector<std::vector<int>>& family() const { return family_; }
    const std::vector<int>& set(int k) const { return family_[k]; }
    int family_size() const { return static_cast<int>(family_.size()); }
    SystemOrigin origin() const { return origin_; }

    // For each atom, the family indices containing it.
    const std::vector<std::vector<int>>& memberships() const { return memberships_; }

    // True when every positive-mass atom belongs to at least one family set.
    bool covers_support() const;

    // A copy with (validated) extra sets appended to the family.
    SetSystem with_extra_sets(const std::vector<std::vector<int>>& extra) const;

private:
    Distribution universe_;
    std::vector<std::vector<int>> family_;
    SystemOrigin origin_;
    std::vector<std::vector<int>> memberships_;
};

}  // namespace vpent
