#include "vpent/set_system.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "vpent/errors.hpp"

namespace vpent {

SetSystem::SetSystem(Distribution universe, std::vector<std::vector<int>> family,
                     SystemOrigin origin)
    : universe_(std::move(universe)), family_(std::move(family)), origin_(origin) {
    if (family_.empty()) throw input_error("set family is empty");
    const int n = universe_.size();
    std::set<std::vector<int>> seen;
    for (auto& s : family_) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int x : s)
            if (x < 0 || x >= n) throw input_error("set member outside universe");
        if (!seen.insert(s).second) throw input_error("duplicate set in family");
    }
    memberships_.assign(n, {});
    for (int k = 0; k < family_size(); ++k)
        for (int x : family_[k]) memberships_[x].push_back(k);
}

SetSystem SetSystem::from_ids(Distribution universe,
                              const std::vector<std::vector<std::string>>& sets,
                              SystemOrigin origin) {
    std::vector<std::vector<int>> family;
    family.reserve(sets.size());
    for (const auto& s : sets) {
        std::vector<int> t;
        t.reserve(s.size());
        for (const auto& id : s) {
            int i = universe.index_of(id);
            if (i < 0) throw input_error("set member '" + id + "' is not a universe symbol");
            t.push_back(i);
        }
        family.push_back(std::move(t));
    }
    return SetSystem(std::move(universe), std::move(family), origin);
}

bool SetSystem::covers_support() const {
    for (int x = 0; x < universe_.size(); ++x)
        if (universe_.mass(x) > 0.0 && memberships_[x].empty()) return false;
    return true;
}

SetSystem SetSystem::with_extra_sets(const std::vector<std::vector<int>>& extra) const {
    std::vector<std::vector<int>> family = family_;
    family.insert(family.end(), extra.begin(), extra.end());
    return SetSystem(universe_, std::move(family), origin_);
}

}  // namespace vpent
