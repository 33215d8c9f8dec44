#include "vpent/distribution.hpp"

#include <cmath>
#include <utility>

#include "vpent/errors.hpp"

namespace vpent {

Distribution::Distribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw input_error("distribution has no atoms");
    double total = 0.0;
    for (int i = 0; i < static_cast<int>(atoms_.size()); ++i) {
        const Atom& a = atoms_[i];
        if (a.id.empty()) throw input_error("empty symbol id");
        if (!(a.mass >= 0.0)) throw input_error("negative mass for symbol '" + a.id + "'");
        if (!index_.emplace(a.id, i).second)
            throw input_error("duplicate symbol id '" + a.id + "'");
        total += a.mass;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw input_error("masses sum to " + std::to_string(total) + ", expected 1");
}

int Distribution::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> Distribution::support() const {
    std::vector<int> s;
    for (int i = 0; i < size(); ++i)
        if (atoms_[i].mass > 0.0) s.push_back(i);
    return s;
}

Distribution Distribution::uniform(const std::vector<std::string>& ids) {
    if (ids.empty()) throw input_error("uniform distribution needs at least one symbol");
    std::vector<Atom> atoms;
    atoms.reserve(ids.size());
    const double p = 1.0 / static_cast<double>(ids.size());
    for (const auto& id : ids) atoms.push_back({id, p});
    // nudge the last mass so the sum is exactly 1 in floating point
    double total = 0.0;
    for (size_t i = 0; i + 1 < atoms.size(); ++i) total += atoms[i].mass;
    atoms.back().mass = 1.0 - total;
    return Distribution(std::move(atoms));
}

double shannon_entropy(const Distribution& pi) {
    double h = 0.0;
    for (const Atom& a : pi.atoms())
        if (a.mass > 0.0) h -= a.mass * std::log(a.mass);
    return h;
}

}  // namespace vpent
