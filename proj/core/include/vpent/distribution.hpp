#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace vpent {

struct Atom {
    std::string id;
    double mass = 0.0;
};

// Finite atomic probability distribution over named symbols.
// Immutable after construction; masses must be nonnegative and sum to 1
// within 1e-12, symbol ids must be unique.
class Distribution {
public:
    explicit Distribution(std::vector<Atom> atoms);

    int size() const { return static_cast<int>(atoms_.size()); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::string& id(int i) const { return atoms_[i].id; }
    double mass(int i) const { return atoms_[i].mass; }

    // -1 when the id is unknown.
    int index_of(const std::string& id) const;

    // Indices of atoms with strictly positive mass.
    std::vector<int> support() const;

    static Distribution uniform(const std::vector<std::string>& ids);

private:
    std::vector<Atom> atoms_;
    std::unordered_map<std::string, int> index_;
};

// H(pi) = sum of -p log p in nats, with 0 log 0 = 0.
double shannon_entropy(const Distribution& pi);

}  // namespace vpent
