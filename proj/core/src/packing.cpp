#include "vpent/packing.hpp"

#include <cmath>
#include <limits>

#include "vpent/errors.hpp"

namespace vpent {

double phi(const Distribution& pi, std::span<const double> a) {
    if (static_cast<int>(a.size()) != pi.size())
        throw input_error("phi: a has wrong length");
    double v = 0.0;
    for (int x = 0; x < pi.size(); ++x) {
        if (a[x] < -1e-15 || a[x] > 1.0 + 1e-12)
            throw std::domain_error("phi: a outside [0,1] at atom " + pi.id(x));
        double p = pi.mass(x);
        if (p <= 0.0) continue;
        if (a[x] <= 0.0) return std::numeric_limits<double>::infinity();
        v -= p * std::log(std::min(a[x], 1.0));
    }
    return v;
}

PackingPoint evaluate_packing_point(const SetSystem& system,
                                    const std::vector<std::pair<int, double>>& weights) {
    double total = 0.0;
    for (const auto& [k, q] : weights) {
        if (k < 0 || k >= system.family_size())
            throw input_error("packing point references set index " + std::to_string(k));
        if (q < -1e-12) throw input_error("negative packing weight");
        total += q;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw input_error("packing weights sum to " + std::to_string(total) + ", expected 1");

    PackingPoint pt;
    pt.weights = weights;
    pt.a.assign(system.universe().size(), 0.0);
    for (const auto& [k, q] : weights)
        for (int x : system.set(k)) pt.a[x] += std::max(q, 0.0);
    return pt;
}

}  // namespace vpent
