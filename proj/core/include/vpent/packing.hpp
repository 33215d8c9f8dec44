#pragma once

#include <span>
#include <utility>
#include <vector>

#include "vpent/distribution.hpp"
#include "vpent/set_system.hpp"

namespace vpent {

// A point of the vertex-packing set: convex weights over family sets plus the
// induced function a(x) = sum of q_k over sets containing x, aligned with the
// universe atom order.
struct PackingPoint {
    std::vector<std::pair<int, double>> weights;  // (family index, q_k)
    std::vector<double> a;
};

// phi_pi(a) = sum over atoms of -p_x log a(x), in nats. Returns +infinity
// exactly when some positive-mass atom has a(x) = 0. Requires a(x) in [0,1].
double phi(const Distribution& pi, std::span<const double> a);

// Materialize a packing point from weights; validates q_k >= 0 and
// sum q_k = 1 within 1e-10, and recomputes a exactly as the indicator sum.
PackingPoint evaluate_packing_point(const SetSystem& system,
                                    const std::vector<std::pair<int, double>>& weights);

}  // namespace vpent
