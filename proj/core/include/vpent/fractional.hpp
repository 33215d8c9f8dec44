#pragma once

#include <vector>

#include "vpent/distribution.hpp"
#include "vpent/set_system.hpp"

namespace vpent {

// Output of the fractional covering/packing programs. For frac_chromatic the
// primal is indexed by family sets and the dual by atoms; for frac_clique the
// roles are swapped. objective = +inf signals an uncoverable support.
struct LpResult {
    double objective = 0.0;
    std::vector<double> primal;
    std::vector<double> dual;
    double duality_gap = 0.0;
};

// Fractional chromatic number: minimize sum c(J) subject to
// sum_{J containing x} c(J) >= 1 for every positive-mass atom x, c >= 0.
LpResult frac_chromatic(const SetSystem& system);

// Fractional clique number: maximize sum b_x over positive-mass atoms subject
// to sum_{x in J} b_x <= 1 for every family set, b >= 0 (atoms in no family
// set are capped at 1).
LpResult frac_clique(const SetSystem& system);

// The distribution pi* with p*_x = b_x / omega_frac built from an optimal
// frac_clique solution; solving the system under pi* attains log chi_frac for
// graph-derived systems.
Distribution entropy_maximizing_distribution(const SetSystem& system);

}  // namespace vpent
