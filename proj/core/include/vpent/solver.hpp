#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "vpent/distribution.hpp"
#include "vpent/packing.hpp"
#include "vpent/set_system.hpp"

namespace vpent {

// Result of the conditional-gradient minimization of phi_pi over the
// vertex-packing set. The bracket is rigorous: phi(value) is an upper bound
// by membership, and rescaling a by (1+gap) yields a witness of the
// lower-bound condition, losing at most log(1+gap).
//
// Infinite-entropy instances (support not coverable by the family) are
// reported with value = +inf, gap = +inf and bracket [0, +inf).
struct EntropyCertificate {
    PackingPoint point;
    double value = 0.0;
    double gap = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    long iterations = 0;
    bool converged = false;
};

struct SolveOptions {
    double tol = 1e-8;
    long max_iters = 200000;
    bool away_steps = false;   // pairwise away steps; off by default
    std::uint64_t init_seed = 0;  // 0 = deterministic greedy cover start
};

// Conditional-gradient duality gap of phi_pi at the point:
//   g = max over family sets J of (sum_{x in J, p_x>0} p_x / a(x)) - 1.
// g <= 0 iff a satisfies the lower-bound condition; +inf when a vanishes on
// positive mass inside some set.
double fw_gap(const SetSystem& system, const Distribution& pi, const PackingPoint& point);

// Linear minimization oracle: the family index maximizing
// sum_{x in J} p_x / a(x); ties broken by lowest index.
// Throws input_error naming the offending atom if a = 0 on positive mass.
int lmo(const SetSystem& system, const Distribution& pi, std::span<const double> a);

// Minimize phi_pi over the vertex-packing set of the system by conditional
// gradient with exact 1-D line search (bisection on the segment derivative).
// pi must use exactly the universe's symbol ids (any order).
EntropyCertificate solve_entropy(const SetSystem& system, const Distribution& pi,
                                 const SolveOptions& opts = {});

struct CertificateCheck {
    bool is_upper_valid = false;
    bool is_lower_valid = false;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double gap = 0.0;
};

// Check a packing point: the upper bound holds by construction; the lower
// bound is accepted when the gap is at most tol. Also verifies that the
// rescaled witness b = min(1, a * (1 + max(g, 0))) satisfies the lower-bound
// condition on every family set within 1e-9.
CertificateCheck verify_certificate(const SetSystem& system, const Distribution& pi,
                                    const PackingPoint& point, double tol);

// Closed form for odd cycles C_{2n+1}: H(pi) - log n, valid when every
// cyclically adjacent pair satisfies p_k + p_{k+1} <= 1/n. Returns nullopt
// when that hypothesis fails (use solve_entropy instead). The cyclic order is
// the atom order of pi. Throws input_error unless pi has exactly 2n+1 atoms.
std::optional<double> cycle_entropy(int n, const Distribution& pi);

}  // namespace vpent
