#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vpent/distribution.hpp"
#include "vpent/set_system.hpp"

namespace vpent {

enum class CoverMethod { exact, greedy, random };

// One covering experiment: boxes_used boxes of dimension ell reach
// covered_mass; rate = log(boxes_used) / ell. boxes_used is a whole number
// but kept as double because simulated counts grow like e^(ell * H) and
// overflow any integer type. reached_target is false when the 1 - lambda
// coverage goal was not attainable (finite-truncation blow-up, M cap).
struct CoverReport {
    int ell = 0;
    double lambda = 0.0;
    double boxes_used = 0.0;
    double covered_mass = 0.0;
    double covered_stderr = 0.0;
    double rate = 0.0;
    CoverMethod method = CoverMethod::exact;
    bool reached_target = false;
};

// Exact minimum number of ell-dimensional boxes (products of family sets)
// whose union has product-measure at least 1 - lambda. Branch and bound over
// deduplicated, domination-filtered candidate boxes with a greedy incumbent
// and mass-based lower-bound pruning. Size limits: universe <= 10 atoms,
// |family|^ell <= 1e6 candidates; throws size_error beyond them.
CoverReport exact_min_cover(const SetSystem& system, int ell, double lambda);

// Same enumeration, greedy selection only (no optimality proof).
CoverReport greedy_cover(const SetSystem& system, int ell, double lambda);

// True iff the sequence's empirical log-average of a is within delta of
// -phi_pi(a). Sequence entries are universe atom indices; they must have
// positive mass and a > 0 there.
bool typical_set_check(const Distribution& pi, std::span<const double> a, double delta,
                       std::span<const int> sequence);

// Countable family of mutually independent events J_1, J_2, ... given by
// their masses, sampled through the two-part mixture used for the countable
// upper bound: with probability epsilon pick J_k with weight 2^-k, otherwise
// uniformly among J_1..J_n. Points are lazy independent-bit sequences; bit k
// decides membership in J_k.
struct CountableFamilySampler {
    enum class Rule { half, all_but_one, explicit_list };

    Rule rule = Rule::half;
    double m1 = 0.5;
    double m_inf = 0.5;
    std::vector<double> masses;  // explicit_list only
    int mixture_n = 1;
    double mixture_epsilon = 0.01;

    double event_mass(int k) const;  // k >= 1
    void validate() const;
};

struct RandomCoverOptions {
    int ell = 1;
    double lambda = 0.5;
    long trials = 10000;
    std::uint64_t seed = 0;
    double resolution = 1.05;     // binary search resolves M to this factor
    double max_log_boxes = 700.0; // cap on log M
};

// Estimate the minimal number M of independently sampled boxes needed to
// cover 1 - lambda of the product space, by binary search on M. Test points
// are IID; per point, coverage by the union of M boxes is simulated from its
// exact conditional law 1 - (1 - q)^M with q = prod a(x_i) (the boxes are
// marginalized analytically, which keeps M ~ e^(ell * H) tractable).
// Deterministic per seed; per-point streams derive from the seed.
CoverReport random_cover_rate(const SetSystem& system, const std::vector<double>& weights,
                              const RandomCoverOptions& opts);
CoverReport random_cover_rate(const CountableFamilySampler& sampler,
                              const RandomCoverOptions& opts);

struct CoverageProbe {
    double empirical = 0.0;
    double analytic = 0.0;
    double stderr_ = 0.0;
};

// Literal single-box experiment: sample `trials` boxes from the weights and
// count how often the fixed sequence lands inside; analytic = prod a(x_i).
CoverageProbe box_coverage_probability(const SetSystem& system,
                                       const std::vector<double>& weights,
                                       std::span<const int> sequence, long trials,
                                       std::uint64_t seed);

}  // namespace vpent
