#include "vpent/cover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "vpent/errors.hpp"
#include "vpent/packing.hpp"
#include "vpent/rng.hpp"

namespace vpent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, int i) { b[i >> 6] |= std::uint64_t(1) << (i & 63); }

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw input_error("lambda must lie in (0,1)");
}

// Candidate boxes for exact covering: every ell-tuple of family sets, as
// coverage bitsets over the enumerated positive-mass points, deduplicated and
// filtered for domination (a box covering a subset of another's points is
// never needed).
struct BoxSpace {
    std::vector<double> point_mass;
    std::vector<Bits> box;
    std::vector<double> box_mass;
    int words = 0;

    double mass_of(const Bits& b) const {
        double m = 0.0;
        for (int w = 0; w < words; ++w) {
            std::uint64_t word = b[w];
            while (word) {
                int bit = std::countr_zero(word);
                m += point_mass[w * 64 + bit];
                word &= word - 1;
            }
        }
        return m;
    }

    double uncovered_gain(const Bits& b, const Bits& covered) const {
        double m = 0.0;
        for (int w = 0; w < words; ++w) {
            std::uint64_t word = b[w] & ~covered[w];
            while (word) {
                int bit = std::countr_zero(word);
                m += point_mass[w * 64 + bit];
                word &= word - 1;
            }
        }
        return m;
    }
};

BoxSpace build_box_space(const SetSystem& system, int ell) {
    const Distribution& u = system.universe();
    if (ell < 1) throw input_error("ell must be >= 1");
    if (u.size() > 10) throw size_error("exact covering limited to universes of 10 atoms");

    const int f = system.family_size();
    double raw_boxes = std::pow(static_cast<double>(f), ell);
    if (raw_boxes > 1e6) throw size_error("too many candidate boxes (|family|^ell > 1e6)");

    std::vector<int> supp = u.support();
    const int s = static_cast<int>(supp.size());
    double raw_points = std::pow(static_cast<double>(s), ell);
    if (raw_points > 1e6) throw size_error("too many product points");
    if (raw_boxes * raw_points > 5e7) throw size_error("candidate box table too large");

    const int num_points = static_cast<int>(raw_points + 0.5);
    BoxSpace space;
    space.words = (num_points + 63) / 64;
    space.point_mass.assign(static_cast<size_t>(space.words) * 64, 0.0);

    // points are odometer tuples over support atoms
    std::vector<int> tuple(ell, 0);
    for (int pidx = 0; pidx < num_points; ++pidx) {
        double m = 1.0;
        for (int i = 0; i < ell; ++i) m *= u.mass(supp[tuple[i]]);
        space.point_mass[pidx] = m;
        for (int i = ell - 1; i >= 0; --i) {
            if (++tuple[i] < s) break;
            tuple[i] = 0;
        }
    }

    std::vector<std::vector<char>> inset(f, std::vector<char>(u.size(), 0));
    for (int k = 0; k < f; ++k)
        for (int x : system.set(k)) inset[k][x] = 1;

    std::map<Bits, int> seen;
    std::vector<int> box_tuple(ell, 0);
    const int num_boxes = static_cast<int>(raw_boxes + 0.5);
    for (int bidx = 0; bidx < num_boxes; ++bidx) {
        Bits cover(space.words, 0);
        std::fill(tuple.begin(), tuple.end(), 0);
        for (int pidx = 0; pidx < num_points; ++pidx) {
            bool inside = true;
            for (int i = 0; i < ell && inside; ++i)
                inside = inset[box_tuple[i]][supp[tuple[i]]];
            if (inside) set_bit(cover, pidx);
            for (int i = ell - 1; i >= 0; --i) {
                if (++tuple[i] < s) break;
                tuple[i] = 0;
            }
        }
        if (seen.emplace(cover, bidx).second) space.box.push_back(std::move(cover));
        for (int i = ell - 1; i >= 0; --i) {
            if (++box_tuple[i] < f) break;
            box_tuple[i] = 0;
        }
    }

    // domination filter
    auto subset_of = [&](const Bits& a, const Bits& b) {
        for (int w = 0; w < space.words; ++w)
            if (a[w] & ~b[w]) return false;
        return true;
    };
    std::vector<Bits> kept;
    for (size_t i = 0; i < space.box.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < space.box.size() && !dominated; ++j)
            if (i != j && subset_of(space.box[i], space.box[j]) &&
                !(space.box[i] == space.box[j]))
                dominated = true;
        if (!dominated) kept.push_back(space.box[i]);
    }
    space.box = std::move(kept);
    if (space.box.size() > 4096) throw size_error("too many distinct boxes for exact search");

    space.box_mass.resize(space.box.size());
    for (size_t i = 0; i < space.box.size(); ++i) space.box_mass[i] = space.mass_of(space.box[i]);

    // heaviest boxes first: greedy seed order and mass-based pruning
    std::vector<int> order(space.box.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return space.box_mass[a] > space.box_mass[b]; });
    std::vector<Bits> boxes;
    std::vector<double> masses;
    for (int i : order) {
        boxes.push_back(std::move(space.box[i]));
        masses.push_back(space.box_mass[i]);
    }
    space.box = std::move(boxes);
    space.box_mass = std::move(masses);
    return space;
}

struct GreedyPick {
    std::vector<int> chosen;
    double covered = 0.0;
};

GreedyPick greedy_pick(const BoxSpace& space, double need) {
    GreedyPick g;
    Bits covered(space.words, 0);
    while (g.covered < need) {
        int best = -1;
        double best_gain = 0.0;
        for (size_t i = 0; i < space.box.size(); ++i) {
            double gain = space.uncovered_gain(space.box[i], covered);
            if (gain > best_gain + 1e-15) {
                best_gain = gain;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break;
        g.chosen.push_back(best);
        for (int w = 0; w < space.words; ++w) covered[w] |= space.box[best][w];
        g.covered += best_gain;
    }
    return g;
}

struct ExactSearch {
    const BoxSpace& space;
    double need;
    std::vector<double> max_suffix_mass;
    int best_count;
    double best_covered = 0.0;

    ExactSearch(const BoxSpace& s, double need_, int incumbent, double incumbent_cov)
        : space(s), need(need_), best_count(incumbent), best_covered(incumbent_cov) {
        max_suffix_mass.resize(space.box.size() + 1, 0.0);
        for (int i = static_cast<int>(space.box.size()) - 1; i >= 0; --i)
            max_suffix_mass[i] = std::max(max_suffix_mass[i + 1], space.box_mass[i]);
    }

    void dfs(size_t idx, int count, Bits& covered, double covered_mass) {
        if (covered_mass >= need) {
            if (count < best_count) {
                best_count = count;
                best_covered = covered_mass;
            }
            return;
        }
        if (idx >= space.box.size() || count + 1 >= best_count) return;
        double deficit = need - covered_mass;
        int extra = static_cast<int>(std::ceil(deficit / max_suffix_mass[idx] - 1e-12));
        if (count + extra >= best_count) return;

        double gain = space.uncovered_gain(space.box[idx], covered);
        if (gain > 1e-15) {
            Bits next = covered;
            for (int w = 0; w < space.words; ++w) next[w] |= space.box[idx][w];
            dfs(idx + 1, count + 1, next, covered_mass + gain);
        }
        dfs(idx + 1, count, covered, covered_mass);
    }
};

CoverReport cover_report(int ell, double lambda, double boxes, double covered,
                         CoverMethod method, bool reached) {
    CoverReport r;
    r.ell = ell;
    r.lambda = lambda;
    r.boxes_used = boxes;
    r.covered_mass = covered;
    r.rate = boxes >= 1.0 ? std::log(boxes) / static_cast<double>(ell) : 0.0;
    r.method = method;
    r.reached_target = reached;
    return r;
}

}  // namespace

CoverReport exact_min_cover(const SetSystem& system, int ell, double lambda) {
    check_lambda(lambda);
    BoxSpace space = build_box_space(system, ell);
    const double need = 1.0 - lambda - 1e-12;

    GreedyPick seed = greedy_pick(space, need);
    if (seed.covered < need) {
        // not even all boxes reach the target mass
        return cover_report(ell, lambda, static_cast<double>(space.box.size()), seed.covered,
                            CoverMethod::exact, false);
    }
    ExactSearch search(space, need, static_cast<int>(seed.chosen.size()), seed.covered);
    Bits covered(space.words, 0);
    search.dfs(0, 0, covered, 0.0);
    return cover_report(ell, lambda, static_cast<double>(search.best_count),
                        search.best_covered, CoverMethod::exact, true);
}

CoverReport greedy_cover(const SetSystem& system, int ell, double lambda) {
    check_lambda(lambda);
    BoxSpace space = build_box_space(system, ell);
    const double need = 1.0 - lambda - 1e-12;
    GreedyPick seed = greedy_pick(space, need);
    return cover_report(ell, lambda, static_cast<double>(seed.chosen.size()), seed.covered,
                        CoverMethod::greedy, seed.covered >= need);
}

bool typical_set_check(const Distribution& pi, std::span<const double> a, double delta,
                       std::span<const int> sequence) {
    if (sequence.empty()) throw input_error("typical_set_check: empty sequence");
    double reference = phi(pi, a);
    if (!std::isfinite(reference))
        throw input_error("typical_set_check: a vanishes on the support");
    double avg = 0.0;
    for (int x : sequence) {
        if (x < 0 || x >= pi.size()) throw input_error("typical_set_check: symbol out of range");
        if (pi.mass(x) <= 0.0)
            throw input_error("typical_set_check: symbol '" + pi.id(x) + "' outside support");
        avg += std::log(a[x]);
    }
    avg /= static_cast<double>(sequence.size());
    return std::abs(avg + reference) <= delta;
}

double CountableFamilySampler::event_mass(int k) const {
    switch (rule) {
        case Rule::half:
            return 0.5;
        case Rule::all_but_one:
            return k == 1 ? m1 : m_inf;
        case Rule::explicit_list:
            if (masses.empty()) throw input_error("sampler: empty mass list");
            return k <= static_cast<int>(masses.size()) ? masses[k - 1] : masses.back();
    }
    return 0.5;
}

void CountableFamilySampler::validate() const {
    if (mixture_n < 1) throw input_error("sampler: mixture n must be >= 1");
    if (mixture_n > 4096) throw size_error("sampler: mixture n above 4096");
    if (!(mixture_epsilon > 0.0) || !(mixture_epsilon < 1.0))
        throw input_error("sampler: mixture epsilon must lie in (0,1)");
    if (rule == Rule::all_but_one && (!(m1 < 1.0) || !(m1 >= m_inf) || !(m_inf > 0.0)))
        throw input_error("sampler: need 1 > m1 >= m_inf > 0");
    if (rule == Rule::explicit_list) {
        if (masses.empty()) throw input_error("sampler: empty mass list");
        for (double m : masses)
            if (!(m > 0.0) || !(m < 1.0)) throw input_error("sampler: event masses must lie in (0,1)");
    }
}

namespace {

// Coverage curve driver shared by both random_cover_rate overloads. Each test
// point j carries q_j = prod a(x_i) and a fixed uniform u_j; the point counts
// as covered by M boxes iff u_j < 1 - (1-q_j)^M, which is the exact
// conditional coverage law and is monotone in M, so binary search applies.
CoverReport search_min_boxes(std::vector<double> q, std::vector<double> u,
                             const RandomCoverOptions& opts) {
    const double target = 1.0 - opts.lambda;
    const long trials = static_cast<long>(q.size());

    auto coverage = [&](double log_m) {
        double m = std::exp(log_m);
        long hit = 0;
        for (long j = 0; j < trials; ++j) {
            double noncover = q[j] >= 1.0 ? 0.0 : std::exp(m * std::log1p(-q[j]));
            if (u[j] < 1.0 - noncover) ++hit;
        }
        return static_cast<double>(hit) / static_cast<double>(trials);
    };

    double cap = std::min(opts.max_log_boxes, 700.0);
    double covered_at_cap = coverage(cap);
    CoverReport r;
    r.ell = opts.ell;
    r.lambda = opts.lambda;
    r.method = CoverMethod::random;
    if (covered_at_cap < target) {
        r.boxes_used = std::exp(cap);
        r.covered_mass = covered_at_cap;
        r.covered_stderr = std::sqrt(covered_at_cap * (1.0 - covered_at_cap) /
                                     static_cast<double>(trials));
        r.rate = cap / static_cast<double>(opts.ell);
        r.reached_target = false;
        return r;
    }

    double lo = 0.0, hi = cap;
    if (coverage(0.0) >= target) {
        hi = 0.0;  // a single box suffices
    } else {
        while (hi - lo > std::log(opts.resolution)) {
            double mid = 0.5 * (lo + hi);
            if (coverage(mid) >= target)
                hi = mid;
            else
                lo = mid;
        }
    }
    double m_final = std::exp(hi);
    if (m_final < 9e15) m_final = std::ceil(m_final - 1e-9);
    double covered = coverage(std::log(m_final));
    r.boxes_used = m_final;
    r.covered_mass = covered;
    r.covered_stderr = std::sqrt(covered * (1.0 - covered) / static_cast<double>(trials));
    r.rate = std::log(m_final) / static_cast<double>(opts.ell);
    r.reached_target = true;
    return r;
}

void check_cover_options(const RandomCoverOptions& opts) {
    check_lambda(opts.lambda);
    if (opts.ell < 1) throw input_error("ell must be >= 1");
    if (opts.trials < 1) throw input_error("trials must be >= 1");
    if (!(opts.resolution > 1.0)) throw input_error("resolution must exceed 1");
}

}  // namespace

CoverReport random_cover_rate(const SetSystem& system, const std::vector<double>& weights,
                              const RandomCoverOptions& opts) {
    check_cover_options(opts);
    if (static_cast<int>(weights.size()) != system.family_size())
        throw input_error("weights must cover the whole family");
    double total = 0.0;
    for (double w : weights) {
        if (w < -1e-12) throw input_error("negative sampling weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-6) throw input_error("sampling weights must sum to 1");

    const Distribution& u = system.universe();
    std::vector<double> a(u.size(), 0.0);
    for (int k = 0; k < system.family_size(); ++k)
        for (int x : system.set(k)) a[x] += std::max(weights[k], 0.0) / total;

    std::vector<double> cum(u.size());
    double acc = 0.0;
    for (int x = 0; x < u.size(); ++x) {
        acc += u.mass(x);
        cum[x] = acc;
    }

    Rng base(opts.seed);
    std::vector<double> q(opts.trials), uu(opts.trials);
    for (long j = 0; j < opts.trials; ++j) {
        Rng rng = base.split(static_cast<std::uint64_t>(j));
        double prod = 1.0;
        for (int i = 0; i < opts.ell; ++i) {
            double r = rng.uniform() * acc;
            int x = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), r) - cum.begin());
            if (x >= u.size()) x = u.size() - 1;
            prod *= a[x];
        }
        q[j] = prod;
        uu[j] = rng.uniform();
    }
    return search_min_boxes(std::move(q), std::move(uu), opts);
}

CoverReport random_cover_rate(const CountableFamilySampler& sampler,
                              const RandomCoverOptions& opts) {
    check_cover_options(opts);
    sampler.validate();

    const int bits = std::max(64, sampler.mixture_n);
    const int words = (bits + 63) / 64;
    const double eps = sampler.mixture_epsilon;
    const int n = sampler.mixture_n;

    Rng base(opts.seed);
    std::vector<double> q(opts.trials), uu(opts.trials);
    std::vector<std::uint64_t> point(words);
    for (long j = 0; j < opts.trials; ++j) {
        Rng rng = base.split(static_cast<std::uint64_t>(j));
        double prod = 1.0;
        for (int i = 0; i < opts.ell; ++i) {
            // lazy independent-bit coordinate; bit k decides membership in J_k
            if (sampler.rule == CountableFamilySampler::Rule::half) {
                for (int w = 0; w < words; ++w) point[w] = rng.next_u64();
            } else {
                for (int w = 0; w < words; ++w) point[w] = 0;
                for (int k = 1; k <= bits; ++k)
                    if (rng.uniform() < sampler.event_mass(k))
                        point[(k - 1) >> 6] |= std::uint64_t(1) << ((k - 1) & 63);
            }
            // a0 = sum over k of 2^-k bit_k (geometric part of the mixture)
            double a0 = 0.0, w2 = 0.5;
            for (int k = 1; k <= 64; ++k) {
                if ((point[(k - 1) >> 6] >> ((k - 1) & 63)) & 1) a0 += w2;
                w2 *= 0.5;
            }
            int pc = 0;
            for (int k = 1; k <= n; ++k)
                pc += static_cast<int>((point[(k - 1) >> 6] >> ((k - 1) & 63)) & 1);
            double a_first_n = static_cast<double>(pc) / static_cast<double>(n);
            prod *= eps * a0 + (1.0 - eps) * a_first_n;
        }
        q[j] = prod;
        uu[j] = rng.uniform();
    }
    return search_min_boxes(std::move(q), std::move(uu), opts);
}

CoverageProbe box_coverage_probability(const SetSystem& system,
                                       const std::vector<double>& weights,
                                       std::span<const int> sequence, long trials,
                                       std::uint64_t seed) {
    if (sequence.empty()) throw input_error("empty test sequence");
    if (trials < 1) throw input_error("trials must be >= 1");
    if (static_cast<int>(weights.size()) != system.family_size())
        throw input_error("weights must cover the whole family");
    const Distribution& u = system.universe();
    for (int x : sequence)
        if (x < 0 || x >= u.size()) throw input_error("sequence symbol out of range");

    double total = 0.0;
    for (double w : weights) total += w;
    std::vector<double> cum(weights.size());
    double acc = 0.0;
    for (size_t k = 0; k < weights.size(); ++k) {
        acc += std::max(weights[k], 0.0);
        cum[k] = acc;
    }

    std::vector<std::vector<char>> inset(system.family_size(),
                                         std::vector<char>(u.size(), 0));
    for (int k = 0; k < system.family_size(); ++k)
        for (int x : system.set(k)) inset[k][x] = 1;

    std::vector<double> a(u.size(), 0.0);
    for (int k = 0; k < system.family_size(); ++k)
        for (int x : system.set(k)) a[x] += std::max(weights[k], 0.0) / total;

    Rng base(seed);
    long hits = 0;
    for (long t = 0; t < trials; ++t) {
        Rng rng = base.split(static_cast<std::uint64_t>(t));
        bool inside = true;
        for (size_t i = 0; i < sequence.size(); ++i) {
            double r = rng.uniform() * acc;
            int k = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), r) - cum.begin());
            if (k >= system.family_size()) k = system.family_size() - 1;
            if (!inset[k][sequence[i]]) {
                inside = false;
                // keep drawing so the stream layout is position-independent
            }
        }
        if (inside) ++hits;
    }

    CoverageProbe probe;
    probe.empirical = static_cast<double>(hits) / static_cast<double>(trials);
    probe.analytic = 1.0;
    for (int x : sequence) probe.analytic *= a[x];
    probe.stderr_ = std::sqrt(probe.analytic * (1.0 - probe.analytic) /
                              static_cast<double>(trials));
    return probe;
}

}  // namespace vpent
