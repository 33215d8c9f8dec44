#include "vpent/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vpent/errors.hpp"
#include "vpent/rng.hpp"

namespace vpent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Masses of pi rearranged into universe atom order; pi must use exactly the
// universe's symbol ids.
std::vector<double> aligned_masses(const SetSystem& system, const Distribution& pi) {
    const Distribution& u = system.universe();
    if (pi.size() != u.size())
        throw input_error("pi has " + std::to_string(pi.size()) + " atoms, universe has " +
                          std::to_string(u.size()));
    std::vector<double> p(u.size());
    for (int x = 0; x < u.size(); ++x) {
        int i = pi.index_of(u.id(x));
        if (i < 0) throw input_error("pi is missing universe symbol '" + u.id(x) + "'");
        p[x] = pi.mass(i);
    }
    return p;
}

double set_score(const SetSystem& system, const std::vector<double>& p,
                 std::span<const double> a, int k) {
    double s = 0.0;
    for (int x : system.set(k)) {
        if (p[x] <= 0.0) continue;
        if (a[x] <= 0.0) return kInf;
        s += p[x] / a[x];
    }
    return s;
}

double phi_on_support(const std::vector<double>& p, const std::vector<double>& a) {
    double v = 0.0;
    for (size_t x = 0; x < p.size(); ++x) {
        if (p[x] <= 0.0) continue;
        if (a[x] <= 0.0) return kInf;
        v -= p[x] * std::log(std::min(a[x], 1.0));
    }
    return v;
}

// Greedy cover of the support by family sets; empty result means the support
// is not coverable. seed = 0 picks the largest uncovered mass (ties by lowest
// index); otherwise sets are tried in a seeded random order.
std::vector<int> greedy_cover(const SetSystem& system, const std::vector<double>& p,
                              std::uint64_t seed) {
    const int n = system.universe().size();
    std::vector<char> covered(n, 0);
    double uncovered_mass = 0.0;
    int uncovered_atoms = 0;
    for (int x = 0; x < n; ++x)
        if (p[x] > 0.0) {
            uncovered_mass += p[x];
            ++uncovered_atoms;
        }

    std::vector<int> order(system.family_size());
    std::iota(order.begin(), order.end(), 0);
    if (seed != 0) {
        Rng rng(seed);
        for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
            std::swap(order[i], order[rng.below(i + 1)]);
    }

    std::vector<int> picked;
    while (uncovered_atoms > 0) {
        int best = -1;
        double best_gain = 0.0;
        for (int k : order) {
            double gain = 0.0;
            int fresh = 0;
            for (int x : system.set(k))
                if (p[x] > 0.0 && !covered[x]) {
                    gain += p[x];
                    ++fresh;
                }
            if (fresh > 0 && (best < 0 || gain > best_gain)) {
                best = k;
                best_gain = gain;
                if (seed != 0) break;  // randomized variant: first set that helps
            }
        }
        if (best < 0) return {};  // support not coverable
        picked.push_back(best);
        for (int x : system.set(best))
            if (p[x] > 0.0 && !covered[x]) {
                covered[x] = 1;
                --uncovered_atoms;
            }
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

// Derivative of t -> phi(a + t*d) restricted to the support. +inf when some
// support coordinate of a + t*d is nonpositive.
double segment_derivative(const std::vector<double>& p, const std::vector<double>& a,
                          const std::vector<double>& d, double t) {
    double g = 0.0;
    for (size_t x = 0; x < p.size(); ++x) {
        if (p[x] <= 0.0) continue;
        double v = a[x] + t * d[x];
        if (v <= 0.0) return kInf;
        g -= p[x] * d[x] / v;
    }
    return g;
}

// Exact line search on [0, t_max]: bisection on the (increasing) derivative
// of the strictly convex 1-D restriction, to interval width 1e-12, 60 rounds.
double line_search(const std::vector<double>& p, const std::vector<double>& a,
                   const std::vector<double>& d, double t_max) {
    if (segment_derivative(p, a, d, t_max) <= 0.0) return t_max;
    double lo = 0.0, hi = t_max;
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (segment_derivative(p, a, d, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

PackingPoint sparse_point(const SetSystem& system, const std::vector<double>& q) {
    PackingPoint pt;
    for (int k = 0; k < system.family_size(); ++k)
        if (q[k] > 0.0) pt.weights.emplace_back(k, q[k]);
    pt.a.assign(system.universe().size(), 0.0);
    for (const auto& [k, w] : pt.weights)
        for (int x : system.set(k)) pt.a[x] += w;
    return pt;
}

EntropyCertificate infinite_certificate(const SetSystem& system) {
    EntropyCertificate cert;
    const int f = system.family_size();
    std::vector<double> q(f, 1.0 / f);
    q[f - 1] = 1.0 - (f - 1) * (1.0 / f);
    cert.point = sparse_point(system, q);
    cert.value = kInf;
    cert.gap = kInf;
    cert.bracket_lo = 0.0;
    cert.bracket_hi = kInf;
    cert.iterations = 0;
    cert.converged = true;  // the infinite answer is conclusive
    return cert;
}

}  // namespace

double fw_gap(const SetSystem& system, const Distribution& pi, const PackingPoint& point) {
    auto p = aligned_masses(system, pi);
    for (size_t x = 0; x < p.size(); ++x)
        if (p[x] > 0.0 && point.a[x] <= 0.0) return kInf;
    double best = 0.0;
    for (int k = 0; k < system.family_size(); ++k)
        best = std::max(best, set_score(system, p, point.a, k));
    return best - 1.0;
}

int lmo(const SetSystem& system, const Distribution& pi, std::span<const double> a) {
    auto p = aligned_masses(system, pi);
    for (size_t x = 0; x < p.size(); ++x)
        if (p[x] > 0.0 && a[x] <= 0.0) {
            std::string where = "lmo: a vanishes on positive mass at atom '" +
                                system.universe().id(static_cast<int>(x)) + "'";
            if (!system.memberships()[x].empty())
                where += " (set " + std::to_string(system.memberships()[x].front()) + ")";
            throw input_error(where);
        }
    int best = 0;
    double best_score = -kInf;
    for (int k = 0; k < system.family_size(); ++k) {
        double s = set_score(system, p, a, k);
        if (s > best_score) {
            best_score = s;
            best = k;
        }
    }
    return best;
}

EntropyCertificate solve_entropy(const SetSystem& system, const Distribution& pi,
                                 const SolveOptions& opts) {
    if (!(opts.tol > 0.0)) throw input_error("solver tolerance must be positive");
    auto p = aligned_masses(system, pi);

    auto cover = greedy_cover(system, p, opts.init_seed);
    if (cover.empty()) return infinite_certificate(system);

    const int n = system.universe().size();
    const int f = system.family_size();
    std::vector<double> q(f, 0.0);
    for (int k : cover) q[k] = 1.0 / static_cast<double>(cover.size());
    std::vector<double> a(n, 0.0), d(n);
    auto rebuild = [&]() {
        double total = 0.0;
        for (double w : q) total += w;
        for (double& w : q) w /= total;
        std::fill(a.begin(), a.end(), 0.0);
        for (int k = 0; k < f; ++k)
            if (q[k] > 0.0)
                for (int x : system.set(k)) a[x] += q[k];
    };
    rebuild();

    if (opts.init_seed == 0) {
        // candidate start: uniform mixture over the whole family. It covers
        // whatever the greedy cover does, and on vertex-transitive systems it
        // is already the optimum; keep whichever start is lower.
        std::vector<double> q_uni(f, 1.0 / static_cast<double>(f));
        std::vector<double> a_uni(n, 0.0);
        for (int k = 0; k < f; ++k)
            for (int x : system.set(k)) a_uni[x] += q_uni[k];
        if (phi_on_support(p, a_uni) < phi_on_support(p, a)) {
            q = std::move(q_uni);
            a = std::move(a_uni);
            rebuild();
        }
    }

    double gap = kInf;
    long iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        // scores of all family sets; the max is the LMO and yields the gap
        int best = 0, worst_active = -1;
        double best_score = -kInf, worst_score = kInf;
        for (int k = 0; k < f; ++k) {
            double s = set_score(system, p, a, k);
            if (s > best_score) {
                best_score = s;
                best = k;
            }
            if (opts.away_steps && q[k] > 0.0 && s < worst_score) {
                worst_score = s;
                worst_active = k;
            }
        }
        gap = best_score - 1.0;
        if (gap <= opts.tol) break;

        bool away = false;
        if (opts.away_steps && worst_active >= 0 && q[worst_active] < 1.0 &&
            (1.0 - worst_score) > gap)
            away = true;

        if (away) {
            // move away from the worst active vertex: a + t*(a - 1_J)
            const int w = worst_active;
            for (int x = 0; x < n; ++x) d[x] = a[x];
            for (int x : system.set(w)) d[x] -= 1.0;
            double t_max = q[w] / (1.0 - q[w]);
            double t = line_search(p, a, d, t_max);
            for (int k = 0; k < f; ++k) q[k] *= (1.0 + t);
            q[w] -= t;
            if (q[w] < 1e-15 || t >= t_max - 1e-15) q[w] = 0.0;
            for (int x = 0; x < n; ++x) a[x] *= (1.0 + t);
            for (int x : system.set(w)) a[x] -= t;
        } else {
            for (int x = 0; x < n; ++x) d[x] = -a[x];
            for (int x : system.set(best)) d[x] += 1.0;
            double t = line_search(p, a, d, 1.0);
            for (int k = 0; k < f; ++k) q[k] *= (1.0 - t);
            q[best] += t;
            for (int x = 0; x < n; ++x) a[x] *= (1.0 - t);
            for (int x : system.set(best)) a[x] += t;
        }
        if ((iter & 127) == 127) rebuild();  // shed float drift
    }

    rebuild();
    EntropyCertificate cert;
    cert.point = sparse_point(system, q);
    cert.value = phi_on_support(p, cert.point.a);
    // recompute the gap at the exact point
    double best_score = -kInf;
    for (int k = 0; k < f; ++k)
        best_score = std::max(best_score, set_score(system, p, cert.point.a, k));
    cert.gap = best_score - 1.0;
    cert.iterations = iter;
    cert.converged = cert.gap <= opts.tol;
    cert.bracket_hi = cert.value;
    cert.bracket_lo = cert.value - std::log1p(std::max(cert.gap, 0.0));
    return cert;
}

CertificateCheck verify_certificate(const SetSystem& system, const Distribution& pi,
                                    const PackingPoint& point, double tol) {
    // re-evaluate the weights; a must be the exact indicator sum
    PackingPoint exact = evaluate_packing_point(system, point.weights);
    if (point.a.size() != exact.a.size()) throw input_error("packing point: a has wrong length");
    for (size_t x = 0; x < exact.a.size(); ++x)
        if (std::abs(point.a[x] - exact.a[x]) > 1e-9)
            throw input_error("packing point: a is inconsistent with weights at atom " +
                              system.universe().id(static_cast<int>(x)));

    auto p = aligned_masses(system, pi);
    CertificateCheck out;
    out.is_upper_valid = true;  // membership in the packing set is constructive
    out.gap = fw_gap(system, pi, exact);
    double value = phi_on_support(p, exact.a);

    if (!std::isfinite(out.gap) || !std::isfinite(value)) {
        out.bracket_lo = 0.0;
        out.bracket_hi = kInf;
        out.is_lower_valid = false;
        return out;
    }

    // the rescaled witness must satisfy the lower-bound condition on every set
    double scale = 1.0 + std::max(out.gap, 0.0);
    bool witness_ok = true;
    for (int k = 0; k < system.family_size() && witness_ok; ++k) {
        double s = 0.0;
        for (int x : system.set(k)) {
            if (p[x] <= 0.0) continue;
            s += p[x] / std::min(1.0, exact.a[x] * scale);
        }
        if (s > 1.0 + 1e-9) witness_ok = false;
    }

    out.bracket_hi = value;
    out.bracket_lo = value - std::log1p(std::max(out.gap, 0.0));
    out.is_lower_valid = witness_ok && out.gap <= tol;
    return out;
}

std::optional<double> cycle_entropy(int n, const Distribution& pi) {
    if (n < 1) throw input_error("cycle_entropy: n must be >= 1");
    const int len = 2 * n + 1;
    if (pi.size() != len)
        throw input_error("cycle_entropy: expected " + std::to_string(len) + " atoms, got " +
                          std::to_string(pi.size()));
    const double bound = 1.0 / static_cast<double>(n);
    for (int k = 0; k < len; ++k) {
        double pair = pi.mass(k) + pi.mass((k + 1) % len);
        if (pair > bound + 1e-12) return std::nullopt;
    }
    return shannon_entropy(pi) - std::log(static_cast<double>(n));
}

}  // namespace vpent
