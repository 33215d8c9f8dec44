#include "vpent/selftest.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "vpent/cover.hpp"
#include "vpent/fractional.hpp"
#include "vpent/graph.hpp"
#include "vpent/graphon.hpp"
#include "vpent/rng.hpp"
#include "vpent/solver.hpp"

namespace vpent {

namespace {

using clock_t_ = std::chrono::steady_clock;

double seconds_since(clock_t_::time_point t0) {
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

FiniteGraph cycle_graph(int len) {
    std::vector<std::string> vs;
    for (int i = 0; i < len; ++i) vs.push_back("x" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < len; ++i) es.emplace_back(vs[i], vs[(i + 1) % len]);
    Distribution pi = Distribution::uniform(vs);
    return FiniteGraph(std::move(vs), std::move(es), std::move(pi));
}

FiniteGraph complete_graph(int n, const std::vector<double>& masses) {
    std::vector<std::string> vs;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(vs[i], vs[j]);
    std::vector<Atom> atoms;
    for (int i = 0; i < n; ++i) atoms.push_back({vs[i], masses[i]});
    return FiniteGraph(std::move(vs), std::move(es), Distribution(std::move(atoms)));
}

std::vector<double> random_full_support(int n, Rng& rng) {
    std::vector<double> p(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        p[i] = 0.05 + rng.uniform();
        total += p[i];
    }
    double acc = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        p[i] /= total;
        acc += p[i];
    }
    p[n - 1] = 1.0 - acc;
    return p;
}

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << msg;
        }
    }
};

CriterionResult criterion_1_cycles() {
    Check c;
    SolveOptions opts;
    opts.tol = 1e-9;
    for (int n = 2; n <= 6; ++n) {
        const int len = 2 * n + 1;
        auto t0 = clock_t_::now();
        auto system = maximal_independent_sets(cycle_graph(len));
        auto cert = solve_entropy(system, system.universe(), opts);
        double elapsed = seconds_since(t0);
        double expected = std::log(static_cast<double>(len)) - std::log(static_cast<double>(n));
        c.require(std::abs(cert.value - expected) <= 1e-7,
                  "C_" + std::to_string(len) + " value off by " +
                      std::to_string(cert.value - expected));
        c.require(cert.gap <= 1e-9, "C_" + std::to_string(len) + " gap " + std::to_string(cert.gap));
        c.require(elapsed < 1.0, "C_" + std::to_string(len) + " took " + std::to_string(elapsed) + "s");
        if (n == 2)
            c.require(std::abs(cert.value - 0.916290731874155) <= 1e-7, "C_5 value mismatch");
    }
    return {1, "cycle closed form C_5..C_13", c.ok, c.detail.str()};
}

CriterionResult criterion_2_complete_graphs() {
    Check c;
    Rng rng(20250809);
    SolveOptions opts;
    opts.tol = 1e-9;
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng.below(7));  // 2..8
        auto masses = random_full_support(n, rng);
        auto g = complete_graph(n, masses);
        auto system = maximal_independent_sets(g);
        auto cert = solve_entropy(system, system.universe(), opts);
        double expected = shannon_entropy(system.universe());
        c.require(std::abs(cert.value - expected) <= 1e-7,
                  "trial " + std::to_string(trial) + " K_" + std::to_string(n) + " off by " +
                      std::to_string(cert.value - expected));
    }
    return {2, "complete-graph identity (50 random pi)", c.ok, c.detail.str()};
}

CriterionResult criterion_3_coloring_bracket() {
    Check c;
    // C_5 = cycle v1..v5; the proper 3-coloring {v1,v3},{v2,v4},{v5} realizes
    // a == 1/3 as an explicit system
    std::vector<std::string> ids = {"v1", "v2", "v3", "v4", "v5"};
    auto system = SetSystem::from_ids(Distribution::uniform(ids),
                                      {{"v1", "v3"}, {"v2", "v4"}, {"v5"}},
                                      SystemOrigin::explicit_family);
    const double third = 1.0 / 3.0;
    auto point = evaluate_packing_point(system, {{0, third}, {1, third}, {2, 1.0 - 2 * third}});
    auto check = verify_certificate(system, system.universe(), point, 1e-9);
    c.require(std::abs(check.bracket_lo - std::log(2.5)) <= 1e-10,
              "bracket_lo off by " + std::to_string(check.bracket_lo - std::log(2.5)));
    c.require(std::abs(check.bracket_hi - std::log(3.0)) <= 1e-10,
              "bracket_hi off by " + std::to_string(check.bracket_hi - std::log(3.0)));
    c.require(check.is_upper_valid, "upper bound must be valid");
    return {3, "bracket at the C_5 3-coloring point", c.ok, c.detail.str()};
}

CriterionResult criterion_4_fractional() {
    Check c;
    auto system = maximal_independent_sets(cycle_graph(5));
    auto chi = frac_chromatic(system);
    auto omega = frac_clique(system);
    c.require(std::abs(chi.objective - 2.5) <= 1e-7, "chi_frac " + std::to_string(chi.objective));
    c.require(std::abs(omega.objective - 2.5) <= 1e-7,
              "omega_frac " + std::to_string(omega.objective));
    auto pi_star = entropy_maximizing_distribution(system);
    SolveOptions opts;
    opts.tol = 1e-8;
    auto cert = solve_entropy(system, pi_star, opts);
    c.require(std::abs(cert.value - std::log(2.5)) <= 1e-6,
              "max-entropy value off by " + std::to_string(cert.value - std::log(2.5)));
    return {4, "fractional duality and max-entropy on C_5", c.ok, c.detail.str()};
}

CriterionResult criterion_5_interval() {
    Check c;
    for (int n = 1; n <= 6; ++n) {
        double v = interval_graphon_entropy(1.0 / static_cast<double>(n));
        c.require(v == std::log(static_cast<double>(n)),
                  "c=1/" + std::to_string(n) + " not exact");
    }
    c.require(std::abs(interval_graphon_entropy(0.5) - std::log(2.0)) <= 1e-12,
              "c=0.5 mismatch");
    return {5, "interval graphon closed form", c.ok, c.detail.str()};
}

CriterionResult criterion_6_circle_convergence() {
    Check c;
    auto t0 = clock_t_::now();
    SolveOptions opts;
    opts.tol = 1e-9;
    auto sys200 = quotient_system(discretize_circle(0.25, 200));
    auto v200 = solve_entropy(sys200, sys200.universe(), opts);
    auto sys400 = quotient_system(discretize_circle(0.25, 400));
    auto v400 = solve_entropy(sys400, sys400.universe(), opts);
    double target = std::log(4.0);
    double err200 = std::abs(v200.value - target);
    double err400 = std::abs(v400.value - target);
    // 0.03 = observed m=200 discretization error (0.0198) times 1.5, from the
    // m in {50,100,200,400} calibration sweep
    c.require(err200 <= 0.03, "m=200 error " + std::to_string(err200));
    c.require(err400 <= err200 + 1e-9, "error did not shrink from m=200 to m=400");
    double elapsed = seconds_since(t0);
    c.require(elapsed < 60.0, "took " + std::to_string(elapsed) + "s");
    return {6, "circle discretization convergence", c.ok, c.detail.str()};
}

CriterionResult criterion_7_exact_covers() {
    Check c;
    auto t0 = clock_t_::now();
    auto system = maximal_independent_sets(complete_graph(2, {0.5, 0.5}));
    const int expected[] = {2, 3, 5, 10, 20, 39};  // ceil(0.6 * 2^ell)
    for (int ell = 1; ell <= 6; ++ell) {
        auto report = exact_min_cover(system, ell, 0.4);
        c.require(report.reached_target, "ell=" + std::to_string(ell) + " unreachable");
        c.require(static_cast<int>(report.boxes_used) == expected[ell - 1],
                  "ell=" + std::to_string(ell) + " boxes " + std::to_string(report.boxes_used));
        // N = ceil(0.6 * 2^ell) squeezes the rate into
        // log 2 + [log 0.6, log 0.6 + log1p(1/(0.6 * 2^ell))] / ell -> log 2
        double base = 0.6 * std::pow(2.0, ell);
        double lo = std::log(2.0) + std::log(0.6) / ell;
        double hi = std::log(2.0) + (std::log(0.6) + std::log1p(1.0 / base)) / ell;
        c.require(report.rate >= lo - 1e-12 && report.rate <= hi + 1e-12,
                  "rate outside the derived sandwich at ell=" + std::to_string(ell));
    }
    double elapsed = seconds_since(t0);
    c.require(elapsed < 10.0, "took " + std::to_string(elapsed) + "s");
    return {7, "exact covering rates on K_2", c.ok, c.detail.str()};
}

CriterionResult criterion_8_coverage_identity() {
    Check c;
    auto system = maximal_independent_sets(cycle_graph(5));
    SolveOptions opts;
    opts.tol = 1e-9;
    auto cert = solve_entropy(system, system.universe(), opts);
    std::vector<double> weights(system.family_size(), 0.0);
    for (const auto& [k, q] : cert.point.weights) weights[k] = q;
    const std::vector<int> sequence = {0, 1, 2, 3};
    auto probe = box_coverage_probability(system, weights, sequence, 100000, 7);
    c.require(std::abs(probe.empirical - probe.analytic) <= 3.0 * probe.stderr_,
              "empirical " + std::to_string(probe.empirical) + " vs analytic " +
                  std::to_string(probe.analytic));
    return {8, "single-box coverage probability identity", c.ok, c.detail.str()};
}

CriterionResult criterion_9_independent_events() {
    Check c;
    RandomCoverOptions opts;
    opts.ell = 128;
    opts.lambda = 0.5;
    opts.trials = 10000;
    opts.seed = 42;
    double prev = 0.0;
    double rate60 = 0.0;
    for (int n : {20, 40, 60}) {
        CountableFamilySampler sampler;
        sampler.rule = CountableFamilySampler::Rule::half;
        sampler.mixture_n = n;
        sampler.mixture_epsilon = 0.01;
        auto report = random_cover_rate(sampler, opts);
        c.require(report.reached_target, "n=" + std::to_string(n) + " unreachable");
        if (n > 20)
            c.require(report.rate <= prev + 1e-12,
                      "rate increased from n-20 to n=" + std::to_string(n));
        prev = report.rate;
        rate60 = report.rate;
    }
    // slack 0.01 pinned from the pre-registered calibration run; the rates sit
    // above log 2 and shrink toward it as n grows
    c.require(rate60 >= std::log(2.0) - 0.01, "rate " + std::to_string(rate60) + " below log 2 - s");
    c.require(independent_events_allbutone(0.5, 0.5) == -std::log(0.5), "m=0.5 not exact");
    c.require(independent_events_allbutone(0.25, 0.25) == -std::log(0.25), "m=0.25 not exact");
    return {9, "independent half-measure events", c.ok, c.detail.str()};
}

CriterionResult criterion_10_uniqueness() {
    Check c;
    Rng rng(987654321);
    SolveOptions base;
    base.tol = 1e-8;
    for (int trial = 0; trial < 20; ++trial) {
        int n = 4 + static_cast<int>(rng.below(7));  // 4..10 vertices
        std::vector<std::string> vs;
        for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
        std::vector<std::pair<std::string, std::string>> es;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.uniform() < 0.4) es.emplace_back(vs[i], vs[j]);
        auto masses = random_full_support(n, rng);
        std::vector<Atom> atoms;
        for (int i = 0; i < n; ++i) atoms.push_back({vs[i], masses[i]});
        FiniteGraph g(vs, es, Distribution(std::move(atoms)));
        auto system = maximal_independent_sets(g);

        auto run1 = solve_entropy(system, system.universe(), base);
        SolveOptions alt = base;
        alt.init_seed = 1000 + trial;
        auto run2 = solve_entropy(system, system.universe(), alt);

        double dist2 = 0.0;
        for (int x = 0; x < system.universe().size(); ++x) {
            double d = run1.point.a[x] - run2.point.a[x];
            dist2 += system.universe().mass(x) * d * d;
        }
        double bound = std::sqrt(8.0 * (std::max(run1.gap, 0.0) + std::max(run2.gap, 0.0)));
        c.require(std::sqrt(dist2) <= bound + 1e-12,
                  "trial " + std::to_string(trial) + " distance " + std::to_string(std::sqrt(dist2)) +
                      " exceeds " + std::to_string(bound));
    }
    return {10, "uniqueness via the strong-convexity bound", c.ok, c.detail.str()};
}

CriterionResult criterion_11_arc_system() {
    Check c;
    auto g_hat = ArcDensity::step({{0.0, 2.0}, {0.5, 0.0}});
    auto tent = smooth_density(g_hat, 0.5);
    auto result = arc_entropy(tent, 0.5, true);
    c.require(result.exact.has_value(), "exact value missing");
    if (result.exact)
        c.require(std::abs(*result.exact - 0.5) <= 1e-8,
                  "exact " + std::to_string(*result.exact));
    return {11, "arc system tent density", c.ok, c.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_all_criteria() {
    return {
        criterion_1_cycles(),        criterion_2_complete_graphs(),
        criterion_3_coloring_bracket(), criterion_4_fractional(),
        criterion_5_interval(),      criterion_6_circle_convergence(),
        criterion_7_exact_covers(),  criterion_8_coverage_identity(),
        criterion_9_independent_events(), criterion_10_uniqueness(),
        criterion_11_arc_system(),
    };
}

bool run_selftest(std::ostream& out) {
    bool all = true;
    for (const auto& r : run_all_criteria()) {
        out << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name;
        if (!r.pass && !r.detail.empty()) out << "  -- " << r.detail;
        out << '\n';
        all &= r.pass;
    }
    out << (all ? "selftest: all criteria passed\n" : "selftest: FAILURES present\n");
    return all;
}

}  // namespace vpent
