#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "vpent/errors.hpp"
#include "vpent/graphon.hpp"
#include "vpent/rng.hpp"
#include "vpent/solver.hpp"

using namespace vpent;

namespace {

SolveOptions tight() {
    SolveOptions o;
    o.tol = 1e-9;
    return o;
}

}  // namespace

TEST_CASE("step graphon validation") {
    CHECK_THROWS_AS(StepGraphon({0.5, 0.6}, {{false, true}, {true, false}}), input_error);
    CHECK_THROWS_AS(StepGraphon({0.5, 0.5}, {{false, true}, {false, false}}), input_error);
    CHECK_THROWS_AS(StepGraphon({0.5, 0.5}, {{false, true}}), input_error);
    CHECK_NOTHROW(StepGraphon({0.3, 0.7}, {{false, false}, {false, false}}));
}

TEST_CASE("quotient of a two-block bipartition is K_2") {
    StepGraphon w({0.5, 0.5}, {{false, true}, {true, false}});
    auto sys = quotient_system(w);
    CHECK(sys.family() == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(sys.origin() == SystemOrigin::graphon_quotient);
    auto cert = solve_entropy(sys, sys.universe(), tight());
    CHECK(cert.value == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("quotient with all-false support is a single block set") {
    StepGraphon w({0.3, 0.7}, {{false, false}, {false, false}});
    auto sys = quotient_system(w);
    CHECK(sys.family() == std::vector<std::vector<int>>{{0, 1}});
    auto cert = solve_entropy(sys, sys.universe(), tight());
    CHECK(cert.value == 0.0);
}

TEST_CASE("5-block circle discretization with c in [0.2, 0.4) is the pentagram C_5") {
    auto w = discretize_circle(0.22, 5);
    auto sys = quotient_system(w);
    // blocks at distance 1/5 are indistinguishable, distance 2/5 distinguishable:
    // adjacency i ~ i+2 (mod 5), a 5-cycle; maximal sets are adjacent pairs
    CHECK(sys.family() ==
          std::vector<std::vector<int>>{{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}});
    auto cert = solve_entropy(sys, sys.universe(), tight());
    CHECK(cert.value == doctest::Approx(std::log(2.5)).epsilon(1e-9));
}

TEST_CASE("quotient skips self-distinguishable blocks") {
    StepGraphon w({0.5, 0.5}, {{true, false}, {false, false}});
    auto sys = quotient_system(w);
    CHECK(sys.family() == std::vector<std::vector<int>>{{1}});
    // block 0 has positive mass but no independent set: entropy is infinite
    auto cert = solve_entropy(sys, sys.universe(), tight());
    CHECK(cert.value == std::numeric_limits<double>::infinity());

    StepGraphon all_self({1.0}, {{true}});
    CHECK_THROWS_AS(quotient_system(all_self), input_error);
}

TEST_CASE("circle graphon closed form") {
    CHECK(circle_graphon_entropy(0.25) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(circle_graphon_entropy(1.0 / std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(circle_graphon_entropy(0.5 - 1e-9) == doctest::Approx(std::log(2.0)).epsilon(1e-7));
    CHECK_THROWS_AS(circle_graphon_entropy(0.5), std::domain_error);
    CHECK_THROWS_AS(circle_graphon_entropy(0.0), std::domain_error);
}

TEST_CASE("interval graphon closed form") {
    CHECK(interval_graphon_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    for (int n = 1; n <= 6; ++n)
        CHECK(interval_graphon_entropy(1.0 / n) == std::log(static_cast<double>(n)));
    CHECK(interval_graphon_entropy(0.3) == doctest::Approx(1.213685117648822).epsilon(1e-12));
    CHECK(interval_graphon_entropy(1.0) == 0.0);
    CHECK_THROWS_AS(interval_graphon_entropy(0.0), std::domain_error);
    CHECK_THROWS_AS(interval_graphon_entropy(1.5), std::domain_error);

    // nonincreasing in c
    double prev = interval_graphon_entropy(0.05);
    for (double c = 0.06; c <= 1.0; c += 0.01) {
        double v = interval_graphon_entropy(c);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("discretize_circle support structure") {
    auto w = discretize_circle(0.25, 8);
    for (int i = 0; i < 8; ++i) {
        CHECK_FALSE(w.support(i, i));
        CHECK_FALSE(w.support(i, (i + 1) % 8));  // distance 1/8
        CHECK_FALSE(w.support(i, (i + 2) % 8));  // distance 1/4, not strictly above c
        CHECK(w.support(i, (i + 3) % 8));        // distance 3/8
        CHECK(w.support(i, (i + 4) % 8));        // distance 1/2
    }
    // maximal independent block sets are runs of 3 consecutive blocks
    auto sys = quotient_system(w);
    CHECK(sys.family_size() == 8);
    for (const auto& s : sys.family()) CHECK(s.size() == 3);

    // m=4 and c just below 1/2: only antipodal blocks are distinguishable
    auto w4 = discretize_circle(0.499, 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(w4.support(i, (i + 2) % 4));
        CHECK_FALSE(w4.support(i, (i + 1) % 4));
    }
    auto sys4 = quotient_system(w4);
    CHECK(sys4.family() == std::vector<std::vector<int>>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});

    // c=0.4, m=8: only antipodal blocks are distinguishable, so the maximal
    // sets pick one block from each of the four antipodal pairs
    auto w40 = discretize_circle(0.4, 8);
    auto sys40 = quotient_system(w40);
    CHECK(sys40.family_size() == 16);
    for (const auto& s : sys40.family()) {
        CHECK(s.size() == 4);
        for (int x : s)
            for (int y : s) CHECK((x == y || (std::abs(x - y) != 4)));
    }
}

TEST_CASE("circle discretization converges to -log c") {
    SolveOptions o;
    o.tol = 1e-8;
    double prev_err = 1e9;
    for (int m : {25, 50, 100}) {
        auto sys = quotient_system(discretize_circle(0.25, m));
        auto cert = solve_entropy(sys, sys.universe(), o);
        double err = std::abs(cert.value - std::log(4.0));
        CHECK(err <= prev_err + 1e-9);
        prev_err = err;
    }
    CHECK(prev_err <= 0.06);
}

TEST_CASE("quotient entropy is invariant under block permutation") {
    const int m = 4;
    std::vector<double> masses = {0.1, 0.2, 0.3, 0.4};
    std::vector<std::vector<bool>> support = {{false, true, false, true},
                                              {true, false, true, false},
                                              {false, true, false, false},
                                              {true, false, false, false}};
    StepGraphon w(masses, support);
    auto base_sys = quotient_system(w);
    auto base = solve_entropy(base_sys, base_sys.universe(), tight());

    const int perm[m] = {2, 0, 3, 1};
    std::vector<double> pm(m);
    std::vector<std::vector<bool>> ps(m, std::vector<bool>(m));
    for (int i = 0; i < m; ++i) {
        pm[perm[i]] = masses[i];
        for (int j = 0; j < m; ++j) ps[perm[i]][perm[j]] = support[i][j];
    }
    StepGraphon permuted(pm, ps);
    auto sys = quotient_system(permuted);
    auto moved = solve_entropy(sys, sys.universe(), tight());
    CHECK(moved.value == doctest::Approx(base.value).epsilon(1e-9));
}

TEST_CASE("splitting a block in halves leaves the entropy unchanged") {
    StepGraphon w({0.5, 0.5}, {{false, true}, {true, false}});
    auto base = solve_entropy(quotient_system(w), quotient_system(w).universe(), tight());

    StepGraphon split({0.25, 0.25, 0.5},
                      {{false, false, true}, {false, false, true}, {true, true, false}});
    auto sys = quotient_system(split);
    auto refined = solve_entropy(sys, sys.universe(), tight());
    CHECK(std::abs(refined.value - base.value) <= 1e-8);
}

TEST_CASE("arc density representation") {
    auto uniform = ArcDensity::uniform();
    CHECK(uniform.eval(0.3) == 1.0);
    CHECK(uniform.integral(0.9, 0.2) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(uniform.entropy_integral() == 0.0);

    CHECK_THROWS_AS(ArcDensity({{0.0, 2.0, 0.0}}), input_error);          // integrates to 2
    CHECK_THROWS_AS(ArcDensity({{0.0, -1.0, 0.0}}), input_error);         // negative
    CHECK_THROWS_AS(ArcDensity({{0.1, 1.0, 0.0}}), input_error);          // must start at 0
    CHECK_THROWS_AS(ArcDensity::step({{0.0, 1.0}, {0.0, 1.0}}), input_error);

    auto half = ArcDensity::step({{0.0, 2.0}, {0.5, 0.0}});
    CHECK(half.eval(0.25) == 2.0);
    CHECK(half.eval(0.75) == 0.0);
    CHECK(half.integral(0.25, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(half.integral(0.75, 0.5) == doctest::Approx(0.5).epsilon(1e-12));  // wraps
}

TEST_CASE("smooth_density: constant stays constant, half becomes the tent") {
    auto uniform = smooth_density(ArcDensity::uniform(), 0.3);
    for (double x : {0.0, 0.21, 0.55, 0.99}) CHECK(uniform.eval(x) == doctest::Approx(1.0));

    auto tent = smooth_density(ArcDensity::step({{0.0, 2.0}, {0.5, 0.0}}), 0.5);
    // g = 2 - 4x on [0, 1/2], 4x - 2 on [1/2, 1]
    for (double x : {0.0, 0.1, 0.3, 0.49}) CHECK(tent.eval(x) == doctest::Approx(2 - 4 * x).epsilon(1e-10));
    for (double x : {0.51, 0.7, 0.9}) CHECK(tent.eval(x) == doctest::Approx(4 * x - 2).epsilon(1e-10));
    CHECK(tent.integral(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));

    // close to a full window the average flattens out
    auto nearly_full = smooth_density(ArcDensity::step({{0.0, 2.0}, {0.5, 0.0}}), 0.999);
    for (double x : {0.1, 0.6}) CHECK(nearly_full.eval(x) == doctest::Approx(1.0).epsilon(2e-3));

    CHECK_THROWS_AS(smooth_density(smooth_density(ArcDensity::step({{0.0, 2.0}, {0.5, 0.0}}), 0.5), 0.5),
                    input_error);  // tent is not piecewise constant
}

TEST_CASE("entropy integral matches Simpson quadrature") {
    auto tent = smooth_density(ArcDensity::step({{0.0, 2.0}, {0.5, 0.0}}), 0.5);
    auto f = [&](double x) {
        double g = tent.eval(x);
        return g > 0 ? g * std::log(g) : 0.0;
    };
    double quad = oracles::simpson(f, 0.0, 0.5, 20000) + oracles::simpson(f, 0.5, 1.0, 20000);
    CHECK(tent.entropy_integral() == doctest::Approx(quad).epsilon(1e-8));
    CHECK(tent.entropy_integral() == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-12));
}

TEST_CASE("arc_entropy bounds and exactness") {
    auto uniform_result = arc_entropy(ArcDensity::uniform(), 0.25, true);
    CHECK(uniform_result.lower_bound == circle_graphon_entropy(0.25));  // exact equality
    REQUIRE(uniform_result.exact.has_value());
    CHECK(*uniform_result.exact == uniform_result.lower_bound);

    auto tent = smooth_density(ArcDensity::step({{0.0, 2.0}, {0.5, 0.0}}), 0.5);
    auto smoothed = arc_entropy(tent, 0.5, true);
    REQUIRE(smoothed.exact.has_value());
    CHECK(*smoothed.exact == doctest::Approx(0.5).epsilon(1e-12));

    auto unattested = arc_entropy(tent, 0.5, false);
    CHECK_FALSE(unattested.exact.has_value());
    CHECK(unattested.lower_bound == smoothed.lower_bound);

    auto near_full = arc_entropy(ArcDensity::uniform(), 0.999, true);
    CHECK(near_full.lower_bound == doctest::Approx(0.0).epsilon(1e-3));
}

TEST_CASE("smooth_density preserves mass and nonnegativity") {
    Rng rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        // random piecewise-constant density with 3 pieces
        double b1 = 0.2 + 0.3 * rng.uniform();
        double b2 = b1 + 0.2 + 0.2 * rng.uniform();
        double v1 = 0.2 + rng.uniform();
        double v2 = 0.2 + rng.uniform();
        // third level chosen so the total mass is exactly 1
        double len3 = 1.0 - b2;
        double v3 = (1.0 - v1 * b1 - v2 * (b2 - b1)) / len3;
        if (v3 < 0.0) continue;
        auto g_hat = ArcDensity::step({{0.0, v1}, {b1, v2}, {b2, v3}});
        double alpha = 0.1 + 0.8 * rng.uniform();
        auto g = smooth_density(g_hat, alpha);
        CHECK(g.integral(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-10));
        for (const auto& piece : g.pieces()) {
            CHECK(piece.value >= -1e-12);
            CHECK(g.eval(piece.start + 1e-9) >= -1e-12);
        }
    }
}

TEST_CASE("independent events all-but-one formula") {
    CHECK(independent_events_allbutone(0.5, 0.5) == -std::log(0.5));
    CHECK(independent_events_allbutone(0.25, 0.25) == -std::log(0.25));
    CHECK(independent_events_allbutone(0.9, 0.5) ==
          doctest::Approx(0.325082973391448).epsilon(1e-12));
    CHECK_THROWS_AS(independent_events_allbutone(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(independent_events_allbutone(0.4, 0.5), std::domain_error);
    CHECK_THROWS_AS(independent_events_allbutone(0.5, 0.0), std::domain_error);
}
