#pragma once

#include <optional>
#include <vector>

#include "vpent/set_system.hpp"

namespace vpent {

// 0-1 step graphon: block masses plus a symmetric boolean support matrix
// (true = the pair of blocks is distinguishable, i.e. W > 0 there). Only the
// zero set of W matters for independence, so values in (0,1] collapse to true.
class StepGraphon {
public:
    StepGraphon(std::vector<double> block_masses, std::vector<std::vector<bool>> support);

    int blocks() const { return static_cast<int>(masses_.size()); }
    double mass(int i) const { return masses_[i]; }
    const std::vector<double>& masses() const { return masses_; }
    bool support(int i, int j) const { return support_[i][j]; }

private:
    std::vector<double> masses_;
    std::vector<std::vector<bool>> support_;
};

// Quotient of a step graphon: universe = blocks with their masses, family =
// maximal block sets S with support false on S x S (diagonal included).
// Solving the quotient gives the graphon's entropy. Throws input_error when
// no block can sit in any independent set (all-true diagonal).
SetSystem quotient_system(const StepGraphon& w);

// Circle with arc-distance threshold c in (0, 1/2): entropy is -log c.
double circle_graphon_entropy(double c);

// Interval [0,1] with |x-y| > c distinguishable, 0 < c <= 1: with n the unique
// integer satisfying 1/(n+1) < c <= 1/n,
//   n(n+1) * ((1/n - c) log(n+1) + (c - 1/(n+1)) log n).
double interval_graphon_entropy(double c);

// m equal blocks on the circle; blocks are distinguishable iff their center
// distance (circular) exceeds c. Deterministic discretization harness for the
// circle formula. Requires m >= 2, 0 < c < 1/2.
StepGraphon discretize_circle(double c, int m);

// Piecewise-linear probability density on the circle [0,1). Piece i covers
// [start_i, start_{i+1}) (the last wraps to start_0 + 1) with
// g(x) = value + slope * (x - start).
class ArcDensity {
public:
    struct Piece {
        double start = 0.0;
        double value = 0.0;
        double slope = 0.0;
    };

    explicit ArcDensity(std::vector<Piece> pieces);

    static ArcDensity uniform();
    // Piecewise-constant density from (start, value) pairs; starts sorted in [0,1).
    static ArcDensity step(const std::vector<std::pair<double, double>>& levels);

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool piecewise_constant() const;

    double eval(double x) const;
    // Integral of g over the circular arc [from, from + len], 0 <= len <= 1.
    double integral(double from, double len) const;
    // Integral of g log g over the whole circle, piecewise closed form.
    double entropy_integral() const;

private:
    double piece_end(int i) const;
    std::vector<Piece> pieces_;
};

// Circular window average g(x) = (1/alpha) * integral of g_hat over
// [x, x+alpha]. Input must be piecewise constant (the average is then
// piecewise linear, which is what ArcDensity can represent).
ArcDensity smooth_density(const ArcDensity& g_hat, double alpha);

struct ArcEntropy {
    double lower_bound = 0.0;
    std::optional<double> exact;
};

// Entropy bound for the system of length-alpha arcs under density g:
//   lower_bound = -int g log g - log alpha.
// `smoothed` attests that g was produced by smooth_density, in which case the
// bound is attained and `exact` is populated.
ArcEntropy arc_entropy(const ArcDensity& g, double alpha, bool smoothed);

// Countable system of independent events with masses m1, m_inf, m_inf, ...
// where 1 > m1 >= m_inf > 0:
//   -m1 log m1 + (1-m1) (log(1-m_inf) - log m_inf - log(1-m1)).
double independent_events_allbutone(double m1, double m_inf);

}  // namespace vpent
