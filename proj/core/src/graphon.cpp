#include "vpent/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "vpent/errors.hpp"
#include "vpent/graph.hpp"

namespace vpent {

namespace {

int words_for(int n) { return (n + 63) / 64; }
void set_bit(std::vector<std::uint64_t>& b, int i) { b[i >> 6] |= std::uint64_t(1) << (i & 63); }

}  // namespace

StepGraphon::StepGraphon(std::vector<double> block_masses, std::vector<std::vector<bool>> support)
    : masses_(std::move(block_masses)), support_(std::move(support)) {
    const int m = static_cast<int>(masses_.size());
    if (m == 0) throw input_error("step graphon needs at least one block");
    double total = 0.0;
    for (double v : masses_) {
        if (!(v >= 0.0)) throw input_error("negative block mass");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-10) throw input_error("block masses must sum to 1");
    if (static_cast<int>(support_.size()) != m) throw input_error("support matrix is not m x m");
    for (const auto& row : support_)
        if (static_cast<int>(row.size()) != m) throw input_error("support matrix is not m x m");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j)
            if (support_[i][j] != support_[j][i]) throw input_error("support matrix not symmetric");
}

SetSystem quotient_system(const StepGraphon& w) {
    const int m = w.blocks();
    std::vector<int> eligible;  // blocks that can sit inside an independent set
    for (int i = 0; i < m; ++i)
        if (!w.support(i, i)) eligible.push_back(i);
    if (eligible.empty())
        throw input_error("quotient_system: every block is self-distinguishable");

    // maximal independent block sets = maximal cliques of the complement
    // restricted to eligible blocks
    const int ne = static_cast<int>(eligible.size());
    std::vector<std::vector<std::uint64_t>> comp(ne,
                                                 std::vector<std::uint64_t>(words_for(ne), 0));
    for (int a = 0; a < ne; ++a)
        for (int b = 0; b < ne; ++b)
            if (a != b && !w.support(eligible[a], eligible[b])) set_bit(comp[a], b);
    auto local_sets = detail::max_cliques(comp, ne);

    std::vector<std::vector<int>> family;
    family.reserve(local_sets.size());
    for (auto& s : local_sets) {
        std::vector<int> g;
        g.reserve(s.size());
        for (int v : s) g.push_back(eligible[v]);
        family.push_back(std::move(g));
    }
    std::sort(family.begin(), family.end());

    std::vector<Atom> atoms;
    atoms.reserve(m);
    for (int i = 0; i < m; ++i) atoms.push_back({"b" + std::to_string(i), w.mass(i)});
    return SetSystem(Distribution(std::move(atoms)), std::move(family),
                     SystemOrigin::graphon_quotient);
}

double circle_graphon_entropy(double c) {
    if (!(c > 0.0) || !(c < 0.5))
        throw std::domain_error("circle_graphon_entropy: c must lie in (0, 1/2)");
    return -std::log(c);
}

double interval_graphon_entropy(double c) {
    if (!(c > 0.0) || !(c <= 1.0))
        throw std::domain_error("interval_graphon_entropy: c must lie in (0, 1]");
    // 1/c < n+1, so this start never overshoots the target n
    int n = std::max(1, static_cast<int>(1.0 / c) - 2);
    while (!(c > 1.0 / static_cast<double>(n + 1))) ++n;
    // here 1/(n+1) < c <= 1/n
    if (c == 1.0 / static_cast<double>(n)) return std::log(static_cast<double>(n));
    double dn = static_cast<double>(n);
    return dn * (dn + 1.0) *
           ((1.0 / dn - c) * std::log(dn + 1.0) + (c - 1.0 / (dn + 1.0)) * std::log(dn));
}

StepGraphon discretize_circle(double c, int m) {
    if (m < 2) throw std::domain_error("discretize_circle: need at least 2 blocks");
    if (!(c > 0.0) || !(c < 0.5))
        throw std::domain_error("discretize_circle: c must lie in (0, 1/2)");
    std::vector<double> masses(m, 1.0 / static_cast<double>(m));
    double acc = 0.0;
    for (int i = 0; i + 1 < m; ++i) acc += masses[i];
    masses[m - 1] = 1.0 - acc;

    // blocks are distinguishable iff the circular distance of their centers
    // exceeds c; compare k/m > c as k > c*m to keep the test exact
    const double threshold = c * static_cast<double>(m);
    std::vector<std::vector<bool>> support(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int k = std::abs(i - j);
            k = std::min(k, m - k);
            support[i][j] = static_cast<double>(k) > threshold;
        }
    return StepGraphon(std::move(masses), std::move(support));
}

ArcDensity::ArcDensity(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw input_error("arc density needs at least one piece");
    if (pieces_.front().start != 0.0) throw input_error("arc density pieces must start at 0");
    for (size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].start < 0.0 || pieces_[i].start >= 1.0)
            throw input_error("arc density breakpoints must lie in [0,1)");
        if (i > 0 && !(pieces_[i].start > pieces_[i - 1].start))
            throw input_error("arc density breakpoints must increase");
    }
    double total = 0.0;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& p = pieces_[i];
        double len = piece_end(static_cast<int>(i)) - p.start;
        double end_value = p.value + p.slope * len;
        if (p.value < -1e-12 || end_value < -1e-12)
            throw input_error("arc density must be nonnegative");
        total += len * (p.value + 0.5 * p.slope * len);
    }
    if (std::abs(total - 1.0) > 1e-10) throw input_error("arc density must integrate to 1");
}

ArcDensity ArcDensity::uniform() { return ArcDensity({{0.0, 1.0, 0.0}}); }

ArcDensity ArcDensity::step(const std::vector<std::pair<double, double>>& levels) {
    std::vector<Piece> pieces;
    pieces.reserve(levels.size());
    for (const auto& [start, value] : levels) pieces.push_back({start, value, 0.0});
    return ArcDensity(std::move(pieces));
}

double ArcDensity::piece_end(int i) const {
    return i + 1 < static_cast<int>(pieces_.size()) ? pieces_[i + 1].start : 1.0;
}

bool ArcDensity::piecewise_constant() const {
    for (const Piece& p : pieces_)
        if (std::abs(p.slope) > 1e-14) return false;
    return true;
}

double ArcDensity::eval(double x) const {
    x -= std::floor(x);
    int lo = 0, hi = static_cast<int>(pieces_.size());
    while (lo + 1 < hi) {
        int mid = (lo + hi) / 2;
        if (pieces_[mid].start <= x)
            lo = mid;
        else
            hi = mid;
    }
    const Piece& p = pieces_[lo];
    return p.value + p.slope * (x - p.start);
}

double ArcDensity::integral(double from, double len) const {
    if (len < 0.0 || len > 1.0 + 1e-12) throw input_error("integral length must lie in [0,1]");
    from -= std::floor(from);
    // cumulative integral from 0 to t for t in [0, 2)
    auto cum = [&](double t) {
        double whole = std::floor(t);
        double frac = t - whole;
        double acc = 0.0;
        for (size_t i = 0; i < pieces_.size(); ++i) {
            double a = pieces_[i].start, b = piece_end(static_cast<int>(i));
            if (frac <= a) break;
            double upto = std::min(frac, b) - a;
            acc += upto * (pieces_[i].value + 0.5 * pieces_[i].slope * upto);
        }
        return whole + acc;  // full turns each contribute exactly 1
    };
    return cum(from + len) - cum(from);
}

double ArcDensity::entropy_integral() const {
    // integral of u log u via G(y) = y^2 (log(y)/2 - 1/4), G(0) = 0
    auto G = [](double y) {
        if (y <= 0.0) return 0.0;
        return y * y * (0.5 * std::log(y) - 0.25);
    };
    double acc = 0.0;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& p = pieces_[i];
        double len = piece_end(static_cast<int>(i)) - p.start;
        if (std::abs(p.slope) < 1e-14) {
            if (p.value > 0.0) acc += len * p.value * std::log(p.value);
        } else {
            double y0 = std::max(p.value, 0.0);
            double y1 = std::max(p.value + p.slope * len, 0.0);
            acc += (G(y1) - G(y0)) / p.slope;
        }
    }
    return acc;
}

ArcDensity smooth_density(const ArcDensity& g_hat, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("smooth_density: alpha must lie in (0,1)");
    if (!g_hat.piecewise_constant())
        throw input_error("smooth_density: input must be piecewise constant");

    std::vector<double> cuts;
    for (const auto& p : g_hat.pieces()) {
        cuts.push_back(p.start);
        double shifted = p.start - alpha;
        shifted -= std::floor(shifted);
        if (shifted >= 1.0) shifted = 0.0;
        cuts.push_back(shifted);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-13; }),
               cuts.end());
    if (cuts.empty() || cuts.front() > 1e-13) cuts.insert(cuts.begin(), 0.0);
    cuts.front() = 0.0;

    std::vector<ArcDensity::Piece> pieces;
    pieces.reserve(cuts.size());
    const double inv_alpha = 1.0 / alpha;
    for (size_t i = 0; i < cuts.size(); ++i) {
        double start = cuts[i];
        double end = i + 1 < cuts.size() ? cuts[i + 1] : 1.0;
        double mid = 0.5 * (start + end);
        double value = inv_alpha * g_hat.integral(start, alpha);
        double slope = inv_alpha * (g_hat.eval(mid + alpha) - g_hat.eval(mid));
        pieces.push_back({start, value, slope});
    }
    return ArcDensity(std::move(pieces));
}

ArcEntropy arc_entropy(const ArcDensity& g, double alpha, bool smoothed) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("arc_entropy: alpha must lie in (0,1)");
    ArcEntropy out;
    out.lower_bound = -g.entropy_integral() - std::log(alpha);
    if (smoothed) out.exact = out.lower_bound;
    return out;
}

double independent_events_allbutone(double m1, double m_inf) {
    if (!(m1 < 1.0) || !(m1 >= m_inf) || !(m_inf > 0.0))
        throw std::domain_error("independent_events_allbutone: need 1 > m1 >= m_inf > 0");
    if (m1 == m_inf) return -std::log(m_inf);  // all events alike: formula collapses
    return -m1 * std::log(m1) +
           (1.0 - m1) * (std::log(1.0 - m_inf) - std::log(m_inf) - std::log(1.0 - m1));
}

}  // namespace vpent
