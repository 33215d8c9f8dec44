#include "vpent/fractional.hpp"

#include <cmath>
#include <limits>

#include "vpent/errors.hpp"
#include "vpent/simplex.hpp"

namespace vpent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

lp::Solution run_simplex(const lp::Program& prog, const char* what) {
    lp::Solution s = lp::solve(prog);
    if (s.status != lp::Status::optimal)
        throw input_error(std::string(what) + ": LP did not reach an optimal basis");
    return s;
}

}  // namespace

LpResult frac_chromatic(const SetSystem& system) {
    const Distribution& u = system.universe();
    if (!system.covers_support()) {
        LpResult r;
        r.objective = kInf;
        return r;
    }

    // min sum c_J  s.t.  sum over sets containing x of c_J >= 1 per support atom
    lp::Program prog;
    prog.num_vars = system.family_size();
    prog.objective.assign(prog.num_vars, 1.0);
    std::vector<int> row_atom;
    for (int x = 0; x < u.size(); ++x) {
        if (u.mass(x) <= 0.0) continue;
        lp::Row row;
        for (int k : system.memberships()[x]) row.coeffs.emplace_back(k, 1.0);
        row.sense = lp::Sense::ge;
        row.rhs = 1.0;
        prog.rows.push_back(std::move(row));
        row_atom.push_back(x);
    }

    lp::Solution s = run_simplex(prog, "frac_chromatic");
    LpResult r;
    r.objective = s.objective;
    r.primal = s.x;
    r.dual.assign(u.size(), 0.0);
    double dual_obj = 0.0;
    for (size_t i = 0; i < row_atom.size(); ++i) {
        r.dual[row_atom[i]] = s.dual[i];
        dual_obj += s.dual[i];
    }
    r.duality_gap = std::abs(r.objective - dual_obj);
    return r;
}

LpResult frac_clique(const SetSystem& system) {
    const Distribution& u = system.universe();
    std::vector<int> vars;  // support atoms become LP variables
    std::vector<int> var_of(u.size(), -1);
    for (int x = 0; x < u.size(); ++x)
        if (u.mass(x) > 0.0) {
            var_of[x] = static_cast<int>(vars.size());
            vars.push_back(x);
        }

    // max sum b_x  s.t.  sum_{x in J} b_x <= 1 per family set;
    // atoms in no family set are capped at 1
    lp::Program prog;
    prog.maximize = true;
    prog.num_vars = static_cast<int>(vars.size());
    prog.objective.assign(prog.num_vars, 1.0);
    std::vector<int> row_set;
    for (int k = 0; k < system.family_size(); ++k) {
        lp::Row row;
        for (int x : system.set(k))
            if (var_of[x] >= 0) row.coeffs.emplace_back(var_of[x], 1.0);
        if (row.coeffs.empty()) continue;
        row.sense = lp::Sense::le;
        row.rhs = 1.0;
        prog.rows.push_back(std::move(row));
        row_set.push_back(k);
    }
    for (int x : vars) {
        if (!system.memberships()[x].empty()) continue;
        lp::Row row;
        row.coeffs.emplace_back(var_of[x], 1.0);
        row.sense = lp::Sense::le;
        row.rhs = 1.0;
        prog.rows.push_back(std::move(row));
        row_set.push_back(-1);
    }
    if (prog.num_vars == 0) {
        LpResult r;  // no support: empty packing
        r.primal.assign(u.size(), 0.0);
        return r;
    }

    lp::Solution s = run_simplex(prog, "frac_clique");
    LpResult r;
    r.objective = s.objective;
    r.primal.assign(u.size(), 0.0);
    for (size_t i = 0; i < vars.size(); ++i) r.primal[vars[i]] = s.x[i];
    r.dual.assign(system.family_size(), 0.0);
    double dual_obj = 0.0;
    for (size_t i = 0; i < row_set.size(); ++i) {
        if (row_set[i] >= 0) r.dual[row_set[i]] = s.dual[i];
        dual_obj += s.dual[i];
    }
    r.duality_gap = std::abs(r.objective - dual_obj);
    return r;
}

Distribution entropy_maximizing_distribution(const SetSystem& system) {
    LpResult omega = frac_clique(system);
    if (!(omega.objective > 0.0) || !std::isfinite(omega.objective))
        throw input_error("entropy_maximizing_distribution: degenerate packing optimum");
    double total = 0.0;
    for (double b : omega.primal) total += b;
    if (total <= 0.0)
        throw input_error("entropy_maximizing_distribution: all-zero packing optimum");

    const Distribution& u = system.universe();
    std::vector<Atom> atoms;
    atoms.reserve(u.size());
    for (int x = 0; x < u.size(); ++x) atoms.push_back({u.id(x), omega.primal[x] / total});
    // make the masses sum to 1 exactly
    double acc = 0.0;
    int last_pos = -1;
    for (int x = 0; x < u.size(); ++x)
        if (atoms[x].mass > 0.0) last_pos = x;
    for (int x = 0; x < u.size(); ++x)
        if (x != last_pos) acc += atoms[x].mass;
    atoms[last_pos].mass = 1.0 - acc;
    return Distribution(std::move(atoms));
}

}  // namespace vpent
