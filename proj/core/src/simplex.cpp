#include "vpent/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "vpent/errors.hpp"

namespace vpent::lp {

namespace {

constexpr double kEps = 1e-9;

struct Tableau {
    int m = 0, total = 0;
    std::vector<std::vector<double>> row;  // m x total
    std::vector<double> rhs;               // m
    std::vector<double> cost;              // reduced cost row, length total
    double obj_shift = 0.0;                // -c_B B^-1 b accumulated
    std::vector<int> basis;                // basic column per row

    void pivot(int r, int c) {
        double piv = row[r][c];
        for (double& v : row[r]) v /= piv;
        rhs[r] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            double factor = row[i][c];
            if (factor == 0.0) continue;
            for (int j = 0; j < total; ++j) row[i][j] -= factor * row[r][j];
            row[i][c] = 0.0;
            rhs[i] -= factor * rhs[r];
        }
        double factor = cost[c];
        if (factor != 0.0) {
            for (int j = 0; j < total; ++j) cost[j] -= factor * row[r][j];
            cost[c] = 0.0;
            obj_shift -= factor * rhs[r];
        }
        basis[r] = c;
    }
};

}  // namespace

Solution solve(const Program& p, long max_pivots) {
    const int n = p.num_vars;
    const int m = static_cast<int>(p.rows.size());
    if (static_cast<int>(p.objective.size()) != n)
        throw input_error("simplex: objective length mismatch");

    // normalized rows with nonnegative rhs
    std::vector<Row> rows = p.rows;
    std::vector<bool> flipped(m, false);
    for (int i = 0; i < m; ++i) {
        Row& r = rows[i];
        if (r.rhs < 0.0) {
            r.rhs = -r.rhs;
            for (auto& [j, v] : r.coeffs) v = -v;
            if (r.sense == Sense::le)
                r.sense = Sense::ge;
            else if (r.sense == Sense::ge)
                r.sense = Sense::le;
            flipped[i] = true;
        }
    }

    // column layout: structural | slack/surplus | artificial
    int num_slack = 0, num_art = 0;
    for (const auto& r : rows) {
        if (r.sense != Sense::eq) ++num_slack;
        if (r.sense != Sense::le) ++num_art;
    }
    Tableau t;
    t.m = m;
    t.total = n + num_slack + num_art;
    t.row.assign(m, std::vector<double>(t.total, 0.0));
    t.rhs.assign(m, 0.0);
    t.cost.assign(t.total, 0.0);
    t.basis.assign(m, -1);

    double max_abs_c = 1.0;
    for (double c : p.objective) max_abs_c = std::max(max_abs_c, std::abs(c));
    const double big_m = 1e7 * max_abs_c;

    for (int j = 0; j < n; ++j) t.cost[j] = p.maximize ? -p.objective[j] : p.objective[j];

    int slack_at = n, art_at = n + num_slack;
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    for (int i = 0; i < m; ++i) {
        const Row& r = rows[i];
        for (const auto& [j, v] : r.coeffs) {
            if (j < 0 || j >= n) throw input_error("simplex: bad variable index");
            t.row[i][j] += v;
        }
        t.rhs[i] = r.rhs;
        if (r.sense == Sense::le) {
            slack_col[i] = slack_at;
            t.row[i][slack_at] = 1.0;
            t.basis[i] = slack_at++;
        } else if (r.sense == Sense::ge) {
            slack_col[i] = slack_at;
            t.row[i][slack_at++] = -1.0;
            art_col[i] = art_at;
            t.row[i][art_at] = 1.0;
            t.cost[art_at] = big_m;
            t.basis[i] = art_at++;
        } else {
            art_col[i] = art_at;
            t.row[i][art_at] = 1.0;
            t.cost[art_at] = big_m;
            t.basis[i] = art_at++;
        }
    }
    // price out basic artificials
    for (int i = 0; i < m; ++i) {
        int b = t.basis[i];
        if (t.cost[b] != 0.0) {
            double factor = t.cost[b];
            for (int j = 0; j < t.total; ++j) t.cost[j] -= factor * t.row[i][j];
            t.cost[b] = 0.0;
            t.obj_shift -= factor * t.rhs[i];
        }
    }

    Solution sol;
    long pivots = 0;
    while (true) {
        // Bland: lowest-index column with negative reduced cost
        int enter = -1;
        for (int j = 0; j < t.total; ++j)
            if (t.cost[j] < -kEps) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        // ratio test; ties by lowest basis variable index (Bland)
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            double coef = t.row[i][enter];
            if (coef > kEps) {
                double ratio = t.rhs[i] / coef;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (leave < 0 || t.basis[i] < t.basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) {
            sol.status = Status::unbounded;
            sol.objective = p.maximize ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
            return sol;
        }
        t.pivot(leave, enter);
        if (++pivots >= max_pivots) {
            sol.status = Status::iteration_limit;
            return sol;
        }
    }

    // feasibility: artificials must have left the basis (or sit at zero)
    for (int i = 0; i < m; ++i)
        if (art_col[i] >= 0 && t.basis[i] == art_col[i] && t.rhs[i] > 1e-7) {
            sol.status = Status::infeasible;
            return sol;
        }

    sol.status = Status::optimal;
    sol.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.rhs[i];

    double min_obj = -t.obj_shift;
    sol.objective = p.maximize ? -min_obj : min_obj;

    // duals from the reduced costs of slack/artificial columns
    sol.dual.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double y;
        if (rows[i].sense == Sense::le)
            y = -t.cost[slack_col[i]];
        else if (rows[i].sense == Sense::ge)
            y = t.cost[slack_col[i]];
        else
            y = big_m - t.cost[art_col[i]];
        if (p.maximize) y = -y;
        if (flipped[i]) y = -y;
        sol.dual[i] = y;
    }
    return sol;
}

}  // namespace vpent::lp
