#pragma once

#include <vector>

namespace vpent::lp {

enum class Sense { le, ge, eq };

struct Row {
    std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
    Sense sense = Sense::le;
    double rhs = 0.0;
};

// min (or max) c'x subject to rows, x >= 0.
struct Program {
    int num_vars = 0;
    bool maximize = false;
    std::vector<double> objective;
    std::vector<Row> rows;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
    Status status = Status::optimal;
    double objective = 0.0;
    std::vector<double> x;     // primal values
    std::vector<double> dual;  // one multiplier per row, from the final basis
};

// Dense tableau primal simplex with Bland's rule. Infeasibility handled by
// big-M artificials; duals are read off the slack/artificial columns of the
// final tableau. Intended for desk-scale instances (a few thousand rows).
Solution solve(const Program& p, long max_pivots = 1000000);

}  // namespace vpent::lp
