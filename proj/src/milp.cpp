#include "sgsim/milp.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstring>
#include <queue>
#include <sstream>
#include <vector>

namespace sgsim::milp {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kIntTol = 1e-6;

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x; // structural variables only
};

/// Standardized instance: equality rows over structural + slack columns.
/// Built once per LinearProgram; bounds are supplied per solve so that
/// branch-and-bound nodes reuse the matrix.
class SimplexEngine {
public:
    explicit SimplexEngine(const LinearProgram& lp) : n_(lp.variable_count()) {
        // min form
        cost_.assign(static_cast<std::size_t>(n_), 0.0);
        const double sign = lp.sense == Sense::Maximize ? -1.0 : 1.0;
        for (int j = 0; j < n_; ++j) cost_[static_cast<std::size_t>(j)] = sign * lp.objective[static_cast<std::size_t>(j)];

        m_ = lp.constraint_count();
        n_slack_ = 0;
        for (const auto& c : lp.cons)
            if (c.relation != Relation::Equal) ++n_slack_;
        width_ = n_ + n_slack_ + 1; // + rhs column

        matrix_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(width_), 0.0);
        int slack = 0;
        for (int i = 0; i < m_; ++i) {
            double* row = matrix_row(i);
            const auto& c = lp.cons[static_cast<std::size_t>(i)];
            for (const auto& [v, coef] : c.terms) row[v] += coef;
            if (c.relation != Relation::Equal) {
                row[n_ + slack] = c.relation == Relation::LessEq ? 1.0 : -1.0;
                ++slack;
            }
            row[width_ - 1] = c.rhs;
        }
    }

    int structural_count() const { return n_; }

    /// Default variable bounds straight from the program.
    void default_bounds(const LinearProgram& lp, std::vector<double>& lb,
                        std::vector<double>& ub) const {
        lb.resize(static_cast<std::size_t>(n_));
        ub.resize(static_cast<std::size_t>(n_));
        for (int j = 0; j < n_; ++j) {
            lb[static_cast<std::size_t>(j)] = lp.vars[static_cast<std::size_t>(j)].lower;
            ub[static_cast<std::size_t>(j)] = lp.vars[static_cast<std::size_t>(j)].upper;
        }
    }

    /// Two-phase bounded-variable simplex. Dantzig pricing with a Bland
    /// fallback after degenerate stalls.
    LpResult solve(const std::vector<double>& lb_struct, const std::vector<double>& ub_struct) {
        const int cols = n_ + n_slack_; // real columns
        lo_.assign(static_cast<std::size_t>(cols), 0.0);
        up_.assign(static_cast<std::size_t>(cols), kInf);
        for (int j = 0; j < n_; ++j) {
            lo_[static_cast<std::size_t>(j)] = lb_struct[static_cast<std::size_t>(j)];
            up_[static_cast<std::size_t>(j)] = ub_struct[static_cast<std::size_t>(j)];
        }
        // slack bounds are [0, inf) and their matrix coefficient carries the sense

        T_.assign(matrix_.begin(), matrix_.end());
        val_.assign(static_cast<std::size_t>(cols), 0.0);
        for (int j = 0; j < cols; ++j) val_[static_cast<std::size_t>(j)] = nearest_bound(j);

        basis_.assign(static_cast<std::size_t>(m_), -1);
        xb_.assign(static_cast<std::size_t>(m_), 0.0);
        row_of_.assign(static_cast<std::size_t>(cols), -1);
        dead_row_.assign(static_cast<std::size_t>(m_), 0);
        artificial_rows_.clear();

        // Initial basis: the row's slack when feasible, else a virtual
        // artificial (oriented so its value is non-negative).
        for (int i = 0; i < m_; ++i) {
            double* row = T_row(i);
            double residual = row[width_ - 1];
            int slack_col = -1;
            for (int j = n_; j < cols; ++j)
                if (row[j] != 0.0) { slack_col = j; break; }
            for (int j = 0; j < n_; ++j) residual -= row[j] * val_[static_cast<std::size_t>(j)];

            if (slack_col >= 0) {
                const double coef = row[slack_col];
                const double sval = residual / coef;
                if (sval >= 0.0) {
                    if (coef != 1.0)
                        for (int j = 0; j < width_; ++j) row[j] /= coef;
                    set_basic(slack_col, i, sval);
                    continue;
                }
            }
            if (residual < 0.0)
                for (int j = 0; j < width_; ++j) row[j] = -row[j];
            basis_[static_cast<std::size_t>(i)] = kArtificial;
            xb_[static_cast<std::size_t>(i)] = std::abs(residual);
            artificial_rows_.push_back(i);
        }

        // Phase 1: drive artificial infeasibility to zero.
        if (!artificial_rows_.empty()) {
            dj_.assign(static_cast<std::size_t>(cols), 0.0);
            for (int i : artificial_rows_) {
                const double* row = T_row(i);
                for (int j = 0; j < cols; ++j) dj_[static_cast<std::size_t>(j)] -= row[j];
            }
            double z1 = 0.0;
            for (int i : artificial_rows_) z1 += xb_[static_cast<std::size_t>(i)];
            if (!iterate(true, z1)) return {LpStatus::Infeasible, 0.0, {}};
            if (z1 > 1e-7) return {LpStatus::Infeasible, 0.0, {}};
            cleanup_artificials();
        }

        // Phase 2.
        dj_.assign(static_cast<std::size_t>(cols), 0.0);
        for (int j = 0; j < cols; ++j) dj_[static_cast<std::size_t>(j)] = cost_of(j);
        for (int i = 0; i < m_; ++i) {
            const int b = basis_[static_cast<std::size_t>(i)];
            if (b == kArtificial) continue;
            const double cb = cost_of(b);
            if (cb == 0.0) continue;
            const double* row = T_row(i);
            for (int j = 0; j < cols; ++j) dj_[static_cast<std::size_t>(j)] -= cb * row[j];
        }
        double z = 0.0; // tracked incrementally; the exact value is recomputed at the end
        if (!iterate(false, z)) return {LpStatus::Unbounded, 0.0, {}};

        LpResult res;
        res.status = LpStatus::Optimal;
        res.x.assign(static_cast<std::size_t>(n_), 0.0);
        refresh_basic_values();
        for (int j = 0; j < n_; ++j) {
            const int r = row_of_[static_cast<std::size_t>(j)];
            res.x[static_cast<std::size_t>(j)] =
                r >= 0 ? xb_[static_cast<std::size_t>(r)] : val_[static_cast<std::size_t>(j)];
        }
        res.objective = 0.0;
        for (int j = 0; j < n_; ++j)
            res.objective += cost_[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)];
        return res;
    }

private:
    static constexpr int kArtificial = -2;

    double* matrix_row(int i) { return matrix_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(width_); }
    const double* matrix_row(int i) const { return matrix_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(width_); }
    double* T_row(int i) { return T_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(width_); }

    double cost_of(int col) const {
        return col >= 0 && col < n_ ? cost_[static_cast<std::size_t>(col)] : 0.0;
    }

    double nearest_bound(int j) const {
        const double lo = lo_[static_cast<std::size_t>(j)], up = up_[static_cast<std::size_t>(j)];
        const bool lof = std::isfinite(lo), upf = std::isfinite(up);
        if (lof && upf) return std::abs(lo) <= std::abs(up) ? lo : up;
        if (lof) return lo;
        if (upf) return up;
        return 0.0;
    }

    void set_basic(int col, int row, double value) {
        basis_[static_cast<std::size_t>(row)] = col;
        row_of_[static_cast<std::size_t>(col)] = row;
        xb_[static_cast<std::size_t>(row)] = value;
    }

    /// Pivots/flips until optimal for the current cost row. Returns false on
    /// infeasibility-proof failure (phase 1 never) or unboundedness (phase 2).
    bool iterate(bool phase1, double& z) {
        const int cols = n_ + n_slack_;
        bool bland = false;
        int stall = 0;
        const long max_iter = 20000 + 200L * (m_ + cols);
        for (long iter = 0; iter < max_iter; ++iter) {
            if (phase1) {
                z = 0.0;
                for (int i : artificial_rows_)
                    if (basis_[static_cast<std::size_t>(i)] == kArtificial)
                        z += xb_[static_cast<std::size_t>(i)];
                if (z <= 1e-9) return true;
            }

            // entering column
            int enter = -1, dir = 0;
            double best = kCostTol;
            for (int j = 0; j < cols; ++j) {
                if (row_of_[static_cast<std::size_t>(j)] >= 0) continue;
                const double lo = lo_[static_cast<std::size_t>(j)], up = up_[static_cast<std::size_t>(j)];
                if (up - lo < 1e-12) continue; // fixed
                const double d = dj_[static_cast<std::size_t>(j)];
                const double v = val_[static_cast<std::size_t>(j)];
                int cand_dir = 0;
                if (v <= lo + 1e-12 && d < -best) cand_dir = 1;
                else if (v >= up - 1e-12 && d > best) cand_dir = -1;
                else if (v > lo + 1e-12 && v < up - 1e-12 && std::abs(d) > best) cand_dir = d < 0 ? 1 : -1;
                if (cand_dir != 0) {
                    enter = j;
                    dir = cand_dir;
                    if (bland) break; // first eligible index
                    best = std::abs(d);
                }
            }
            if (enter < 0) return phase1 ? true : true; // optimal for this phase

            // ratio test
            const double span = up_[static_cast<std::size_t>(enter)] - lo_[static_cast<std::size_t>(enter)];
            double t_best = std::isfinite(span) ? span : kInf;
            int leave = -1;
            double leave_pivot = 0.0;
            for (int i = 0; i < m_; ++i) {
                if (dead_row_[static_cast<std::size_t>(i)]) continue;
                const double a = T_row(i)[enter] * dir;
                if (std::abs(a) <= kPivotTol) continue;
                const int k = basis_[static_cast<std::size_t>(i)];
                const double xk = xb_[static_cast<std::size_t>(i)];
                double klo, kup;
                if (k == kArtificial) { klo = 0.0; kup = kInf; }
                else { klo = lo_[static_cast<std::size_t>(k)]; kup = up_[static_cast<std::size_t>(k)]; }
                double lim;
                if (a > 0.0) {
                    if (!std::isfinite(klo)) continue;
                    lim = (xk - klo) / a;
                } else {
                    if (!std::isfinite(kup)) continue;
                    lim = (kup - xk) / (-a);
                }
                if (lim < 0.0) lim = 0.0;
                if (lim < t_best - 1e-12) {
                    t_best = lim;
                    leave = i;
                    leave_pivot = std::abs(a);
                } else if (leave >= 0 && lim <= t_best + 1e-12) {
                    // tie: prefer the numerically larger pivot (Bland: lowest index)
                    if (bland) {
                        const int kb = basis_[static_cast<std::size_t>(leave)];
                        const int kc = basis_[static_cast<std::size_t>(i)];
                        if ((kc == kArtificial ? -1 : kc) < (kb == kArtificial ? -1 : kb)) {
                            leave = i;
                            leave_pivot = std::abs(a);
                        }
                    } else if (std::abs(a) > leave_pivot) {
                        leave = i;
                        leave_pivot = std::abs(a);
                    }
                }
            }

            if (!std::isfinite(t_best)) {
                if (phase1)
                    throw NumericalError("simplex: phase-1 ray (numerical breakdown)");
                return false; // unbounded
            }

            const double dz = dj_[static_cast<std::size_t>(enter)] * dir * t_best;
            if (leave < 0) {
                // bound flip
                for (int i = 0; i < m_; ++i) {
                    const double a = T_row(i)[enter];
                    if (a != 0.0) xb_[static_cast<std::size_t>(i)] -= a * dir * t_best;
                }
                val_[static_cast<std::size_t>(enter)] += dir * t_best;
            } else {
                const double new_val = val_[static_cast<std::size_t>(enter)] + dir * t_best;
                const int out = basis_[static_cast<std::size_t>(leave)];
                // update other basic values before the row operations
                for (int i = 0; i < m_; ++i) {
                    if (i == leave) continue;
                    const double a = T_row(i)[enter];
                    if (a != 0.0) xb_[static_cast<std::size_t>(i)] -= a * dir * t_best;
                }
                // leaving variable lands on the bound that blocked
                if (out != kArtificial) {
                    const double a = T_row(leave)[enter] * dir;
                    val_[static_cast<std::size_t>(out)] =
                        a > 0.0 ? lo_[static_cast<std::size_t>(out)] : up_[static_cast<std::size_t>(out)];
                    row_of_[static_cast<std::size_t>(out)] = -1;
                }
                pivot(leave, enter);
                set_basic(enter, leave, new_val);
            }

            z += dz;
            if (std::abs(dz) > 1e-11) {
                stall = 0;
                bland = false;
            } else if (++stall > 150) {
                bland = true;
            }
            if ((iter & 1023) == 1023) refresh_basic_values();
        }
        throw NumericalError("simplex: iteration limit exceeded (possible cycling)");
    }

    void pivot(int row, int col) {
        double* pr = T_row(row);
        const double inv = 1.0 / pr[col];
        for (int j = 0; j < width_; ++j) pr[j] *= inv;
        pr[col] = 1.0;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            double* ri = T_row(i);
            const double f = ri[col];
            if (f == 0.0) continue;
            for (int j = 0; j < width_; ++j) ri[j] -= f * pr[j];
            ri[col] = 0.0;
        }
        const double fd = dj_[static_cast<std::size_t>(col)];
        if (fd != 0.0) {
            const int cols = n_ + n_slack_;
            for (int j = 0; j < cols; ++j) dj_[static_cast<std::size_t>(j)] -= fd * pr[j];
            dj_[static_cast<std::size_t>(col)] = 0.0;
        }
    }

    /// Pivots zero-valued basic artificials out where possible; rows whose
    /// remaining coefficients are all ~zero are redundant and retired.
    void cleanup_artificials() {
        const int cols = n_ + n_slack_;
        for (int i : artificial_rows_) {
            if (basis_[static_cast<std::size_t>(i)] != kArtificial) continue;
            const double* row = T_row(i);
            int col = -1;
            double best = kPivotTol;
            for (int j = 0; j < cols; ++j) {
                if (row_of_[static_cast<std::size_t>(j)] >= 0) continue;
                if (std::abs(row[j]) > best) {
                    best = std::abs(row[j]);
                    col = j;
                }
            }
            if (col >= 0) {
                const double keep = val_[static_cast<std::size_t>(col)];
                pivot(i, col);
                set_basic(col, i, keep); // degenerate swap, value unchanged
            } else {
                dead_row_[static_cast<std::size_t>(i)] = 1;
            }
        }
    }

    /// Recomputes basic values from the maintained rhs column; counters
    /// incremental drift.
    void refresh_basic_values() {
        const int cols = n_ + n_slack_;
        for (int i = 0; i < m_; ++i) {
            const double* row = T_row(i);
            double v = row[width_ - 1];
            for (int j = 0; j < cols; ++j) {
                if (row_of_[static_cast<std::size_t>(j)] >= 0) continue;
                const double x = val_[static_cast<std::size_t>(j)];
                if (x != 0.0) v -= row[j] * x;
            }
            xb_[static_cast<std::size_t>(i)] = v;
        }
    }

    int n_ = 0;      // structural variables
    int m_ = 0;      // rows
    int n_slack_ = 0;
    int width_ = 0;  // columns incl. rhs
    std::vector<double> cost_;
    std::vector<double> matrix_; // pristine standardized rows

    // per-solve scratch
    std::vector<double> T_;
    std::vector<double> lo_, up_, val_, dj_, xb_;
    std::vector<int> basis_, row_of_;
    std::vector<char> dead_row_;
    std::vector<int> artificial_rows_;
};

bool objective_is_integral(const LinearProgram& lp) {
    for (int j = 0; j < lp.variable_count(); ++j) {
        const double c = lp.objective[static_cast<std::size_t>(j)];
        if (c == 0.0) continue;
        if (!lp.vars[static_cast<std::size_t>(j)].is_integer) return false;
        if (std::abs(c - std::round(c)) > 1e-12) return false;
    }
    return true;
}

} // namespace

MilpSolution solve_lp(const LinearProgram& lp) {
    MilpSolution out;
    if (lp.variable_count() == 0) {
        for (const auto& c : lp.cons) {
            const bool ok = (c.relation == Relation::LessEq && 0.0 <= c.rhs + 1e-9) ||
                            (c.relation == Relation::GreaterEq && 0.0 >= c.rhs - 1e-9) ||
                            (c.relation == Relation::Equal && std::abs(c.rhs) <= 1e-9);
            if (!ok) return out; // infeasible
        }
        out.status = SolveStatus::Optimal;
        return out;
    }

    SimplexEngine engine(lp);
    std::vector<double> lb, ub;
    engine.default_bounds(lp, lb, ub);
    const LpResult r = engine.solve(lb, ub);
    switch (r.status) {
        case LpStatus::Optimal: {
            out.status = SolveStatus::Optimal;
            out.values = r.x;
            double obj = 0.0;
            for (int j = 0; j < lp.variable_count(); ++j)
                obj += lp.objective[static_cast<std::size_t>(j)] * r.x[static_cast<std::size_t>(j)];
            out.objective = obj;
            break;
        }
        case LpStatus::Infeasible: out.status = SolveStatus::Infeasible; break;
        case LpStatus::Unbounded: out.status = SolveStatus::Unbounded; break;
    }
    return out;
}

MilpSolution solve_milp(const LinearProgram& lp, long node_budget) {
    if (!lp.has_integers()) return solve_lp(lp);
    for (const auto& v : lp.vars)
        if (v.is_integer && (v.lower < -1e-9 || v.upper > 1.0 + 1e-9))
            throw ValidationError("solve_milp: integer variables must be binary");

    const double sense = lp.sense == Sense::Maximize ? -1.0 : 1.0; // work in min form
    const bool integral_obj = objective_is_integral(lp);
    const int n = lp.variable_count();

    SimplexEngine engine(lp);
    std::vector<double> lb0, ub0;
    engine.default_bounds(lp, lb0, ub0);

    auto min_objective = [&](const std::vector<double>& x) {
        double obj = 0.0;
        for (int j = 0; j < n; ++j)
            obj += sense * lp.objective[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        return obj;
    };

    struct Node {
        double bound;
        int parent;
        int var;
        signed char fix;
    };
    std::vector<Node> arena;
    using QEntry = std::tuple<double, long, int>; // (bound, seq, node index)
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> queue;

    MilpSolution result;
    result.status = SolveStatus::Infeasible;
    double best_obj = kInf; // min form
    std::vector<double> best_x;
    bool unbounded = false;

    std::vector<double> lb(static_cast<std::size_t>(n)), ub(static_cast<std::size_t>(n));
    auto materialize = [&](int node) {
        lb = lb0;
        ub = ub0;
        for (int i = node; i >= 0; i = arena[static_cast<std::size_t>(i)].parent) {
            const Node& nd = arena[static_cast<std::size_t>(i)];
            if (nd.var >= 0) {
                if (nd.fix == 0) ub[static_cast<std::size_t>(nd.var)] = 0.0;
                else lb[static_cast<std::size_t>(nd.var)] = 1.0;
            }
        }
    };

    auto try_incumbent = [&](const std::vector<double>& x_raw) {
        // fix integers at rounded values, re-solve the continuous part
        std::vector<double> flb = lb, fub = ub;
        for (int j = 0; j < n; ++j) {
            if (!lp.vars[static_cast<std::size_t>(j)].is_integer) continue;
            const double r = std::round(x_raw[static_cast<std::size_t>(j)]);
            if (r < lb[static_cast<std::size_t>(j)] - 1e-9 || r > ub[static_cast<std::size_t>(j)] + 1e-9)
                return;
            flb[static_cast<std::size_t>(j)] = fub[static_cast<std::size_t>(j)] = r;
        }
        const LpResult polished = engine.solve(flb, fub);
        if (polished.status != LpStatus::Optimal) return;
        std::vector<double> x = polished.x;
        for (int j = 0; j < n; ++j)
            if (lp.vars[static_cast<std::size_t>(j)].is_integer)
                x[static_cast<std::size_t>(j)] = std::round(x[static_cast<std::size_t>(j)]);
        const double obj = min_objective(x);
        if (obj < best_obj - 1e-9) {
            best_obj = obj;
            best_x = std::move(x);
        }
    };

    arena.push_back({-kInf, -1, -1, 0});
    queue.emplace(-kInf, 0, 0);
    long seq = 1;
    long nodes = 0;
    bool out_of_budget = false;

    while (!queue.empty()) {
        if (nodes >= node_budget) {
            out_of_budget = true;
            break;
        }
        const auto [qbound, qseq, idx] = queue.top();
        queue.pop();
        if (qbound >= best_obj - 1e-9) continue; // pruned by a later incumbent
        ++nodes;

        materialize(idx);
        const LpResult relax = engine.solve(lb, ub);
        if (relax.status == LpStatus::Infeasible) continue;
        if (relax.status == LpStatus::Unbounded) {
            unbounded = true;
            break;
        }
        double bound = relax.objective;
        if (integral_obj) bound = std::ceil(bound - 1e-6);
        if (bound >= best_obj - 1e-9) continue;

        // branching variable: highest priority class, then most fractional
        int branch = -1;
        double branch_score = -1.0;
        int branch_prio = std::numeric_limits<int>::min();
        for (int j = 0; j < n; ++j) {
            const auto& v = lp.vars[static_cast<std::size_t>(j)];
            if (!v.is_integer) continue;
            const double x = relax.x[static_cast<std::size_t>(j)];
            const double frac = std::abs(x - std::round(x));
            if (frac <= kIntTol) continue;
            const double score = 0.5 - std::abs(x - std::floor(x) - 0.5);
            if (v.branch_priority > branch_prio ||
                (v.branch_priority == branch_prio && score > branch_score + 1e-12)) {
                branch = j;
                branch_score = score;
                branch_prio = v.branch_priority;
            }
        }

        if (branch < 0) {
            try_incumbent(relax.x);
            continue;
        }
        if (nodes == 1 || nodes % 8 == 0) try_incumbent(relax.x); // rounding heuristic

        const int base = static_cast<int>(arena.size());
        arena.push_back({relax.objective, idx, branch, 0});
        arena.push_back({relax.objective, idx, branch, 1});
        queue.emplace(bound, seq++, base);
        queue.emplace(bound, seq++, base + 1);
    }

    result.nodes_explored = nodes;
    if (unbounded) {
        result.status = SolveStatus::Unbounded;
        return result;
    }
    if (!best_x.empty()) {
        result.values = best_x;
        result.objective = sense * best_obj;
        result.status = out_of_budget ? SolveStatus::BudgetExceeded : SolveStatus::Optimal;
    } else {
        result.status = out_of_budget ? SolveStatus::BudgetExceeded : SolveStatus::Infeasible;
    }
    return result;
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& c : lp.cons) {
        double lhs = 0.0;
        for (const auto& [v, coef] : c.terms) lhs += coef * x[static_cast<std::size_t>(v)];
        const double scale = std::max(1.0, std::abs(c.rhs));
        double viol = 0.0;
        if (c.relation == Relation::LessEq) viol = lhs - c.rhs;
        else if (c.relation == Relation::GreaterEq) viol = c.rhs - lhs;
        else viol = std::abs(lhs - c.rhs);
        worst = std::max(worst, viol / scale);
    }
    for (int j = 0; j < lp.variable_count(); ++j) {
        const auto& v = lp.vars[static_cast<std::size_t>(j)];
        const double xj = x[static_cast<std::size_t>(j)];
        const double scale = std::max(1.0, std::abs(xj));
        if (std::isfinite(v.lower)) worst = std::max(worst, (v.lower - xj) / scale);
        if (std::isfinite(v.upper)) worst = std::max(worst, (xj - v.upper) / scale);
        if (v.is_integer) worst = std::max(worst, std::abs(xj - std::round(xj)));
    }
    return worst;
}

std::string to_lp_format(const LinearProgram& lp) {
    auto var_name = [&](int j) {
        const std::string& n = lp.vars[static_cast<std::size_t>(j)].name;
        bool ok = !n.empty() && !std::isdigit(static_cast<unsigned char>(n[0]));
        for (char c : n)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' ||
                  c == ')' || c == '.'))
                ok = false;
        return ok ? n : "v" + std::to_string(j);
    };
    auto write_terms = [&](std::ostringstream& os, const std::vector<std::pair<int, double>>& terms) {
        bool first = true;
        for (const auto& [v, c] : terms) {
            if (c == 0.0) continue;
            if (first) {
                os << (c < 0 ? "- " : "");
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            const double a = std::abs(c);
            if (a != 1.0) os << a << " ";
            os << var_name(v);
        }
        if (first) os << "0 " << var_name(0);
    };

    std::ostringstream os;
    os << (lp.sense == Sense::Maximize ? "Maximize\n" : "Minimize\n") << " obj: ";
    std::vector<std::pair<int, double>> obj_terms;
    for (int j = 0; j < lp.variable_count(); ++j)
        if (lp.objective[static_cast<std::size_t>(j)] != 0.0)
            obj_terms.emplace_back(j, lp.objective[static_cast<std::size_t>(j)]);
    write_terms(os, obj_terms);
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < lp.cons.size(); ++i) {
        const auto& c = lp.cons[i];
        os << " " << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ": ";
        write_terms(os, c.terms);
        os << (c.relation == Relation::LessEq ? " <= "
                                              : c.relation == Relation::GreaterEq ? " >= " : " = ")
           << c.rhs << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < lp.variable_count(); ++j) {
        const auto& v = lp.vars[static_cast<std::size_t>(j)];
        if (!std::isfinite(v.lower) && !std::isfinite(v.upper))
            os << " " << var_name(j) << " free\n";
        else if (!std::isfinite(v.lower))
            os << " -inf <= " << var_name(j) << " <= " << v.upper << "\n";
        else if (!std::isfinite(v.upper))
            os << " " << v.lower << " <= " << var_name(j) << "\n";
        else
            os << " " << v.lower << " <= " << var_name(j) << " <= " << v.upper << "\n";
    }
    bool any_bin = false;
    for (const auto& v : lp.vars) any_bin |= v.is_integer;
    if (any_bin) {
        os << "Binaries\n";
        for (int j = 0; j < lp.variable_count(); ++j)
            if (lp.vars[static_cast<std::size_t>(j)].is_integer) os << " " << var_name(j) << "\n";
    }
    os << "End\n";
    return os.str();
}

} // namespace sgsim::milp
