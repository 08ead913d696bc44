#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sgsim/errors.hpp"

namespace sgsim::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class Relation { LessEq, Equal, GreaterEq };

enum class SolveStatus { Optimal, Infeasible, Unbounded, BudgetExceeded };

const char* to_string(SolveStatus s);

struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    bool is_integer = false;
    /// Higher classes are branched before lower ones.
    int branch_priority = 0;
};

struct Constraint {
    std::string name;
    std::vector<std::pair<int, double>> terms; // (variable index, coefficient)
    Relation relation = Relation::LessEq;
    double rhs = 0.0;
};

/// Generic LP/MILP instance. Integer variables must be binaries.
class LinearProgram {
public:
    Sense sense = Sense::Minimize;

    int add_variable(std::string name, double lower, double upper, bool is_integer = false,
                     int branch_priority = 0) {
        if (lower > upper) throw ValidationError("variable '" + name + "': lower > upper");
        vars.push_back({std::move(name), lower, upper, is_integer, branch_priority});
        objective.push_back(0.0);
        return static_cast<int>(vars.size()) - 1;
    }

    int add_binary(std::string name, int branch_priority = 0) {
        return add_variable(std::move(name), 0.0, 1.0, true, branch_priority);
    }

    void set_objective(int var, double coeff) {
        objective[static_cast<std::size_t>(check_var(var))] = coeff;
    }

    int add_constraint(std::string name, std::vector<std::pair<int, double>> terms, Relation rel,
                       double rhs) {
        for (const auto& [v, c] : terms) check_var(v);
        cons.push_back({std::move(name), std::move(terms), rel, rhs});
        return static_cast<int>(cons.size()) - 1;
    }

    void fix_variable(int var, double value) {
        auto& v = vars[static_cast<std::size_t>(check_var(var))];
        v.lower = v.upper = value;
    }

    int variable_count() const { return static_cast<int>(vars.size()); }
    int constraint_count() const { return static_cast<int>(cons.size()); }
    bool has_integers() const {
        for (const auto& v : vars)
            if (v.is_integer) return true;
        return false;
    }

    std::vector<Variable> vars;
    std::vector<double> objective; // aligned with vars
    std::vector<Constraint> cons;

private:
    int check_var(int v) const {
        if (v < 0 || v >= static_cast<int>(vars.size()))
            throw ValidationError("constraint references undeclared variable");
        return v;
    }
};

struct MilpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> values; // empty when no solution is available
    long nodes_explored = 0;

    bool has_solution() const {
        return (status == SolveStatus::Optimal || status == SolveStatus::BudgetExceeded) &&
               !values.empty();
    }
};

/// Solves the LP relaxation (integrality flags ignored) with a bounded-variable
/// two-phase simplex. Throws NumericalError on breakdown.
MilpSolution solve_lp(const LinearProgram& lp);

/// Branch-and-bound over binary variables: best-bound node order,
/// most-fractional branching within the highest fractional priority class.
MilpSolution solve_milp(const LinearProgram& lp, long node_budget = 100000);

/// Largest scaled violation of constraints, bounds and integrality at x.
/// Independent of the solver; used to re-check reported optima.
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

/// Serializes in the standard LP text format for external cross-checks.
std::string to_lp_format(const LinearProgram& lp);

} // namespace sgsim::milp
