#pragma once

#include <functional>
#include <vector>

#include "sgsim/power_grid.hpp"
#include "sgsim/scenario.hpp"

namespace sgsim {

/// Connected component of the live grid.
struct Island {
    std::vector<BusId> buses;
    std::vector<LineId> lines;
    bool has_generator = false;
};

/// Solved DC operating point.
struct FlowSolution {
    std::vector<double> line_flow;        // MW per line; 0 for dead lines
    std::vector<double> theta;            // per-bus angle, one reference per island
    std::vector<double> slack_adjustment; // per-island balance residual absorbed at the reference
};

/// Relative margin absorbed by the overload test; keeps LP-restored
/// operating points (|f| = u at a vertex) from re-failing on roundoff.
inline constexpr double kOverloadTolerance = 1e-9;

inline bool is_overloaded(double avg_flow, double capacity) {
    double f = avg_flow < 0 ? -avg_flow : avg_flow;
    return f > capacity * (1.0 + kOverloadTolerance) + kOverloadTolerance;
}

/// Connected components over live lines.
std::vector<Island> find_islands(const PowerGrid& grid);

/// Adjusts generator outputs (and, in deficit, demands) so the island's
/// supply equals its demand. Generator-free islands have demand zeroed.
void balance_island(PowerGrid& grid, const Island& island);

/// Balances every island of the grid.
void balance_all_islands(PowerGrid& grid);

/// Solves the DC flow. Every island must already be balanced; throws
/// NumericalError on a singular island system.
FlowSolution solve_dc_flow(const PowerGrid& grid);

/// Writes a solution's flows/angles into the grid's operating state.
void commit_flows(PowerGrid& grid, const FlowSolution& sol);

/// Balances, solves the base case, and initializes flow and moving-average
/// flow state. Call once on a freshly built grid.
void initialize_operating_point(PowerGrid& grid);

struct CascadeOptions {
    int round_cap = 0; // 0 = default 10 * line_count
    /// Invoked after islands are balanced, before the round's flow solve.
    std::function<void(PowerGrid&, int round)> pre_round_hook;
};

/// Runs the cascading-failure loop: balance, solve, smooth, remove
/// overloaded lines, until a round removes nothing.
CascadeOutcome run_cascade(PowerGrid& grid, double alpha, const CascadeOptions& options = {});

/// Inflates demand at the attacked buses: d_i = d_i^0 * (1 + delta).
void apply_demand_change(PowerGrid& grid, const std::set<BusId>& attacked, double delta);

/// Per-bus delta variant; delta_of(bus) supplies the fraction.
void apply_demand_change(PowerGrid& grid, const std::set<BusId>& attacked,
                         const std::function<double(BusId)>& delta_of);

} // namespace sgsim
