#include "sgsim/power_grid.hpp"

#include <algorithm>
#include <vector>

namespace sgsim {

std::set<BusId> failed_nodes(const PowerGrid& grid) {
    const int n = grid.bus_count();
    std::vector<char> reached(static_cast<std::size_t>(n), 0);
    std::vector<BusId> stack;
    for (const auto& g : grid.generators()) {
        if (!reached[static_cast<std::size_t>(g.bus)]) {
            reached[static_cast<std::size_t>(g.bus)] = 1;
            stack.push_back(g.bus);
        }
    }
    while (!stack.empty()) {
        const BusId b = stack.back();
        stack.pop_back();
        for (LineId l : grid.incident(b)) {
            const Line& ln = grid.line(l);
            if (!ln.alive) continue;
            const BusId other = ln.from == b ? ln.to : ln.from;
            if (!reached[static_cast<std::size_t>(other)]) {
                reached[static_cast<std::size_t>(other)] = 1;
                stack.push_back(other);
            }
        }
    }
    std::set<BusId> failed;
    for (const auto& d : grid.demands())
        if (!reached[static_cast<std::size_t>(d.bus)]) failed.insert(d.bus);
    return failed;
}

double compute_yield(const PowerGrid& grid, double original_total_demand) {
    if (original_total_demand <= 0.0)
        throw ValidationError("compute_yield: original total demand must be positive");
    const std::set<BusId> failed = failed_nodes(grid);
    double served = 0.0;
    for (const auto& d : grid.demands())
        if (!failed.count(d.bus)) served += d.current;
    return std::clamp(served / original_total_demand, 0.0, 1.0);
}

} // namespace sgsim
