#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "sgsim/coupling.hpp"
#include "sgsim/power_grid.hpp"
#include "sgsim/social_graph.hpp"

namespace sgsim {

/// The coupled social-power system plus attack parameters.
struct Scenario {
    SocialGraph social;
    PowerGrid grid;
    Coupling coupling;

    double delta = 0.25;           // demand-change fraction per influenced user
    double alpha = 0.5;            // moving-average smoothing, in (0,1]
    double capacity_factor = 1.1;  // line capacity as a multiple of base flow
    int seed_budget = 1;           // k
    std::uint64_t rng_seed = 0;

    /// Per-bus overrides of delta; absent buses use the uniform value.
    std::map<BusId, double> delta_overrides;

    double delta_for(BusId bus) const {
        auto it = delta_overrides.find(bus);
        return it == delta_overrides.end() ? delta : it->second;
    }

    /// Checks cross-field invariants, throws ValidationError on violation.
    void validate() const;
};

/// Per-round record of a cascade.
struct CascadeRound {
    int index = 0;                    // 1-based round number
    std::vector<LineId> removed_lines;
    std::vector<BusId> failed_buses;  // demand buses newly disconnected this round
    double max_load_ratio = 0.0;      // max |f~|/u over live lines this round
    int island_count = 0;
    std::vector<double> flows;        // per-line solved flow (dead lines carry 0)
};

/// Result of one cascading-failure simulation.
struct CascadeOutcome {
    std::vector<LineId> failed_lines;  // S1, in removal order
    std::set<BusId> failed_nodes;      // S2
    std::vector<CascadeRound> rounds;  // final round removes no lines
    double final_yield = 1.0;
};

} // namespace sgsim
