#include "sgsim/scenario.hpp"

namespace sgsim {

void Scenario::validate() const {
    if (delta <= 0.0) throw ValidationError("scenario: delta must be positive");
    for (const auto& [bus, d] : delta_overrides)
        if (d <= 0.0) throw ValidationError("scenario: delta override must be positive");
    if (alpha <= 0.0 || alpha > 1.0) throw ValidationError("scenario: alpha must be in (0,1]");
    if (capacity_factor < 1.0)
        throw ValidationError("scenario: capacity_factor must be at least 1");
    if (seed_budget < 1) throw ValidationError("scenario: seed budget k must be at least 1");
    for (const auto& e : social.edges())
        if (e.p < 0.0 || e.p > 1.0) throw ValidationError("scenario: edge weight outside [0,1]");
    for (const auto& [bus, user] : coupling.pairs()) {
        if (!grid.contains(bus) || !grid.is_demand_bus(bus))
            throw ValidationError("scenario: coupling domain must be demand buses");
        if (!social.contains(user))
            throw ValidationError("scenario: coupling range must be social users");
    }
    for (const auto& d : grid.demands())
        if (!coupling.bus_is_linked(d.bus))
            throw ValidationError("scenario: every demand bus must be coupled");
}

} // namespace sgsim
