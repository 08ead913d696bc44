#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "sgsim/errors.hpp"

namespace sgsim {

using BusId = int;
using LineId = int;

/// Transmission line. `reactance` is the effective per-MW line constant
/// (MATPOWER per-unit x divided by base MVA at ingestion), `capacity` the
/// thermal limit in MW. `avg_flow` is the exponentially smoothed flow used
/// by the overload rule.
struct Line {
    BusId from = 0;
    BusId to = 0;
    double reactance = 1.0;
    double capacity = 0.0;
    bool alive = true;
    double flow = 0.0;     // MW, signed; positive = from -> to
    double avg_flow = 0.0; // MW, moving average
};

struct Generator {
    BusId bus = 0;
    double output = 0.0; // current p_i, MW
    double pmin = 0.0;
    double pmax = 0.0;
};

struct Demand {
    BusId bus = 0;
    double nominal = 0.0; // rated demand, MW
    double base = 0.0;    // pre-attack operating demand d_i^0, MW
    double current = 0.0; // current d_i, MW
    bool attacked = false;
};

/// Bus/line power network with mutable operating state. Bus ids are dense
/// 0..bus_count-1; external dataset ids are a side table.
class PowerGrid {
public:
    PowerGrid() = default;
    explicit PowerGrid(int bus_count) { resize(bus_count); }

    void resize(int bus_count) {
        bus_count_ = bus_count;
        incident_.assign(static_cast<std::size_t>(bus_count), {});
        gen_at_.assign(static_cast<std::size_t>(bus_count), -1);
        demand_at_.assign(static_cast<std::size_t>(bus_count), -1);
        theta_.assign(static_cast<std::size_t>(bus_count), 0.0);
    }

    int bus_count() const { return bus_count_; }
    bool contains(BusId b) const { return b >= 0 && b < bus_count_; }

    LineId add_line(BusId from, BusId to, double reactance, double capacity = 0.0) {
        if (!contains(from) || !contains(to))
            throw ValidationError("line endpoint references unknown bus");
        if (from == to) throw ValidationError("line endpoints must differ");
        if (reactance <= 0.0) throw ValidationError("line reactance must be positive");
        if (capacity < 0.0) throw ValidationError("line capacity must be non-negative");
        const LineId id = static_cast<LineId>(lines_.size());
        lines_.push_back({from, to, reactance, capacity, true, 0.0, 0.0});
        incident_[static_cast<std::size_t>(from)].push_back(id);
        incident_[static_cast<std::size_t>(to)].push_back(id);
        return id;
    }

    int add_generator(BusId bus, double output, double pmin, double pmax) {
        if (!contains(bus)) throw ValidationError("generator references unknown bus");
        if (pmin < 0.0 || pmin > pmax)
            throw ValidationError("generator bounds must satisfy 0 <= pmin <= pmax");
        if (gen_at_[static_cast<std::size_t>(bus)] >= 0)
            throw ValidationError("bus already has a generator");
        const int id = static_cast<int>(gens_.size());
        gens_.push_back({bus, output, pmin, pmax});
        gen_at_[static_cast<std::size_t>(bus)] = id;
        return id;
    }

    int add_demand(BusId bus, double nominal) {
        if (!contains(bus)) throw ValidationError("demand references unknown bus");
        if (nominal < 0.0) throw ValidationError("demand must be non-negative");
        if (demand_at_[static_cast<std::size_t>(bus)] >= 0)
            throw ValidationError("bus already has a demand");
        const int id = static_cast<int>(demands_.size());
        demands_.push_back({bus, nominal, nominal, nominal, false});
        demand_at_[static_cast<std::size_t>(bus)] = id;
        return id;
    }

    const std::vector<Line>& lines() const { return lines_; }
    std::vector<Line>& lines() { return lines_; }
    Line& line(LineId id) { return lines_[static_cast<std::size_t>(id)]; }
    const Line& line(LineId id) const { return lines_[static_cast<std::size_t>(id)]; }
    int line_count() const { return static_cast<int>(lines_.size()); }

    const std::vector<Generator>& generators() const { return gens_; }
    std::vector<Generator>& generators() { return gens_; }
    const std::vector<Demand>& demands() const { return demands_; }
    std::vector<Demand>& demands() { return demands_; }

    /// Line ids incident to a bus (dead lines included).
    const std::vector<LineId>& incident(BusId b) const {
        return incident_[static_cast<std::size_t>(b)];
    }

    bool is_generator_bus(BusId b) const { return gen_at_[static_cast<std::size_t>(b)] >= 0; }
    bool is_demand_bus(BusId b) const { return demand_at_[static_cast<std::size_t>(b)] >= 0; }

    /// Index into generators() for a bus, or -1.
    int generator_index(BusId b) const { return gen_at_[static_cast<std::size_t>(b)]; }
    /// Index into demands() for a bus, or -1.
    int demand_index(BusId b) const { return demand_at_[static_cast<std::size_t>(b)]; }

    /// Net MW injection at a bus under current operating state.
    double injection(BusId b) const {
        double x = 0.0;
        if (int g = generator_index(b); g >= 0) x += gens_[static_cast<std::size_t>(g)].output;
        if (int d = demand_index(b); d >= 0) x -= demands_[static_cast<std::size_t>(d)].current;
        return x;
    }

    double theta(BusId b) const { return theta_[static_cast<std::size_t>(b)]; }
    void set_theta(BusId b, double v) { theta_[static_cast<std::size_t>(b)] = v; }

    double total_base_demand() const {
        double s = 0.0;
        for (const auto& d : demands_) s += d.base;
        return s;
    }

    double total_current_demand() const {
        double s = 0.0;
        for (const auto& d : demands_) s += d.current;
        return s;
    }

    /// Original dataset bus ids; empty when the grid was built directly.
    std::vector<std::int64_t> external_ids;

private:
    int bus_count_ = 0;
    std::vector<Line> lines_;
    std::vector<Generator> gens_;
    std::vector<Demand> demands_;
    std::vector<std::vector<LineId>> incident_;
    std::vector<int> gen_at_;
    std::vector<int> demand_at_;
    std::vector<double> theta_;
};

/// Demand buses with no live-line path to any generator (F(G_P) = |result|).
std::set<BusId> failed_nodes(const PowerGrid& grid);

/// Served fraction: sum of current demand on buses still connected to a
/// generator, over original_total_demand, clamped to [0,1].
double compute_yield(const PowerGrid& grid, double original_total_demand);

} // namespace sgsim
