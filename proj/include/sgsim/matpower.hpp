#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sgsim/power_grid.hpp"

namespace sgsim {

/// Raw MATPOWER case tables, one row per record.
struct MatpowerCase {
    double base_mva = 100.0;

    struct BusRow {
        std::int64_t id = 0;
        int type = 1;
        double demand_mw = 0.0;
    };
    struct GenRow {
        std::int64_t bus = 0;
        double output_mw = 0.0;
        double pmax_mw = 0.0;
        double pmin_mw = 0.0;
        bool in_service = true;
    };
    struct BranchRow {
        std::int64_t from = 0;
        std::int64_t to = 0;
        double reactance_pu = 0.0;
        double rating_mw = 0.0;
        bool in_service = true;
    };

    std::vector<BusRow> buses;
    std::vector<GenRow> gens;
    std::vector<BranchRow> branches;
};

/// Parses a MATPOWER case script (matrices bus/gen/branch, with or without
/// the mpc. prefix). Throws ParseError with a line number on malformed rows.
MatpowerCase parse_matpower_case(std::istream& in);

/// Builds the operating grid: dense bus ids in file order (external ids kept
/// as a side table), demands from the bus table, aggregated generators,
/// in-service branches with reactance x/baseMVA so flows come out in MW.
/// Capacities default to 0 (assigned later by the capacity proxy) unless
/// use_file_ratings is set.
PowerGrid to_power_grid(const MatpowerCase& mp, bool use_file_ratings = false);

PowerGrid parse_matpower(std::istream& in, bool use_file_ratings = false);

} // namespace sgsim
