#pragma once

#include <map>
#include <set>
#include <vector>

#include "sgsim/milp.hpp"
#include "sgsim/power_grid.hpp"
#include "sgsim/social_graph.hpp"

namespace sgsim {

/// Attack ILP for disconnecting one target bus, plus the variable handles
/// needed to read the solution back.
struct CicModel {
    milp::LinearProgram lp;
    BusId target = -1;
    std::map<BusId, int> z_of;     // attack indicator per demand bus in the target's island
    std::map<BusId, int> t_of;     // disconnection indicator per non-generator bus
    std::map<LineId, int> y_of;    // line-failure indicator per live line
    std::map<LineId, int> omega_of;
    std::map<LineId, int> f_of;
    std::map<BusId, int> theta_of;
    int delta_p = -1;              // shared generator uplift variable

    /// Attacked buses in a solved model, sorted.
    std::vector<BusId> attacked_buses(const std::vector<double>& values) const;
};

/// Builds the minimum-cardinality attack ILP for failing `target`:
/// binary attack/failure/connectivity variables over the target's island,
/// embedded DC flow, demand inflation d = d0(1+z*delta), uniform generator
/// uplift, big-M overload indicators and cut-certificate propagation.
/// big_m must upper-bound any achievable line-flow magnitude; 0 selects the
/// default (total inflated demand / min reactance).
CicModel build_cic_milp(const PowerGrid& grid, BusId target, double delta, double big_m = 0.0);

/// Seed-set cover MILP: pick seed sets within budget k to maximize the
/// number of covered power-node failures.
struct SpacModel {
    milp::LinearProgram lp;
    std::vector<UserId> users;     // users with an x variable, sorted
    std::map<UserId, int> x_of;
    std::map<BusId, int> y_of;

    std::vector<UserId> selected_seeds(const std::vector<double>& values) const;
};

SpacModel build_spac_milp(const std::vector<std::vector<UserId>>& seed_sets,
                          const std::vector<std::set<BusId>>& failure_sets, int budget);

/// Controlled load shedding LP on the grid's current live topology:
/// minimize total shed subject to DC flow, capacity limits, and
/// 0 <= tau <= D^t, 0 <= beta <= p^t.
struct ClsModel {
    milp::LinearProgram lp;
    std::map<BusId, int> tau_of;   // shed per demand bus
    std::map<BusId, int> beta_of;  // ramp-down per generator bus
    std::map<LineId, int> f_of;
    std::map<BusId, int> theta_of;
};

ClsModel build_cls_lp(const PowerGrid& grid);

} // namespace sgsim
