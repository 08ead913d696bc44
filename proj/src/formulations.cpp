#include "sgsim/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgsim/powerflow.hpp"

namespace sgsim {

using milp::LinearProgram;
using milp::Relation;
using milp::Sense;

std::vector<BusId> CicModel::attacked_buses(const std::vector<double>& values) const {
    std::vector<BusId> out;
    for (const auto& [bus, var] : z_of)
        if (values[static_cast<std::size_t>(var)] > 0.5) out.push_back(bus);
    return out;
}

CicModel build_cic_milp(const PowerGrid& grid, BusId target, double delta, double big_m) {
    if (!grid.contains(target) || !grid.is_demand_bus(target))
        throw ValidationError("build_cic_milp: target must be a demand bus");
    if (grid.is_generator_bus(target))
        throw ValidationError("build_cic_milp: target hosts a generator and cannot be cut off");
    if (delta <= 0.0) throw ValidationError("build_cic_milp: delta must be positive");

    // The target's connectivity only depends on its own island; other islands
    // cannot influence the cut and their generators must not constrain the
    // shared uplift.
    const std::vector<Island> islands = find_islands(grid);
    const Island* island = nullptr;
    for (const auto& isl : islands)
        if (std::find(isl.buses.begin(), isl.buses.end(), target) != isl.buses.end()) {
            island = &isl;
            break;
        }
    if (!island || !island->has_generator)
        throw InfeasibleError("build_cic_milp: target is already disconnected from generation");

    std::vector<char> in_island(static_cast<std::size_t>(grid.bus_count()), 0);
    for (BusId b : island->buses) in_island[static_cast<std::size_t>(b)] = 1;

    if (big_m <= 0.0) {
        double inflated = 0.0;
        double pi_min = milp::kInf;
        for (const auto& d : grid.demands()) inflated += d.current * (1.0 + delta);
        for (LineId l : island->lines) pi_min = std::min(pi_min, grid.line(l).reactance);
        big_m = pi_min > 0.0 && std::isfinite(pi_min) ? inflated / pi_min : inflated;
        if (big_m <= 0.0) big_m = 1.0;
    }
    const double m_conn = static_cast<double>(grid.bus_count());

    CicModel model;
    model.target = target;
    LinearProgram& lp = model.lp;
    lp.sense = Sense::Minimize;

    double uplift_cap = milp::kInf;
    for (BusId b : island->buses) {
        if (int g = grid.generator_index(b); g >= 0) {
            const auto& gen = grid.generators()[static_cast<std::size_t>(g)];
            uplift_cap = std::min(uplift_cap, gen.pmax - gen.output);
        }
    }
    model.delta_p = lp.add_variable("dp", 0.0, std::max(0.0, uplift_cap));

    for (BusId b : island->buses) {
        model.theta_of[b] = lp.add_variable("th(" + std::to_string(b) + ")", -milp::kInf, milp::kInf);
        if (grid.is_demand_bus(b)) {
            model.z_of[b] = lp.add_binary("z(" + std::to_string(b) + ")", 2);
            lp.set_objective(model.z_of[b], 1.0);
        }
        if (!grid.is_generator_bus(b)) {
            const int t = lp.add_binary("t(" + std::to_string(b) + ")");
            model.t_of[b] = t;
            if (b == target) lp.fix_variable(t, 1.0);
        }
    }
    for (LineId l : island->lines) {
        const std::string tag = std::to_string(l);
        model.f_of[l] = lp.add_variable("f(" + tag + ")", -big_m, big_m);
        model.y_of[l] = lp.add_binary("y(" + tag + ")", 1);
        model.omega_of[l] = lp.add_binary("w(" + tag + ")");
    }

    // Flow balance with demand inflation and uniform generator uplift:
    //   sum(f out) - sum(f in) - [gen] dp + [demand] d0*delta*z = p0 - d0
    for (BusId b : island->buses) {
        std::vector<std::pair<int, double>> terms;
        for (LineId l : grid.incident(b)) {
            if (!grid.line(l).alive) continue;
            terms.emplace_back(model.f_of.at(l), grid.line(l).from == b ? 1.0 : -1.0);
        }
        double rhs = 0.0;
        if (int g = grid.generator_index(b); g >= 0) {
            terms.emplace_back(model.delta_p, -1.0);
            rhs += grid.generators()[static_cast<std::size_t>(g)].output;
        }
        if (int d = grid.demand_index(b); d >= 0) {
            const double d0 = grid.demands()[static_cast<std::size_t>(d)].current;
            if (d0 > 0.0) terms.emplace_back(model.z_of.at(b), d0 * delta);
            rhs -= d0;
        }
        lp.add_constraint("bal(" + std::to_string(b) + ")", std::move(terms), Relation::Equal, rhs);
    }

    // theta_i - theta_j - pi f = 0 per live line
    for (LineId l : island->lines) {
        const Line& ln = grid.line(l);
        lp.add_constraint("ang(" + std::to_string(l) + ")",
                          {{model.theta_of.at(ln.from), 1.0},
                           {model.theta_of.at(ln.to), -1.0},
                           {model.f_of.at(l), -ln.reactance}},
                          Relation::Equal, 0.0);
    }

    // Overload indicators: y=1 only when |f| reaches the capacity.
    //   f + M w >= u y        and   -f + M (1 - w) >= u y
    // with M = big_m + u so both orientations stay feasible.
    for (LineId l : island->lines) {
        const Line& ln = grid.line(l);
        const double m_line = big_m + ln.capacity;
        lp.add_constraint("ovp(" + std::to_string(l) + ")",
                          {{model.f_of.at(l), 1.0},
                           {model.omega_of.at(l), m_line},
                           {model.y_of.at(l), -ln.capacity}},
                          Relation::GreaterEq, 0.0);
        lp.add_constraint("ovn(" + std::to_string(l) + ")",
                          {{model.f_of.at(l), -1.0},
                           {model.omega_of.at(l), -m_line},
                           {model.y_of.at(l), -ln.capacity}},
                          Relation::GreaterEq, -m_line);
    }

    // Neighbor structure over live lines. phi_(i,j) means "no connection from
    // i to generation through j"; parallel lines to one neighbor must all
    // fail, which an AND-auxiliary captures.
    std::map<std::pair<BusId, BusId>, std::vector<LineId>> pair_lines;
    for (LineId l : island->lines) {
        const Line& ln = grid.line(l);
        pair_lines[{std::min(ln.from, ln.to), std::max(ln.from, ln.to)}].push_back(l);
    }
    std::map<std::pair<BusId, BusId>, int> cut_of; // all-parallel-lines-failed indicator
    for (const auto& [pair, lines] : pair_lines) {
        if (lines.size() == 1) {
            cut_of[pair] = model.y_of.at(lines.front());
            continue;
        }
        const int v = lp.add_binary("cut(" + std::to_string(pair.first) + "," +
                                    std::to_string(pair.second) + ")");
        std::vector<std::pair<int, double>> sum_terms{{v, -1.0}};
        for (LineId l : lines) {
            lp.add_constraint("", {{v, 1.0}, {model.y_of.at(l), -1.0}}, Relation::LessEq, 0.0);
            sum_terms.emplace_back(model.y_of.at(l), 1.0);
        }
        lp.add_constraint("", std::move(sum_terms), Relation::LessEq,
                          static_cast<double>(lines.size()) - 1.0);
        cut_of[pair] = v;
    }

    auto cut_var = [&](BusId a, BusId b) { return cut_of.at({std::min(a, b), std::max(a, b)}); };

    std::map<std::pair<BusId, BusId>, int> phi_of;
    for (const auto& [pair, lines] : pair_lines) {
        for (auto [i, j] : {pair, std::make_pair(pair.second, pair.first)}) {
            if (grid.is_generator_bus(i) || grid.is_generator_bus(j)) continue;
            const int phi = lp.add_binary("phi(" + std::to_string(i) + "," + std::to_string(j) + ")");
            phi_of[{i, j}] = phi;
            const int tj = model.t_of.at(j);
            const int cut = cut_var(i, j);
            lp.add_constraint("", {{phi, 1.0}, {tj, -1.0}}, Relation::GreaterEq, 0.0);
            lp.add_constraint("", {{phi, 1.0}, {cut, -1.0}}, Relation::GreaterEq, 0.0);
            lp.add_constraint("", {{phi, 1.0}, {tj, -1.0}, {cut, -1.0}}, Relation::LessEq, 0.0);
        }
    }

    // Disconnection certificate: claiming t_i = 1 requires every neighbor
    // route to be cut.
    for (BusId b : island->buses) {
        if (grid.is_generator_bus(b)) continue;
        std::set<BusId> neighbors;
        for (LineId l : grid.incident(b))
            if (grid.line(l).alive)
                neighbors.insert(grid.line(l).from == b ? grid.line(l).to : grid.line(l).from);
        std::vector<std::pair<int, double>> terms{{model.t_of.at(b), m_conn}};
        for (BusId nb : neighbors) {
            if (grid.is_generator_bus(nb)) terms.emplace_back(cut_var(b, nb), -1.0);
            else terms.emplace_back(phi_of.at({b, nb}), -1.0);
        }
        lp.add_constraint("conn(" + std::to_string(b) + ")", std::move(terms), Relation::LessEq,
                          m_conn - static_cast<double>(neighbors.size()));
    }

    return model;
}

std::vector<UserId> SpacModel::selected_seeds(const std::vector<double>& values) const {
    std::vector<UserId> out;
    for (const auto& [user, var] : x_of)
        if (values[static_cast<std::size_t>(var)] > 0.5) out.push_back(user);
    return out;
}

SpacModel build_spac_milp(const std::vector<std::vector<UserId>>& seed_sets,
                          const std::vector<std::set<BusId>>& failure_sets, int budget) {
    if (seed_sets.size() != failure_sets.size())
        throw ValidationError("build_spac_milp: seed and failure lists must align");
    if (budget < 1) throw ValidationError("build_spac_milp: budget must be at least 1");

    SpacModel model;
    LinearProgram& lp = model.lp;
    lp.sense = Sense::Maximize;
    if (seed_sets.empty()) return model; // trivial MILP, objective 0

    std::set<UserId> user_union;
    std::set<BusId> bus_union;
    for (const auto& s : seed_sets) user_union.insert(s.begin(), s.end());
    for (const auto& p : failure_sets) bus_union.insert(p.begin(), p.end());

    for (UserId u : user_union) {
        model.x_of[u] = lp.add_binary("x(" + std::to_string(u) + ")", 1);
        model.users.push_back(u);
    }
    for (BusId b : bus_union) {
        model.y_of[b] = lp.add_binary("y(" + std::to_string(b) + ")");
        lp.set_objective(model.y_of[b], 1.0);
    }

    std::vector<std::pair<int, double>> budget_terms;
    for (UserId u : model.users) budget_terms.emplace_back(model.x_of.at(u), 1.0);
    lp.add_constraint("budget", std::move(budget_terms), Relation::LessEq,
                      static_cast<double>(budget));

    // psi selectors: each covered bus commits to one certificate whose full
    // seed set must then be bought.
    for (BusId b : bus_union) {
        std::vector<std::pair<int, double>> pick_terms;
        for (std::size_t l = 0; l < failure_sets.size(); ++l) {
            if (!failure_sets[l].count(b)) continue;
            const int psi = lp.add_binary("psi(" + std::to_string(l) + "," + std::to_string(b) + ")");
            pick_terms.emplace_back(psi, 1.0);
            const double big = std::max<double>(1.0, static_cast<double>(seed_sets[l].size()));
            // M(2 - y_b - psi) >= |S_l| - sum_{i in S_l} x_i
            std::vector<std::pair<int, double>> terms{{model.y_of.at(b), -big}, {psi, -big}};
            for (UserId u : seed_sets[l]) terms.emplace_back(model.x_of.at(u), 1.0);
            lp.add_constraint("", std::move(terms), Relation::GreaterEq,
                              static_cast<double>(seed_sets[l].size()) - 2.0 * big);
        }
        lp.add_constraint("", std::move(pick_terms), Relation::Equal, 1.0);
    }
    return model;
}

ClsModel build_cls_lp(const PowerGrid& grid) {
    ClsModel model;
    LinearProgram& lp = model.lp;
    lp.sense = Sense::Minimize;

    for (BusId b = 0; b < grid.bus_count(); ++b)
        model.theta_of[b] = lp.add_variable("th(" + std::to_string(b) + ")", -milp::kInf, milp::kInf);
    for (LineId l = 0; l < grid.line_count(); ++l) {
        const Line& ln = grid.line(l);
        if (!ln.alive) continue;
        model.f_of[l] = lp.add_variable("f(" + std::to_string(l) + ")", -ln.capacity, ln.capacity);
        lp.add_constraint("ang(" + std::to_string(l) + ")",
                          {{model.theta_of.at(ln.from), 1.0},
                           {model.theta_of.at(ln.to), -1.0},
                           {model.f_of.at(l), -ln.reactance}},
                          Relation::Equal, 0.0);
    }
    for (const auto& d : grid.demands()) {
        const int tau = lp.add_variable("tau(" + std::to_string(d.bus) + ")", 0.0, d.current);
        model.tau_of[d.bus] = tau;
        lp.set_objective(tau, 1.0);
    }
    for (const auto& g : grid.generators())
        model.beta_of[g.bus] = lp.add_variable("beta(" + std::to_string(g.bus) + ")", 0.0, g.output);

    // Balance: sum(f out) - sum(f in) + beta - tau = p^t - D^t
    for (BusId b = 0; b < grid.bus_count(); ++b) {
        std::vector<std::pair<int, double>> terms;
        for (LineId l : grid.incident(b)) {
            if (!grid.line(l).alive) continue;
            terms.emplace_back(model.f_of.at(l), grid.line(l).from == b ? 1.0 : -1.0);
        }
        double rhs = 0.0;
        if (int g = grid.generator_index(b); g >= 0) {
            terms.emplace_back(model.beta_of.at(b), 1.0);
            rhs += grid.generators()[static_cast<std::size_t>(g)].output;
        }
        if (int d = grid.demand_index(b); d >= 0) {
            terms.emplace_back(model.tau_of.at(b), -1.0);
            rhs -= grid.demands()[static_cast<std::size_t>(d)].current;
        }
        if (terms.empty() && rhs == 0.0) continue; // bare transit bus
        lp.add_constraint("bal(" + std::to_string(b) + ")", std::move(terms), Relation::Equal, rhs);
    }
    return model;
}

} // namespace sgsim
