#include "sgsim/powerflow.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace sgsim {

std::vector<Island> find_islands(const PowerGrid& grid) {
    const int n = grid.bus_count();
    std::vector<int> island_of(static_cast<std::size_t>(n), -1);
    std::vector<Island> islands;
    std::vector<BusId> stack;
    for (BusId start = 0; start < n; ++start) {
        if (island_of[static_cast<std::size_t>(start)] >= 0) continue;
        const int id = static_cast<int>(islands.size());
        islands.emplace_back();
        island_of[static_cast<std::size_t>(start)] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            const BusId b = stack.back();
            stack.pop_back();
            islands[static_cast<std::size_t>(id)].buses.push_back(b);
            if (grid.is_generator_bus(b)) islands[static_cast<std::size_t>(id)].has_generator = true;
            for (LineId l : grid.incident(b)) {
                const Line& ln = grid.line(l);
                if (!ln.alive) continue;
                const BusId other = ln.from == b ? ln.to : ln.from;
                if (island_of[static_cast<std::size_t>(other)] < 0) {
                    island_of[static_cast<std::size_t>(other)] = id;
                    stack.push_back(other);
                }
            }
        }
    }
    for (LineId l = 0; l < grid.line_count(); ++l) {
        const Line& ln = grid.line(l);
        if (ln.alive)
            islands[static_cast<std::size_t>(island_of[static_cast<std::size_t>(ln.from)])]
                .lines.push_back(l);
    }
    for (auto& isl : islands) std::sort(isl.buses.begin(), isl.buses.end());
    return islands;
}

void balance_island(PowerGrid& grid, const Island& island) {
    std::vector<int> gen_ids;
    std::vector<int> demand_ids;
    double demand_total = 0.0;
    for (BusId b : island.buses) {
        if (int g = grid.generator_index(b); g >= 0) gen_ids.push_back(g);
        if (int d = grid.demand_index(b); d >= 0) {
            demand_ids.push_back(d);
            demand_total += grid.demands()[static_cast<std::size_t>(d)].current;
        }
    }

    auto zero_demands = [&] {
        for (int d : demand_ids) grid.demands()[static_cast<std::size_t>(d)].current = 0.0;
    };

    if (gen_ids.empty()) {
        zero_demands();
        return;
    }

    double capacity = 0.0;
    for (int g : gen_ids) capacity += grid.generators()[static_cast<std::size_t>(g)].pmax;

    if (capacity < demand_total) {
        // Deficit island: generators at maximum, demand curtailed uniformly.
        const double scale = demand_total > 0.0 ? capacity / demand_total : 0.0;
        for (int g : gen_ids) {
            auto& gen = grid.generators()[static_cast<std::size_t>(g)];
            gen.output = gen.pmax;
        }
        for (int d : demand_ids) grid.demands()[static_cast<std::size_t>(d)].current *= scale;
        return;
    }

    // Surplus-capable island. Generators whose combined pmin exceeds the
    // demand are switched off (output zero), largest pmin first.
    std::vector<int> operating = gen_ids;
    auto pmin_sum = [&] {
        double s = 0.0;
        for (int g : operating) s += grid.generators()[static_cast<std::size_t>(g)].pmin;
        return s;
    };
    while (!operating.empty() && pmin_sum() > demand_total) {
        auto worst = std::max_element(operating.begin(), operating.end(), [&](int a, int b) {
            const auto& ga = grid.generators()[static_cast<std::size_t>(a)];
            const auto& gb = grid.generators()[static_cast<std::size_t>(b)];
            if (ga.pmin != gb.pmin) return ga.pmin < gb.pmin;
            return ga.bus < gb.bus;
        });
        grid.generators()[static_cast<std::size_t>(*worst)].output = 0.0;
        operating.erase(worst);
    }
    if (operating.empty()) {
        zero_demands();
        return;
    }

    double supply = 0.0;
    for (int g : operating) {
        auto& gen = grid.generators()[static_cast<std::size_t>(g)];
        gen.output = std::clamp(gen.output, gen.pmin, gen.pmax);
        supply += gen.output;
    }

    if (supply < demand_total) {
        // Raise proportional to up-headroom.
        double headroom = 0.0;
        for (int g : operating) {
            const auto& gen = grid.generators()[static_cast<std::size_t>(g)];
            headroom += gen.pmax - gen.output;
        }
        const double deficit = demand_total - supply;
        if (headroom > 0.0) {
            for (int g : operating) {
                auto& gen = grid.generators()[static_cast<std::size_t>(g)];
                gen.output += deficit * (gen.pmax - gen.output) / headroom;
            }
        }
    } else if (supply > demand_total) {
        // Lower proportional to down-headroom.
        double headroom = 0.0;
        for (int g : operating) {
            const auto& gen = grid.generators()[static_cast<std::size_t>(g)];
            headroom += gen.output - gen.pmin;
        }
        const double surplus = supply - demand_total;
        if (headroom > 0.0) {
            for (int g : operating) {
                auto& gen = grid.generators()[static_cast<std::size_t>(g)];
                gen.output -= surplus * (gen.output - gen.pmin) / headroom;
            }
        }
    }
}

void balance_all_islands(PowerGrid& grid) {
    for (const Island& island : find_islands(grid)) balance_island(grid, island);
}

FlowSolution solve_dc_flow(const PowerGrid& grid) {
    FlowSolution sol;
    sol.line_flow.assign(static_cast<std::size_t>(grid.line_count()), 0.0);
    sol.theta.assign(static_cast<std::size_t>(grid.bus_count()), 0.0);

    const std::vector<Island> islands = find_islands(grid);
    sol.slack_adjustment.assign(islands.size(), 0.0);

    std::vector<int> local_index(static_cast<std::size_t>(grid.bus_count()), -1);
    for (std::size_t isl = 0; isl < islands.size(); ++isl) {
        const Island& island = islands[isl];
        const int m = static_cast<int>(island.buses.size());
        if (m <= 1) {
            // Isolated bus: its injection (post-balance, normally 0) is the
            // slack this island cannot transport.
            sol.slack_adjustment[isl] = m == 1 ? grid.injection(island.buses[0]) : 0.0;
            continue;
        }
        for (int i = 0; i < m; ++i)
            local_index[static_cast<std::size_t>(island.buses[static_cast<std::size_t>(i)])] = i;
        const BusId ref = island.buses[0];

        // Reduced weighted Laplacian: reference row/column dropped.
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m - 1, m - 1);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m - 1);
        for (int i = 1; i < m; ++i)
            rhs(i - 1) = grid.injection(island.buses[static_cast<std::size_t>(i)]);
        for (LineId l : island.lines) {
            const Line& ln = grid.line(l);
            const double w = 1.0 / ln.reactance;
            const int a = local_index[static_cast<std::size_t>(ln.from)];
            const int b = local_index[static_cast<std::size_t>(ln.to)];
            if (a > 0) B(a - 1, a - 1) += w;
            if (b > 0) B(b - 1, b - 1) += w;
            if (a > 0 && b > 0) {
                B(a - 1, b - 1) -= w;
                B(b - 1, a - 1) -= w;
            }
        }

        Eigen::LDLT<Eigen::MatrixXd> ldlt(B);
        Eigen::VectorXd x = ldlt.solve(rhs);
        const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
        if (ldlt.info() != Eigen::Success || !x.allFinite() ||
            (B * x - rhs).cwiseAbs().maxCoeff() > 1e-6 * scale)
            throw NumericalError("solve_dc_flow: singular island system");

        sol.theta[static_cast<std::size_t>(ref)] = 0.0;
        for (int i = 1; i < m; ++i)
            sol.theta[static_cast<std::size_t>(island.buses[static_cast<std::size_t>(i)])] =
                x(i - 1);
        double ref_outflow = 0.0;
        for (LineId l : island.lines) {
            const Line& ln = grid.line(l);
            const double f = (sol.theta[static_cast<std::size_t>(ln.from)] -
                              sol.theta[static_cast<std::size_t>(ln.to)]) /
                             ln.reactance;
            sol.line_flow[static_cast<std::size_t>(l)] = f;
            if (ln.from == ref) ref_outflow += f;
            if (ln.to == ref) ref_outflow -= f;
        }
        sol.slack_adjustment[isl] = ref_outflow - grid.injection(ref);
    }
    return sol;
}

void commit_flows(PowerGrid& grid, const FlowSolution& sol) {
    for (LineId l = 0; l < grid.line_count(); ++l) {
        Line& ln = grid.line(l);
        ln.flow = ln.alive ? sol.line_flow[static_cast<std::size_t>(l)] : 0.0;
    }
    for (BusId b = 0; b < grid.bus_count(); ++b)
        grid.set_theta(b, sol.theta[static_cast<std::size_t>(b)]);
}

void initialize_operating_point(PowerGrid& grid) {
    balance_all_islands(grid);
    commit_flows(grid, solve_dc_flow(grid));
    for (auto& ln : grid.lines()) ln.avg_flow = ln.flow;
}

CascadeOutcome run_cascade(PowerGrid& grid, double alpha, const CascadeOptions& options) {
    if (alpha <= 0.0 || alpha > 1.0)
        throw ValidationError("run_cascade: alpha must be in (0,1]");
    const int cap = options.round_cap > 0 ? options.round_cap
                                          : std::max(1, 10 * grid.line_count());

    CascadeOutcome outcome;
    std::set<BusId> failed_before = failed_nodes(grid);

    for (int round = 1;; ++round) {
        if (round > cap)
            throw Error("run_cascade: round cap hit without stabilizing (cap " +
                        std::to_string(cap) + ")");

        const std::vector<Island> islands = find_islands(grid);
        for (const Island& island : islands) balance_island(grid, island);
        if (options.pre_round_hook) options.pre_round_hook(grid, round);

        commit_flows(grid, solve_dc_flow(grid));

        CascadeRound rec;
        rec.index = round;
        rec.island_count = static_cast<int>(islands.size());
        rec.flows.reserve(static_cast<std::size_t>(grid.line_count()));

        for (LineId l = 0; l < grid.line_count(); ++l) {
            Line& ln = grid.line(l);
            if (ln.alive) {
                ln.avg_flow = alpha * ln.flow + (1.0 - alpha) * ln.avg_flow;
                const double ratio =
                    ln.capacity > 0.0
                        ? std::abs(ln.avg_flow) / ln.capacity
                        : (std::abs(ln.avg_flow) > 0.0 ? std::numeric_limits<double>::infinity()
                                                       : 0.0);
                rec.max_load_ratio = std::max(rec.max_load_ratio, ratio);
                if (is_overloaded(ln.avg_flow, ln.capacity)) rec.removed_lines.push_back(l);
            }
            rec.flows.push_back(ln.flow);
        }

        if (rec.removed_lines.empty()) {
            outcome.rounds.push_back(std::move(rec));
            break;
        }

        for (LineId l : rec.removed_lines) {
            Line& ln = grid.line(l);
            ln.alive = false;
            ln.flow = 0.0;
            outcome.failed_lines.push_back(l);
        }
        const std::set<BusId> failed_now = failed_nodes(grid);
        for (BusId b : failed_now)
            if (!failed_before.count(b)) rec.failed_buses.push_back(b);
        failed_before = failed_now;
        outcome.rounds.push_back(std::move(rec));
    }

    outcome.failed_nodes = failed_nodes(grid);
    const double original = grid.total_base_demand();
    outcome.final_yield = original > 0.0 ? compute_yield(grid, original) : 1.0;
    return outcome;
}

void apply_demand_change(PowerGrid& grid, const std::set<BusId>& attacked, double delta) {
    apply_demand_change(grid, attacked, [delta](BusId) { return delta; });
}

void apply_demand_change(PowerGrid& grid, const std::set<BusId>& attacked,
                         const std::function<double(BusId)>& delta_of) {
    for (BusId b : attacked) {
        if (!grid.contains(b) || !grid.is_demand_bus(b))
            throw ValidationError("apply_demand_change: bus " + std::to_string(b) +
                                  " is not a demand bus");
        const double delta = delta_of(b);
        if (delta <= 0.0) throw ValidationError("apply_demand_change: delta must be positive");
    }
    for (BusId b : attacked) {
        auto& d = grid.demands()[static_cast<std::size_t>(grid.demand_index(b))];
        d.current = d.base * (1.0 + delta_of(b));
        d.attacked = true;
    }
}

} // namespace sgsim
