#pragma once

#include <iosfwd>

#include "sgsim/coupling.hpp"
#include "sgsim/power_grid.hpp"
#include "sgsim/rng.hpp"
#include "sgsim/social_graph.hpp"

namespace sgsim {

/// Parses a "u v" edge list ('#' comments); every undirected pair becomes two
/// directed edges with unset (zero) weights. Node ids are compacted to dense
/// ids in sorted order; originals land in external_ids.
SocialGraph parse_edge_list(std::istream& in);

/// Induced, weakly connected n-node subgraph grown by randomized frontier
/// expansion from a random start. Throws InfeasibleError when no weak
/// component has n nodes.
SocialGraph sample_connected_subgraph(const SocialGraph& social, int n, Rng& rng);

/// Independently redraws every directed edge weight from U[lo, hi].
SocialGraph assign_uniform_weights(const SocialGraph& social, double lo, double hi, Rng& rng);

/// Maps every demand bus to a distinct social user: random unlinked pair,
/// then recursive neighbor matching in BFS order, falling back to random
/// unlinked users.
Coupling build_coupling(const PowerGrid& grid, const SocialGraph& social, Rng& rng);

/// Solves the unattacked base flow and sets every capacity to
/// capacity_factor * |base flow| (zero-flow lines get a small floor);
/// also initializes the moving-average flow state to the base flows.
PowerGrid set_line_capacities(PowerGrid grid, double capacity_factor);

} // namespace sgsim
