#pragma once

#include <map>
#include <set>
#include <vector>

#include "sgsim/rng.hpp"
#include "sgsim/social_graph.hpp"

namespace sgsim {

/// Ordered list of distinct seed users.
using SeedSet = std::vector<UserId>;

struct InfluenceEstimate {
    double expected = 0.0; // mean |influenced ∩ targets| (weighted when weights are set)
    int trials = 0;
    std::map<UserId, double> activation; // per-target activation probability
};

/// One live-edge realization of the independent cascade: every edge is live
/// independently with its weight; returns the users reachable from the seeds.
std::set<UserId> simulate_ic(const SocialGraph& social, const SeedSet& seeds, Rng& rng);

/// Monte-Carlo estimate of the targeted influence spread. Trials use
/// common random numbers keyed off the rng state, so calls with equal rng
/// streams see identical live-edge realizations.
InfluenceEstimate estimate_influence(const SocialGraph& social, const SeedSet& seeds,
                                     const std::set<UserId>& targets, int trials, Rng& rng);

struct GreedyOptions {
    double coverage_goal = 0.9;
    int trials = 2000;
    std::set<UserId> excluded;           // never eligible as seeds
    std::map<UserId, double> weights;    // optional per-target weights (default 1)
};

struct GreedyResult {
    SeedSet seeds;      // newly selected seeds, in selection order
    double coverage = 0.0; // estimated influenced target mass including initial seeds
    bool goal_met = false;
};

/// Lazy-greedy marginal-gain selection over Monte-Carlo targeted influence,
/// starting from initial_seeds (whose influence counts toward coverage).
/// Stops at `budget` new seeds (budget < 0 = unbounded), at the coverage
/// goal, or when the best marginal gain is non-positive. Ties break toward
/// the smaller node id.
GreedyResult greedy_select_seeds(const SocialGraph& social, const std::set<UserId>& targets,
                                 const SeedSet& initial_seeds, int budget,
                                 const GreedyOptions& options, Rng& rng);

/// Greedy targeted influence maximization with budget k.
SeedSet greedy_targeted_im(const SocialGraph& social, const std::set<UserId>& targets, int budget,
                           double coverage_goal, int trials, Rng& rng);

} // namespace sgsim
