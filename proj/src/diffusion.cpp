#include "sgsim/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "sgsim/errors.hpp"

namespace sgsim {

std::set<UserId> simulate_ic(const SocialGraph& social, const SeedSet& seeds, Rng& rng) {
    std::vector<char> active(static_cast<std::size_t>(social.node_count()), 0);
    std::vector<UserId> frontier;
    std::set<UserId> influenced;
    for (UserId s : seeds) {
        if (!social.contains(s)) throw ValidationError("simulate_ic: seed outside the graph");
        if (!active[static_cast<std::size_t>(s)]) {
            active[static_cast<std::size_t>(s)] = 1;
            influenced.insert(s);
            frontier.push_back(s);
        }
    }
    // Each edge gets its coin at most once, which is distribution-equivalent
    // to sampling the whole live-edge graph up front.
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        const UserId u = frontier[i];
        for (int e : social.out_edges(u)) {
            const auto& edge = social.edge(e);
            if (active[static_cast<std::size_t>(edge.to)]) continue;
            if (rng.next_real() < edge.p) {
                active[static_cast<std::size_t>(edge.to)] = 1;
                influenced.insert(edge.to);
                frontier.push_back(edge.to);
            }
        }
    }
    return influenced;
}

namespace {

/// Shared-trial live-edge scheme: edge e is live in trial t iff a hash of
/// (base_seed, t, e) lands under the edge weight. Any seed set evaluated in
/// trial t sees the same realization, which keeps greedy marginal gains
/// monotone and estimates reduction-order independent.
class TrialSampler {
public:
    TrialSampler(const SocialGraph& social, std::uint64_t base_seed, int trials)
        : social_(social), trials_(trials) {
        trial_seeds_.reserve(static_cast<std::size_t>(trials));
        for (int t = 0; t < trials; ++t)
            trial_seeds_.push_back(mix64(base_seed, static_cast<std::uint64_t>(t)));
    }

    int trials() const { return trials_; }

    bool live(int trial, int edge_id) const {
        const auto& e = social_.edge(edge_id);
        if (e.p <= 0.0) return false;
        if (e.p >= 1.0) return true;
        return coin_real(trial_seeds_[static_cast<std::size_t>(trial)],
                         static_cast<std::uint64_t>(edge_id)) < e.p;
    }

    /// Marks everything reachable from `from` over live edges of `trial`,
    /// skipping already-active users; returns the newly activated users.
    template <class Visit>
    void expand(int trial, UserId from, std::vector<char>& active, Visit&& visit) const {
        if (active[static_cast<std::size_t>(from)]) return;
        active[static_cast<std::size_t>(from)] = 1;
        visit(from);
        scratch_.clear();
        scratch_.push_back(from);
        for (std::size_t i = 0; i < scratch_.size(); ++i) {
            const UserId u = scratch_[i];
            for (int e : social_.out_edges(u)) {
                const UserId v = social_.edge(e).to;
                if (active[static_cast<std::size_t>(v)]) continue;
                if (!live(trial, e)) continue;
                active[static_cast<std::size_t>(v)] = 1;
                visit(v);
                scratch_.push_back(v);
            }
        }
    }

private:
    const SocialGraph& social_;
    int trials_;
    std::vector<std::uint64_t> trial_seeds_;
    mutable std::vector<UserId> scratch_;
};

} // namespace

InfluenceEstimate estimate_influence(const SocialGraph& social, const SeedSet& seeds,
                                     const std::set<UserId>& targets, int trials, Rng& rng) {
    if (trials < 1) throw ValidationError("estimate_influence: trials must be at least 1");
    for (UserId s : seeds)
        if (!social.contains(s)) throw ValidationError("estimate_influence: seed outside the graph");

    const TrialSampler sampler(social, rng.next_u64(), trials);
    const int n = social.node_count();
    std::vector<char> is_target(static_cast<std::size_t>(n), 0);
    for (UserId t : targets)
        if (t >= 0 && t < n) is_target[static_cast<std::size_t>(t)] = 1;

    std::map<UserId, long> hits;
    for (UserId t : targets) hits[t] = 0;
    long total = 0;
    std::vector<char> active(static_cast<std::size_t>(n));
    for (int t = 0; t < trials; ++t) {
        std::fill(active.begin(), active.end(), 0);
        for (UserId s : seeds)
            sampler.expand(t, s, active, [&](UserId v) {
                if (is_target[static_cast<std::size_t>(v)]) {
                    ++total;
                    ++hits[v];
                }
            });
    }

    InfluenceEstimate est;
    est.trials = trials;
    est.expected = static_cast<double>(total) / trials;
    for (const auto& [user, count] : hits)
        est.activation[user] = static_cast<double>(count) / trials;
    return est;
}

GreedyResult greedy_select_seeds(const SocialGraph& social, const std::set<UserId>& targets,
                                 const SeedSet& initial_seeds, int budget,
                                 const GreedyOptions& options, Rng& rng) {
    GreedyResult result;
    if (targets.empty()) {
        result.goal_met = true;
        return result;
    }
    if (options.trials < 1) throw ValidationError("greedy_select_seeds: trials must be >= 1");
    if (options.coverage_goal <= 0.0 || options.coverage_goal > 1.0)
        throw ValidationError("greedy_select_seeds: coverage goal must be in (0,1]");

    const int n = social.node_count();
    const int trials = options.trials;
    const TrialSampler sampler(social, rng.next_u64(), trials);

    std::vector<double> weight(static_cast<std::size_t>(n), 0.0);
    double total_weight = 0.0;
    for (UserId t : targets) {
        if (t < 0 || t >= n) continue;
        const auto it = options.weights.find(t);
        const double w = it == options.weights.end() ? 1.0 : it->second;
        weight[static_cast<std::size_t>(t)] = w;
        total_weight += w;
    }
    const double goal = options.coverage_goal * total_weight;

    // Per-trial activation state, shared across the whole selection.
    std::vector<std::vector<char>> active(static_cast<std::size_t>(trials),
                                          std::vector<char>(static_cast<std::size_t>(n), 0));
    double covered = 0.0; // summed over trials
    for (int t = 0; t < trials; ++t)
        for (UserId s : initial_seeds)
            sampler.expand(t, s, active[static_cast<std::size_t>(t)],
                           [&](UserId v) { covered += weight[static_cast<std::size_t>(v)]; });

    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    for (UserId s : initial_seeds)
        if (s >= 0 && s < n) taken[static_cast<std::size_t>(s)] = 1;

    auto marginal_gain = [&](UserId v) {
        double gain = 0.0;
        std::vector<char> probe;
        for (int t = 0; t < trials; ++t) {
            probe = active[static_cast<std::size_t>(t)];
            sampler.expand(t, v, probe, [&](UserId u) { gain += weight[static_cast<std::size_t>(u)]; });
        }
        return gain / trials;
    };

    // CELF queue: (gain, user, iteration the gain was computed at)
    struct Entry {
        double gain;
        UserId user;
        int stamp;
        bool operator<(const Entry& other) const {
            if (gain != other.gain) return gain < other.gain;
            return user > other.user; // smaller id wins ties
        }
    };
    std::priority_queue<Entry> queue;
    for (UserId v = 0; v < n; ++v) {
        if (taken[static_cast<std::size_t>(v)] || options.excluded.count(v)) continue;
        queue.push({marginal_gain(v), v, 0});
    }

    const int max_new = budget < 0 ? n : budget;
    int iteration = 0;
    while (static_cast<int>(result.seeds.size()) < max_new &&
           covered / trials < goal - 1e-12 && !queue.empty()) {
        Entry top = queue.top();
        queue.pop();
        if (top.stamp != iteration) {
            top.gain = marginal_gain(top.user);
            top.stamp = iteration;
            queue.push(top);
            continue;
        }
        if (top.gain <= 1e-12) break;
        result.seeds.push_back(top.user);
        taken[static_cast<std::size_t>(top.user)] = 1;
        for (int t = 0; t < trials; ++t)
            sampler.expand(t, top.user, active[static_cast<std::size_t>(t)],
                           [&](UserId u) { covered += weight[static_cast<std::size_t>(u)]; });
        ++iteration;
    }

    result.coverage = covered / trials;
    result.goal_met = result.coverage >= goal - 1e-12;
    return result;
}

SeedSet greedy_targeted_im(const SocialGraph& social, const std::set<UserId>& targets, int budget,
                           double coverage_goal, int trials, Rng& rng) {
    if (budget < 1) throw ValidationError("greedy_targeted_im: budget must be at least 1");
    GreedyOptions options;
    options.coverage_goal = coverage_goal;
    options.trials = trials;
    return greedy_select_seeds(social, targets, {}, budget, options, rng).seeds;
}

} // namespace sgsim
