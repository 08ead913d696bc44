#pragma once

#include <cstdint>
#include <vector>

#include "sgsim/errors.hpp"

namespace sgsim {

using UserId = int;

/// Weighted directed social graph. Node ids are dense integers 0..n-1;
/// external dataset ids, when relevant, live in the external_ids side table.
class SocialGraph {
public:
    struct Edge {
        UserId from = 0;
        UserId to = 0;
        double p = 0.0; // propagation probability, in [0,1]
    };

    SocialGraph() = default;
    explicit SocialGraph(int node_count) { resize(node_count); }

    void resize(int node_count) {
        node_count_ = node_count;
        out_.assign(static_cast<std::size_t>(node_count), {});
        in_.assign(static_cast<std::size_t>(node_count), {});
    }

    int node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    Edge& edge(int id) { return edges_[static_cast<std::size_t>(id)]; }
    const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

    /// Out-edge ids of a node.
    const std::vector<int>& out_edges(UserId u) const { return out_[static_cast<std::size_t>(u)]; }
    const std::vector<int>& in_edges(UserId u) const { return in_[static_cast<std::size_t>(u)]; }

    bool contains(UserId u) const { return u >= 0 && u < node_count_; }

    /// Adds the directed edge (from, to). Self-loops and duplicate ordered
    /// pairs are rejected, weights must be probabilities.
    int add_edge(UserId from, UserId to, double p) {
        if (!contains(from) || !contains(to))
            throw ValidationError("social edge endpoint out of range");
        if (from == to) throw ValidationError("social graph: self-loop rejected");
        if (p < 0.0 || p > 1.0)
            throw ValidationError("social edge weight outside [0,1]");
        if (has_edge(from, to))
            throw ValidationError("social graph: duplicate directed edge");
        const int id = static_cast<int>(edges_.size());
        edges_.push_back({from, to, p});
        out_[static_cast<std::size_t>(from)].push_back(id);
        in_[static_cast<std::size_t>(to)].push_back(id);
        return id;
    }

    bool has_edge(UserId from, UserId to) const {
        for (int e : out_[static_cast<std::size_t>(from)])
            if (edges_[static_cast<std::size_t>(e)].to == to) return true;
        return false;
    }

    /// Original dataset node ids; empty when the graph was built directly.
    std::vector<std::int64_t> external_ids;

private:
    int node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
};

} // namespace sgsim
