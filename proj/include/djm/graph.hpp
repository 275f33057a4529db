#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "djm/errors.hpp"
#include "djm/types.hpp"

namespace djm {

struct AdjEntry {
    NodeId to;
    EdgeId edge;
};

// Dynamic undirected weighted graph. An edge is present iff its weight is
// >= 1; weight-0 edges are physically removed from the adjacency lists but
// keep their handle, so a handle identifies the same node pair for the whole
// run regardless of deletions and re-insertions.
class Graph {
public:
    explicit Graph(NodeId n) : adjacency_(n) {}

    NodeId node_count() const { return static_cast<NodeId>(adjacency_.size()); }
    std::size_t present_edge_count() const { return present_; }
    std::size_t handle_count() const { return edges_.size(); }

    std::span<const AdjEntry> neighbors(NodeId v) const {
        return {adjacency_[v].data(), adjacency_[v].size()};
    }
    std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

    // stable handle for the pair {u,v}, created on first sight
    EdgeId handle_for(NodeId u, NodeId v);
    // handle of {u,v} if the pair was ever seen, kNoEdge otherwise
    EdgeId find_handle(NodeId u, NodeId v) const;

    bool present(EdgeId e) const { return edges_[e].w > 0; }
    Weight weight(EdgeId e) const { return edges_[e].w; }
    std::pair<NodeId, NodeId> endpoints(EdgeId e) const {
        return {edges_[e].u, edges_[e].v};
    }

    Weight weight_between(NodeId u, NodeId v) const {
        const EdgeId e = find_handle(u, v);
        return e == kNoEdge ? 0 : edges_[e].w;
    }

    // max present edge weight / max degree; decreases are tracked lazily and
    // trigger a recount only when read
    Weight max_weight() const;
    std::size_t max_degree() const;

    // sets the weight of e, inserting into or removing from the adjacency
    // lists as the edge appears or disappears
    void set_weight(EdgeId e, Weight w);

    std::vector<EdgeId> present_edges() const;

private:
    struct EdgeRec {
        NodeId u, v;
        Weight w = 0;
        std::uint32_t pos_u = 0, pos_v = 0; // indices into adjacency lists while present
    };

    void adj_insert(EdgeId e);
    void adj_remove(EdgeId e);

    std::vector<std::vector<AdjEntry>> adjacency_;
    std::vector<EdgeRec> edges_;
    std::unordered_map<std::uint64_t, EdgeId> handle_of_;
    std::size_t present_ = 0;

    mutable Weight max_weight_ = 0;
    mutable bool max_weight_dirty_ = false;
    mutable std::size_t max_degree_ = 0;
    mutable bool max_degree_dirty_ = false;
};

// one signed weight change on one edge
struct EdgeUpdate {
    NodeId u, v;
    Delta delta;

    bool operator==(const EdgeUpdate&) const = default;
};

enum class UpdateClass { Insertion, Deletion, ChangeUp, ChangeDown };

// coalesced batch: at most one update per edge, first-occurrence order
struct Batch {
    std::vector<EdgeUpdate> updates;

    std::size_t size() const { return updates.size(); }
    bool operator==(const Batch&) const = default;
};

// sums same-edge deltas, drops zero sums, keeps first-occurrence order
Batch coalesce_batch(const std::vector<EdgeUpdate>& raw);

} // namespace djm
