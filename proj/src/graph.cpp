#include "djm/graph.hpp"

#include <algorithm>

namespace djm {

EdgeId Graph::handle_for(NodeId u, NodeId v) {
    if (u == v) throw data_error("self-loops are not allowed");
    if (u >= node_count() || v >= node_count())
        throw data_error("node id out of range");
    const std::uint64_t key = edge_key(u, v);
    auto it = handle_of_.find(key);
    if (it != handle_of_.end()) return it->second;
    const EdgeId e = static_cast<EdgeId>(edges_.size());
    edges_.push_back(EdgeRec{std::min(u, v), std::max(u, v), 0, 0, 0});
    handle_of_.emplace(key, e);
    return e;
}

EdgeId Graph::find_handle(NodeId u, NodeId v) const {
    auto it = handle_of_.find(edge_key(u, v));
    return it == handle_of_.end() ? kNoEdge : it->second;
}

void Graph::adj_insert(EdgeId e) {
    EdgeRec& r = edges_[e];
    r.pos_u = static_cast<std::uint32_t>(adjacency_[r.u].size());
    r.pos_v = static_cast<std::uint32_t>(adjacency_[r.v].size());
    adjacency_[r.u].push_back(AdjEntry{r.v, e});
    adjacency_[r.v].push_back(AdjEntry{r.u, e});
    ++present_;
    if (!max_degree_dirty_)
        max_degree_ = std::max({max_degree_, adjacency_[r.u].size(), adjacency_[r.v].size()});
}

void Graph::adj_remove(EdgeId e) {
    const EdgeRec& r = edges_[e];
    auto drop = [&](NodeId at, std::uint32_t pos) {
        auto& list = adjacency_[at];
        const AdjEntry moved = list.back();
        list[pos] = moved;
        list.pop_back();
        if (moved.edge != e) {
            EdgeRec& m = edges_[moved.edge];
            (m.u == at ? m.pos_u : m.pos_v) = pos;
        }
        // removing from a vertex that attained the maximum invalidates it
        if (list.size() + 1 == max_degree_) max_degree_dirty_ = true;
    };
    drop(r.u, r.pos_u);
    drop(r.v, r.pos_v);
    --present_;
}

void Graph::set_weight(EdgeId e, Weight w) {
    EdgeRec& r = edges_[e];
    const Weight old = r.w;
    if (old == w) return;
    if (old == 0 && w > 0) {
        r.w = w;
        adj_insert(e);
    } else if (old > 0 && w == 0) {
        r.w = 0;
        adj_remove(e);
        if (old == max_weight_) max_weight_dirty_ = true;
    } else {
        r.w = w;
        if (w < old && old == max_weight_) max_weight_dirty_ = true;
    }
    if (w > 0 && !max_weight_dirty_) max_weight_ = std::max(max_weight_, w);
}

Weight Graph::max_weight() const {
    if (max_weight_dirty_) {
        max_weight_ = 0;
        for (const EdgeRec& r : edges_)
            if (r.w > max_weight_) max_weight_ = r.w;
        max_weight_dirty_ = false;
    }
    return max_weight_;
}

std::size_t Graph::max_degree() const {
    if (max_degree_dirty_) {
        max_degree_ = 0;
        for (const auto& list : adjacency_)
            if (list.size() > max_degree_) max_degree_ = list.size();
        max_degree_dirty_ = false;
    }
    return max_degree_;
}

std::vector<EdgeId> Graph::present_edges() const {
    std::vector<EdgeId> out;
    out.reserve(present_);
    for (EdgeId e = 0; e < edges_.size(); ++e)
        if (edges_[e].w > 0) out.push_back(e);
    return out;
}

Batch coalesce_batch(const std::vector<EdgeUpdate>& raw) {
    Batch batch;
    std::unordered_map<std::uint64_t, std::size_t> slot; // key -> index in batch
    for (const EdgeUpdate& up : raw) {
        if (up.u == up.v) throw data_error("self-loop update");
        const std::uint64_t key = edge_key(up.u, up.v);
        auto it = slot.find(key);
        if (it == slot.end()) {
            slot.emplace(key, batch.updates.size());
            batch.updates.push_back(
                EdgeUpdate{std::min(up.u, up.v), std::max(up.u, up.v), up.delta});
        } else {
            batch.updates[it->second].delta += up.delta;
        }
    }
    // drop zero sums, keeping the survivors in first-occurrence order
    std::erase_if(batch.updates, [](const EdgeUpdate& u) { return u.delta == 0; });
    return batch;
}

} // namespace djm
