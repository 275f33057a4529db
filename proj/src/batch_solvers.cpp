#include "djm/batch_solvers.hpp"

#include <algorithm>

#include "djm/primitives.hpp"
#include "djm/static_solvers.hpp"

namespace djm {

AffectedSet collect_affected(const Graph& g, const Batch& batch) {
    AffectedSet out;
    for (const EdgeUpdate& up : batch.updates) {
        out.nodes.push_back(up.u);
        out.nodes.push_back(up.v);
        for (NodeId at : {up.u, up.v})
            for (const AdjEntry& a : g.neighbors(at))
                out.edges.push_back(a.edge);
        // a surviving updated edge is incident to its own endpoints, so the
        // loop above already picked it up; a deleted one must stay out
    }
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()),
                    out.edges.end());
    std::sort(out.nodes.begin(), out.nodes.end());
    out.nodes.erase(std::unique(out.nodes.begin(), out.nodes.end()),
                    out.nodes.end());
    return out;
}

namespace {

std::vector<EdgeId> sort_by_weight(const Graph& g, std::vector<EdgeId> edges) {
    std::sort(edges.begin(), edges.end(), [&](EdgeId a, EdgeId b) {
        if (g.weight(a) != g.weight(b)) return g.weight(a) > g.weight(b);
        return a < b;
    });
    return edges;
}

} // namespace

void batch_greedy(Graph& g, Coloring& c, const Batch& batch, bool local_swaps) {
    const AffectedSet affected = collect_affected(g, batch);
    for (EdgeId e : affected.edges)
        if (c.is_colored(e)) c.unassign(g, e);

    std::vector<char> in_set(g.handle_count(), 0);
    for (EdgeId e : affected.edges) in_set[e] = 1;

    const std::vector<EdgeId> order = sort_by_weight(g, affected.edges);
    for (Color col = 1; col <= c.num_colors(); ++col) {
        std::vector<EdgeId> this_round;
        for (EdgeId e : order) {
            if (c.is_colored(e)) continue;
            const auto [u, v] = g.endpoints(e);
            if (c.is_free(u, col) && c.is_free(v, col)) {
                c.assign(g, e, col);
                this_round.push_back(e);
            }
        }
        if (!local_swaps) continue;
        for (EdgeId e : this_round) {
            if (c.color(e) != col) continue;
            // plain swap_out could color edges two hops away from the batch;
            // restricting candidates to the affected set keeps the rewrite
            // local, so edges outside it never change
            swap_out_within(g, c, e, in_set);
        }
    }
}

void batch_node_centered(Graph& g, Coloring& c, const Batch& batch,
                         double threshold) {
    const AffectedSet affected = collect_affected(g, batch);
    const Color k = c.num_colors();
    const double cutoff = threshold * static_cast<double>(g.max_weight());

    // uncolor everything incident to the touched nodes before any coloring
    for (NodeId v : affected.nodes)
        for (const AdjEntry& a : g.neighbors(v))
            if (c.is_colored(a.edge)) c.unassign(g, a.edge);

    std::vector<std::pair<Weight, NodeId>> ranked;
    std::vector<Weight> incident;
    for (NodeId v : affected.nodes) {
        incident.clear();
        for (const AdjEntry& a : g.neighbors(v)) incident.push_back(g.weight(a.edge));
        std::sort(incident.begin(), incident.end(), std::greater<>());
        Weight rating = 0;
        const std::size_t take = std::min<std::size_t>(k, incident.size());
        for (std::size_t i = 0; i < take; ++i) rating += incident[i];
        ranked.emplace_back(rating, v);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    std::vector<EdgeId> deferred;
    std::vector<char> deferred_flag(g.handle_count(), 0);
    std::vector<EdgeId> local;
    for (const auto& [rating, v] : ranked) {
        local.clear();
        for (const AdjEntry& a : g.neighbors(v)) local.push_back(a.edge);
        local = sort_by_weight(g, std::move(local));
        for (EdgeId e : local) {
            if (c.is_colored(e)) continue;
            if (static_cast<double>(g.weight(e)) < cutoff) {
                if (!deferred_flag[e]) {
                    deferred_flag[e] = 1;
                    deferred.push_back(e);
                }
                continue;
            }
            const Color col = common_free_color(g, c, e);
            if (col != kUncolored) c.assign(g, e, col);
        }
    }

    deferred = sort_by_weight(g, std::move(deferred));
    for (EdgeId e : deferred) {
        if (c.is_colored(e)) continue;
        const Color col = common_free_color(g, c, e);
        if (col != kUncolored) c.assign(g, e, col);
    }
}

} // namespace djm
