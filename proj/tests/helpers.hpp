#pragma once

#include <set>
#include <tuple>
#include <vector>

#include "djm/coloring.hpp"
#include "djm/graph.hpp"
#include "djm/instance.hpp"
#include "djm/oracle.hpp"
#include "djm/rng.hpp"

namespace djm::test {

struct Fixture {
    Graph g;
    Coloring c;
    Fixture(NodeId n, Color k) : g(n), c(g, k) {}
};

inline EdgeId add_edge(Graph& g, Coloring& c, NodeId u, NodeId v, Weight w) {
    const EdgeId e = g.handle_for(u, v);
    (void)apply_update(g, c, EdgeUpdate{u, v, static_cast<Delta>(w)});
    return e;
}

// path 0-1-2-...; returns the edge handles in order
inline std::vector<EdgeId> make_path(Graph& g, Coloring& c,
                                     const std::vector<Weight>& weights) {
    std::vector<EdgeId> edges;
    for (NodeId i = 0; i < weights.size(); ++i)
        edges.push_back(add_edge(g, c, i, i + 1, weights[i]));
    return edges;
}

// random update sequence over a small node set; weights stay modest so
// brute-force checks remain cheap
inline std::vector<EdgeUpdate> random_updates(Rng& rng, NodeId n, std::size_t count,
                                              const Graph& g, Weight max_w = 100) {
    std::vector<EdgeUpdate> ups;
    while (ups.size() < count) {
        const NodeId u = static_cast<NodeId>(rng.below(n));
        const NodeId v = static_cast<NodeId>(rng.below(n));
        if (u == v) continue;
        const Weight cur = g.weight_between(u, v);
        Delta delta;
        const std::uint64_t roll = rng.below(10);
        if (cur == 0) {
            delta = static_cast<Delta>(rng.range(1, max_w));
        } else if (roll < 3) {
            delta = -static_cast<Delta>(cur); // deletion
        } else {
            const Weight target = rng.range(1, max_w);
            if (target == cur) continue;
            delta = static_cast<Delta>(target) - static_cast<Delta>(cur);
        }
        ups.push_back(EdgeUpdate{u, v, delta});
        break;
    }
    return ups;
}

// one random coalesced batch against the current graph state
inline Batch random_batch(Rng& rng, NodeId n, Graph& g, std::size_t updates,
                          Weight max_w = 100) {
    std::vector<EdgeUpdate> raw;
    for (std::size_t i = 0; i < updates; ++i) {
        for (;;) {
            const NodeId u = static_cast<NodeId>(rng.below(n));
            const NodeId v = static_cast<NodeId>(rng.below(n));
            if (u == v) continue;
            Weight cur = g.weight_between(u, v);
            // account for earlier updates in this raw batch
            for (const EdgeUpdate& p : raw)
                if (edge_key(p.u, p.v) == edge_key(u, v))
                    cur = p.delta > 0 ? cur + static_cast<Weight>(p.delta)
                                      : cur - static_cast<Weight>(-p.delta);
            Delta delta;
            if (cur == 0) {
                delta = static_cast<Delta>(rng.range(1, max_w));
            } else if (rng.below(10) < 3) {
                delta = -static_cast<Delta>(cur);
            } else {
                const Weight target = rng.range(1, max_w);
                if (target == cur) continue;
                delta = static_cast<Delta>(target) - static_cast<Delta>(cur);
            }
            raw.push_back(EdgeUpdate{u, v, delta});
            break;
        }
    }
    return coalesce_batch(raw);
}

// batch over `count` distinct edges, so coalescing cannot shrink it
inline Batch distinct_batch(Rng& rng, NodeId n, Graph& g, std::size_t count,
                            Weight max_w) {
    std::vector<EdgeUpdate> raw;
    std::set<std::uint64_t> used;
    while (raw.size() < count) {
        const NodeId u = static_cast<NodeId>(rng.below(n));
        const NodeId v = static_cast<NodeId>(rng.below(n));
        if (u == v || !used.insert(edge_key(u, v)).second) continue;
        const Weight cur = g.weight_between(u, v);
        if (cur == 0) {
            raw.push_back(EdgeUpdate{u, v, static_cast<Delta>(rng.range(1, max_w))});
        } else {
            const Weight target = rng.below(4) == 0 ? 0 : rng.range(1, max_w);
            if (target == cur) continue;
            raw.push_back(EdgeUpdate{u, v, static_cast<Delta>(target) -
                                               static_cast<Delta>(cur)});
        }
    }
    return coalesce_batch(raw);
}

// random instance stream for replay tests
inline InstanceStream random_instance(std::uint64_t seed, NodeId n,
                                      std::size_t batches, std::size_t batch_size,
                                      Weight max_w = 100) {
    Rng rng(seed);
    InstanceStream s;
    s.n = n;
    Graph shadow(n);
    Coloring shadow_c(shadow, 1);
    for (std::size_t b = 0; b < batches; ++b) {
        Batch batch = random_batch(rng, n, shadow, batch_size, max_w);
        for (const EdgeUpdate& up : batch.updates)
            (void)apply_update(shadow, shadow_c, up);
        s.batches.push_back(std::move(batch));
    }
    return s;
}

} // namespace djm::test
