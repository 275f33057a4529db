#include "djm/static_solvers.hpp"

#include <algorithm>
#include <cassert>

#include "djm/errors.hpp"
#include "djm/primitives.hpp"

namespace djm {

std::vector<EdgeId> edges_by_weight(const Graph& g) {
    std::vector<EdgeId> edges = g.present_edges();
    std::sort(edges.begin(), edges.end(), [&](EdgeId a, EdgeId b) {
        if (g.weight(a) != g.weight(b)) return g.weight(a) > g.weight(b);
        return a < b;
    });
    return edges;
}

namespace {

void greedy_rounds(Graph& g, Coloring& c, const std::vector<EdgeId>& order,
                   bool local_swaps, std::vector<EdgeId>* colored_log) {
    for (Color col = 1; col <= c.num_colors(); ++col) {
        std::vector<EdgeId> this_round;
        for (EdgeId e : order) {
            if (c.is_colored(e) || !g.present(e)) continue;
            const auto [u, v] = g.endpoints(e);
            if (c.is_free(u, col) && c.is_free(v, col)) {
                c.assign(g, e, col);
                this_round.push_back(e);
                if (colored_log) colored_log->push_back(e);
            }
        }
        if (local_swaps) {
            // snapshot: edges colored by swap_out within the loop are not revisited
            for (EdgeId e : this_round) {
                if (c.color(e) != col) continue;
                swap_out(g, c, e);
            }
        }
    }
}

} // namespace

void greedy_it(Graph& g, Coloring& c, bool local_swaps) {
    greedy_rounds(g, c, edges_by_weight(g), local_swaps, nullptr);
}

void node_centered(Graph& g, Coloring& c, double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw usage_error("node_centered threshold must be in [0,1]");
    const Color k = c.num_colors();
    const Weight w_max = g.max_weight();
    // deferral cutoff: edges strictly below threshold * W wait for the final pass
    const double cutoff = threshold * static_cast<double>(w_max);

    // rating: sum of the min(k, deg) heaviest incident weights
    const NodeId n = g.node_count();
    std::vector<Weight> rating(n, 0);
    std::vector<Weight> incident;
    for (NodeId v = 0; v < n; ++v) {
        incident.clear();
        for (const AdjEntry& a : g.neighbors(v)) incident.push_back(g.weight(a.edge));
        std::sort(incident.begin(), incident.end(), std::greater<>());
        const std::size_t take = std::min<std::size_t>(k, incident.size());
        for (std::size_t i = 0; i < take; ++i) rating[v] += incident[i];
    }
    std::vector<NodeId> nodes(n);
    for (NodeId v = 0; v < n; ++v) nodes[v] = v;
    std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
        if (rating[a] != rating[b]) return rating[a] > rating[b];
        return a < b;
    });

    std::vector<EdgeId> deferred;
    std::vector<char> deferred_flag(g.handle_count(), 0);
    std::vector<EdgeId> local;
    for (NodeId v : nodes) {
        local.clear();
        for (const AdjEntry& a : g.neighbors(v)) local.push_back(a.edge);
        std::sort(local.begin(), local.end(), [&](EdgeId a, EdgeId b) {
            if (g.weight(a) != g.weight(b)) return g.weight(a) > g.weight(b);
            return a < b;
        });
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

    std::sort(deferred.begin(), deferred.end(), [&](EdgeId a, EdgeId b) {
        if (g.weight(a) != g.weight(b)) return g.weight(a) > g.weight(b);
        return a < b;
    });
    for (EdgeId e : deferred) {
        if (c.is_colored(e)) continue;
        const Color col = common_free_color(g, c, e);
        if (col != kUncolored) c.assign(g, e, col);
    }
}

namespace {

Color lowest_free(const Coloring& c, NodeId v) {
    for (Color col = 1; col <= c.num_colors(); ++col)
        if (c.is_free(v, col)) return col;
    return kUncolored;
}

// maximal fan around `center` starting at f0: every fan edge is colored, and
// its color is free at the previous fan vertex. Extension appends the first
// eligible neighbor in adjacency order.
std::vector<NodeId> build_fan(const Graph& g, const Coloring& c, NodeId center,
                              NodeId f0, std::vector<char>& in_fan) {
    std::vector<NodeId> fan{f0};
    in_fan[f0] = 1;
    for (;;) {
        const NodeId last = fan.back();
        NodeId next = center; // sentinel meaning "none"
        for (const AdjEntry& a : g.neighbors(center)) {
            if (in_fan[a.to]) continue;
            const Color col = c.color(a.edge);
            if (col == kUncolored) continue;
            if (c.is_free(last, col)) {
                next = a.to;
                break;
            }
        }
        if (next == center) break;
        fan.push_back(next);
        in_fan[next] = 1;
    }
    for (NodeId f : fan) in_fan[f] = 0;
    return fan;
}

NodeId far_vertex(const Graph& g, EdgeId e, NodeId near) {
    const auto [a, b] = g.endpoints(e);
    return a == near ? b : a;
}

// swaps colors c1 and c2 along the maximal alternating path that starts with
// the edge {from, to}, which carries c1
void invert_alternating_path(Graph& g, Coloring& c, NodeId from, NodeId to,
                             Color c1, Color c2) {
    // collect first, then recolor: occupancy lookups must see the old state
    std::vector<EdgeId> path;
    path.push_back(c.occupant(from, c1));
    NodeId at = to;
    Color expect = c2;
    for (;;) {
        const EdgeId next = c.occupant(at, expect);
        if (next == kNoEdge) break;
        path.push_back(next);
        at = far_vertex(g, next, at);
        expect = (expect == c1) ? c2 : c1;
    }
    for (EdgeId e : path) c.unassign(g, e);
    Color col = c1; // parity: first edge had c1, second c2, ...
    for (EdgeId e : path) {
        c.assign(g, e, col == c1 ? c2 : c1);
        col = (col == c1) ? c2 : c1;
    }
}

// rotation: every fan edge hands its color to its predecessor and the last
// edge receives `final_color`
void rotate_fan(Graph& g, Coloring& c, NodeId center,
                const std::vector<NodeId>& fan, std::size_t upto,
                Color final_color) {
    for (std::size_t i = 1; i <= upto; ++i) {
        const EdgeId give = g.find_handle(center, fan[i]);
        const Color col = c.color(give);
        c.unassign(g, give);
        const EdgeId take = g.find_handle(center, fan[i - 1]);
        c.assign(g, take, col);
    }
    c.assign(g, g.find_handle(center, fan[upto]), final_color);
}

// one attempt to color e from the side of `center` (other endpoint f0)
bool k_color_edge_from(Graph& g, Coloring& c, NodeId center, NodeId f0,
                       std::vector<char>& in_fan) {
    const std::vector<NodeId> fan = build_fan(g, c, center, f0, in_fan);
    const NodeId tail = fan.back();
    const Color cc = lowest_free(c, center);
    const Color d = lowest_free(c, tail);
    if (d == kUncolored) return false; // no free color at the fan tail
    if (c.is_free(center, d)) {
        rotate_fan(g, c, center, fan, fan.size() - 1, d);
        return true;
    }
    // d is taken at the center: by maximality the d-edge is a fan edge; invert
    // the cd-path through the center, after which d is free there
    const EdgeId d_edge = c.occupant(center, d);
    assert(d_edge != kNoEdge);
    const NodeId fj = far_vertex(g, d_edge, center);
    invert_alternating_path(g, c, center, fj, d, cc);
    assert(c.is_free(center, d));
    // rotate only up to the first fan vertex where d is now free
    for (std::size_t x = 0; x < fan.size(); ++x) {
        if (c.is_free(fan[x], d)) {
            rotate_fan(g, c, center, fan, x, d);
            return true;
        }
    }
    throw internal_error("no fan vertex freed for d after path inversion");
}

} // namespace

bool k_color_edge(Graph& g, Coloring& c, EdgeId e) {
    if (c.is_colored(e)) throw internal_error("k_color_edge on a colored edge");
    const auto [u, v] = g.endpoints(e);
    if (!c.has_free_color(u) || !c.has_free_color(v)) return false;
    const Color common = c.lowest_common_free(g, u, v);
    if (common != kUncolored) {
        c.assign(g, e, common);
        return true;
    }
    std::vector<char> in_fan(g.node_count(), 0);
    if (k_color_edge_from(g, c, u, v, in_fan)) return true;
    return k_color_edge_from(g, c, v, u, in_fan);
}

void kec(Graph& g, Coloring& c) {
    for (EdgeId e : edges_by_weight(g)) {
        if (!c.is_colored(e)) k_color_edge(g, c, e);
    }
}

} // namespace djm
