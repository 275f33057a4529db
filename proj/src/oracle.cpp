#include "djm/oracle.hpp"

#include <algorithm>

#include "djm/errors.hpp"

namespace djm {

namespace {

struct SearchState {
    const Graph* g;
    Color k;
    std::vector<EdgeId> edges;       // fixed processing order
    std::vector<Weight> suffix;      // suffix[i] = total weight of edges[i..]
    std::vector<std::uint64_t> used; // per-vertex bitmask of taken colors
    Weight best = 0;
    std::vector<Color> chosen;
    std::vector<Color> best_chosen;
    bool keep_witness = false;
    bool colors_descending = false;

    void run(std::size_t i, Weight current) {
        if (i == edges.size()) {
            if (current > best) {
                best = current;
                if (keep_witness) best_chosen = chosen;
            }
            return;
        }
        if (current + suffix[i] <= best) return; // cannot beat the incumbent
        const EdgeId e = edges[i];
        const auto [u, v] = g->endpoints(e);
        const std::uint64_t blocked = used[u] | used[v];
        for (Color step = 1; step <= k; ++step) {
            const Color c = colors_descending ? k - step + 1 : step;
            const std::uint64_t bit = 1ULL << (c - 1);
            if (blocked & bit) continue;
            used[u] |= bit;
            used[v] |= bit;
            if (keep_witness) chosen[i] = c;
            run(i + 1, current + g->weight(e));
            used[u] &= ~bit;
            used[v] &= ~bit;
        }
        if (keep_witness) chosen[i] = kUncolored;
        run(i + 1, current); // leave e uncolored
    }
};

SearchState make_state(const Graph& g, Color k, std::size_t max_edges,
                       bool ascending_weights) {
    SearchState s;
    s.g = &g;
    s.k = k;
    s.edges = g.present_edges();
    if (s.edges.size() > max_edges)
        throw data_error("graph too large for exhaustive search");
    std::sort(s.edges.begin(), s.edges.end(), [&](EdgeId a, EdgeId b) {
        if (g.weight(a) != g.weight(b))
            return ascending_weights ? g.weight(a) < g.weight(b)
                                     : g.weight(a) > g.weight(b);
        return a < b;
    });
    s.suffix.assign(s.edges.size() + 1, 0);
    for (std::size_t i = s.edges.size(); i-- > 0;)
        s.suffix[i] = s.suffix[i + 1] + g.weight(s.edges[i]);
    s.used.assign(g.node_count(), 0);
    s.chosen.assign(s.edges.size(), kUncolored);
    return s;
}

} // namespace

BruteForceResult brute_force_opt(const Graph& g, Color k, std::size_t max_edges) {
    if (k < 1 || k > 64) throw data_error("k out of supported range");
    SearchState s = make_state(g, k, max_edges, /*ascending_weights=*/false);
    s.keep_witness = true;
    s.best_chosen = s.chosen;
    s.run(0, 0);
    BruteForceResult out;
    out.weight = s.best;
    for (std::size_t i = 0; i < s.edges.size(); ++i)
        if (s.best_chosen[i] != kUncolored)
            out.witness.emplace_back(s.edges[i], s.best_chosen[i]);
    return out;
}

Weight brute_force_opt_alt(const Graph& g, Color k, std::size_t max_edges) {
    if (k < 1 || k > 64) throw data_error("k out of supported range");
    SearchState s = make_state(g, k, max_edges, /*ascending_weights=*/true);
    s.colors_descending = true;
    s.run(0, 0);
    return s.best;
}

ValidationReport validate(const Graph& g, const Coloring& c) {
    auto fail = [](std::string msg) {
        return ValidationReport{false, std::move(msg)};
    };
    const Color k = c.num_colors();

    // recount present edges, degrees and weights from the adjacency lists
    std::size_t m = 0;
    Weight w_max = 0;
    std::size_t deg_max = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        deg_max = std::max(deg_max, g.degree(v));
        for (const AdjEntry& a : g.neighbors(v)) {
            if (a.to == v) return fail("self-loop in adjacency");
            const auto [eu, ev] = g.endpoints(a.edge);
            if ((eu != v && ev != v) || (a.to != eu && a.to != ev))
                return fail("adjacency entry disagrees with edge record");
            if (g.weight(a.edge) == 0) return fail("absent edge in adjacency");
            if (v < a.to) {
                ++m;
                w_max = std::max(w_max, g.weight(a.edge));
            }
        }
    }
    if (m != g.present_edge_count()) return fail("cached edge count is stale");
    if (w_max != g.max_weight()) return fail("cached max weight is stale");
    if (deg_max != g.max_degree()) return fail("cached max degree is stale");

    // colored edges must be present; occupancy must mirror the color map
    Weight colored_total = 0;
    for (EdgeId e = 0; e < g.handle_count(); ++e) {
        const Color col = c.color(e);
        if (col == kUncolored) continue;
        if (col < 1 || col > k) return fail("color out of range");
        if (!g.present(e)) return fail("colored edge is absent");
        colored_total += g.weight(e);
        const auto [u, v] = g.endpoints(e);
        if (c.occupant(u, col) != e || c.occupant(v, col) != e)
            return fail("occupancy does not point back to the colored edge");
    }
    if (colored_total != c.colored_weight())
        return fail("cached colored weight is stale");

    // properness: per vertex and color at most one incident edge, and the
    // occupancy table holds exactly that edge
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (Color col = 1; col <= k; ++col) {
            EdgeId seen = kNoEdge;
            for (const AdjEntry& a : g.neighbors(v)) {
                if (c.color(a.edge) != col) continue;
                if (seen != kNoEdge)
                    return fail("two edges of color " + std::to_string(col) +
                                " at vertex " + std::to_string(v));
                seen = a.edge;
            }
            if (c.occupant(v, col) != seen)
                return fail("occupancy entry is stale at vertex " +
                            std::to_string(v));
        }
    }
    return {};
}

ColoringSnapshot::ColoringSnapshot(const Graph& g, const Coloring& c) {
    for (EdgeId e = 0; e < g.handle_count(); ++e) {
        const Color col = c.color(e);
        if (col == kUncolored) continue;
        const auto [u, v] = g.endpoints(e);
        entries_.emplace_back(edge_key(u, v), col);
    }
    std::sort(entries_.begin(), entries_.end());
}

Color ColoringSnapshot::color_of_key(std::uint64_t key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(),
                               std::make_pair(key, kUncolored));
    if (it != entries_.end() && it->first == key) return it->second;
    return kUncolored;
}

std::size_t recourse(const ColoringSnapshot& before, const ColoringSnapshot& after,
                     RecourseScope scope,
                     const std::vector<std::uint64_t>& touched_keys) {
    if (scope == RecourseScope::Touched) {
        std::size_t count = 0;
        for (std::uint64_t key : touched_keys)
            if (before.color_of_key(key) != after.color_of_key(key)) ++count;
        return count;
    }
    // merge the two sorted colored-edge maps; missing key = uncolored
    std::size_t count = 0;
    const auto& a = before.entries();
    const auto& b = after.entries();
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            ++count; // colored before, uncolored/absent after
            ++i;
        } else if (i == a.size() || b[j].first < a[i].first) {
            ++count; // uncolored before, colored after
            ++j;
        } else {
            if (a[i].second != b[j].second) ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

} // namespace djm
