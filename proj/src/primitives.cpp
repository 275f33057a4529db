#include "djm/primitives.hpp"

#include <algorithm>

#include "djm/errors.hpp"

namespace djm {

namespace {

// candidate edges around one endpoint of a (real or just-deleted) edge:
// uncolored, not the excluded edge, and with col free at the far endpoint
void collect_candidates(const Graph& g, const Coloring& c, NodeId at, Color col,
                        EdgeId exclude, std::size_t beta, Rng* rng,
                        std::vector<EdgeId>& out,
                        const std::vector<char>* allowed = nullptr) {
    out.clear();
    const auto adj = g.neighbors(at);
    auto eligible = [&](const AdjEntry& a) {
        if (allowed && !(*allowed)[a.edge]) return false;
        return a.edge != exclude && !c.is_colored(a.edge) && c.is_free(a.to, col);
    };
    if (rng != nullptr && adj.size() > beta) {
        // subset first, then filter: light edges may crowd out usable ones,
        // which is the point of the sampled variant
        for (std::uint32_t idx :
             rng->sample_indices(static_cast<std::uint32_t>(adj.size()),
                                 static_cast<std::uint32_t>(beta))) {
            if (eligible(adj[idx])) out.push_back(adj[idx].edge);
        }
    } else {
        for (const AdjEntry& a : adj)
            if (eligible(a)) out.push_back(a.edge);
    }
    std::sort(out.begin(), out.end(), [&](EdgeId a, EdgeId b) {
        if (g.weight(a) != g.weight(b)) return g.weight(a) > g.weight(b);
        return a < b;
    });
}

struct BestPair {
    Weight total = 0;
    EdgeId first = kNoEdge;
    EdgeId second = kNoEdge;
};

NodeId far_end(const Graph& g, EdgeId e, NodeId near) {
    const auto [u, v] = g.endpoints(e);
    return u == near ? v : u;
}

// maximum-weight single edge or non-adjacent pair, one candidate per side;
// ties broken by smaller edge handles for reproducible runs
BestPair best_swap_pair(const Graph& g, const std::vector<EdgeId>& cand_u,
                        const std::vector<EdgeId>& cand_v, NodeId u, NodeId v) {
    BestPair best;
    auto better = [&](Weight total, EdgeId a, EdgeId b) {
        if (total != best.total) return total > best.total;
        const EdgeId lo = std::min(a, b), hi = std::max(a, b);
        const EdgeId blo = std::min(best.first, best.second);
        const EdgeId bhi = std::max(best.first, best.second);
        return lo < blo || (lo == blo && hi < bhi);
    };
    auto consider = [&](EdgeId a, EdgeId b) {
        const Weight total = g.weight(a) + (b == kNoEdge ? 0 : g.weight(b));
        if (best.first == kNoEdge || better(total, a, b)) {
            best.total = total;
            best.first = a;
            best.second = b;
        }
    };
    for (EdgeId a : cand_u) consider(a, kNoEdge);
    for (EdgeId b : cand_v) consider(b, kNoEdge);
    for (EdgeId a : cand_u) {
        for (EdgeId b : cand_v) {
            if (far_end(g, a, u) == far_end(g, b, v)) continue; // shares a vertex
            consider(a, b);
        }
    }
    return best;
}

bool swap_out_impl(Graph& g, Coloring& c, EdgeId e, std::size_t beta, Rng* rng,
                   const std::vector<char>* allowed = nullptr) {
    const Color col = c.color(e);
    if (col == kUncolored) throw internal_error("swap_out of an uncolored edge");
    const auto [u, v] = g.endpoints(e);
    std::vector<EdgeId> cand_u, cand_v;
    collect_candidates(g, c, u, col, e, beta, rng, cand_u, allowed);
    collect_candidates(g, c, v, col, e, beta, rng, cand_v, allowed);
    const BestPair best = best_swap_pair(g, cand_u, cand_v, u, v);
    if (best.first == kNoEdge || best.total <= g.weight(e)) return false;
    c.unassign(g, e);
    c.assign(g, best.first, col);
    if (best.second != kNoEdge) c.assign(g, best.second, col);
    return true;
}

} // namespace

SwapInResult swap_in(Graph& g, Coloring& c, EdgeId e, Color col) {
    if (c.is_colored(e)) throw internal_error("swap_in on a colored edge");
    if (!g.present(e)) throw internal_error("swap_in on an absent edge");
    const auto [u, v] = g.endpoints(e);
    SwapInResult res;
    const EdgeId at_u = c.occupant(u, col);
    const EdgeId at_v = c.occupant(v, col);
    Weight blocking = 0;
    if (at_u != kNoEdge) blocking += g.weight(at_u);
    if (at_v != kNoEdge && at_v != at_u) blocking += g.weight(at_v);
    if (g.weight(e) <= blocking) return res;
    if (at_u != kNoEdge) {
        c.unassign(g, at_u);
        res.uncolored[res.uncolored_count++] = at_u;
    }
    if (at_v != kNoEdge && at_v != at_u) {
        c.unassign(g, at_v);
        res.uncolored[res.uncolored_count++] = at_v;
    }
    c.assign(g, e, col);
    res.changed = true;
    return res;
}

bool swap_out(Graph& g, Coloring& c, EdgeId e) {
    return swap_out_impl(g, c, e, 0, nullptr);
}

bool swap_out_sampled(Graph& g, Coloring& c, EdgeId e, std::size_t beta, Rng& rng) {
    return swap_out_impl(g, c, e, beta, &rng);
}

bool swap_out_within(Graph& g, Coloring& c, EdgeId e,
                     const std::vector<char>& allowed) {
    return swap_out_impl(g, c, e, 0, nullptr, &allowed);
}

bool repair_color_hole(Graph& g, Coloring& c, NodeId u, NodeId v, Color col,
                       std::size_t beta, Rng* rng) {
    std::vector<EdgeId> cand_u, cand_v;
    collect_candidates(g, c, u, col, kNoEdge, beta, rng, cand_u);
    collect_candidates(g, c, v, col, kNoEdge, beta, rng, cand_v);
    // the hole's own endpoints must still be free for col
    if (!c.is_free(u, col)) cand_u.clear();
    if (!c.is_free(v, col)) cand_v.clear();
    const BestPair best = best_swap_pair(g, cand_u, cand_v, u, v);
    if (best.first == kNoEdge) return false; // total > 0 is implied: weights >= 1
    c.assign(g, best.first, col);
    if (best.second != kNoEdge) c.assign(g, best.second, col);
    return true;
}

} // namespace djm
