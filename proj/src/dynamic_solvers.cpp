#include "djm/dynamic_solvers.hpp"

#include <algorithm>

#include "djm/errors.hpp"
#include "djm/primitives.hpp"
#include "djm/static_solvers.hpp"

namespace djm {

AppliedUpdate apply_and_classify(Graph& g, Coloring& c, const EdgeUpdate& up) {
    AppliedUpdate out;
    out.edge = g.handle_for(up.u, up.v);
    out.u = std::min(up.u, up.v);
    out.v = std::max(up.u, up.v);
    out.w_old = g.weight(out.edge);
    out.color_before = c.color(out.edge);
    out.cls = apply_update(g, c, up);
    out.w_new = g.weight(out.edge);
    return out;
}

std::size_t DynGreedy::effective_beta_colors(const Coloring& c) const {
    return cfg_.deterministic ? static_cast<std::size_t>(c.num_colors())
                              : cfg_.beta;
}

std::size_t DynGreedy::effective_beta_edges(const Graph& g) const {
    return cfg_.deterministic ? g.max_degree() : cfg_.beta;
}

void DynGreedy::attempt_color(Graph& g, Coloring& c, EdgeId e, int depth) {
    max_depth_seen_ = std::max(max_depth_seen_, depth_base_ - depth);
    ++last_touched_;
    const auto [u, v] = g.endpoints(e);
    const Color free = c.lowest_common_free(g, u, v);
    if (free != kUncolored) {
        c.assign(g, e, free);
        return;
    }
    // candidate color: the one whose neighborhood is lightest, over all k
    // colors or over a random sample of beta of them
    const Color k = c.num_colors();
    Color col = kUncolored;
    Weight best = 0;
    auto consider = [&](Color cand) {
        const Weight w = colored_neighborhood_weight(g, c, e, cand);
        if (col == kUncolored || w < best) {
            col = cand;
            best = w;
        }
    };
    const std::size_t beta = effective_beta_colors(c);
    if (beta >= static_cast<std::size_t>(k)) {
        for (Color cand = 1; cand <= k; ++cand) consider(cand);
    } else {
        std::vector<std::uint32_t> picks = rng_.sample_indices(
            static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(beta));
        std::sort(picks.begin(), picks.end()); // argmin ties -> lowest color
        for (std::uint32_t p : picks) consider(static_cast<Color>(p + 1));
    }
    const SwapInResult res = swap_in(g, c, e, col);
    if (res.changed && depth > 0) {
        for (int i = 0; i < res.uncolored_count; ++i)
            attempt_color(g, c, res.uncolored[i], depth - 1);
    }
}

void DynGreedy::decrease_weight(Graph& g, Coloring& c, EdgeId e) {
    if (swap_out_sampled(g, c, e, effective_beta_edges(g), rng_)) {
        depth_base_ = 0; // the re-coloring attempt does not recurse
        attempt_color(g, c, e, 0);
    }
}

void DynGreedy::on_update(Graph& g, Coloring& c, const AppliedUpdate& up) {
    last_touched_ = 0;
    depth_base_ = cfg_.alpha;
    switch (up.cls) {
    case UpdateClass::Insertion:
        attempt_color(g, c, up.edge, cfg_.alpha);
        break;
    case UpdateClass::ChangeUp:
        if (!c.is_colored(up.edge)) attempt_color(g, c, up.edge, cfg_.alpha);
        break;
    case UpdateClass::ChangeDown:
        if (c.is_colored(up.edge)) decrease_weight(g, c, up.edge);
        break;
    case UpdateClass::Deletion:
        // apply_update already uncolored the edge; repair the hole its color
        // left in the neighborhood (swap-out semantics against weight 0)
        if (up.color_before != kUncolored)
            repair_color_hole(g, c, up.u, up.v, up.color_before,
                              effective_beta_edges(g),
                              cfg_.deterministic ? nullptr : &rng_);
        break;
    }
}

void DynKec::on_increase(Graph& g, Coloring& c, EdgeId e) {
    // lightest colored incident edge, if the endpoint has no free color
    const auto [u, v] = g.endpoints(e);
    auto blocking = [&](NodeId at) -> EdgeId {
        if (c.has_free_color(at)) return kNoEdge;
        EdgeId best = kNoEdge;
        for (const AdjEntry& a : g.neighbors(at)) {
            if (!c.is_colored(a.edge)) continue;
            if (best == kNoEdge || g.weight(a.edge) < g.weight(best) ||
                (g.weight(a.edge) == g.weight(best) && a.edge < best))
                best = a.edge;
        }
        return best;
    };
    const EdgeId block_u = blocking(u);
    const EdgeId block_v = blocking(v);

    if (block_u == kNoEdge && block_v == kNoEdge) {
        k_color_edge(g, c, e);
        return;
    }
    Weight blocked = 0;
    if (block_u != kNoEdge) blocked += g.weight(block_u);
    if (block_v != kNoEdge) blocked += g.weight(block_v);
    if (blocked >= g.weight(e)) return;

    struct Displaced {
        EdgeId edge;
        Color color;
    };
    std::vector<Displaced> displaced;
    for (EdgeId b : {block_u, block_v}) {
        if (b == kNoEdge) continue;
        displaced.push_back({b, c.color(b)});
        c.unassign(g, b);
    }
    if (!k_color_edge(g, c, e)) {
        for (const Displaced& d : displaced) c.assign(g, d.edge, d.color);
        return;
    }
    // the displaced edges may still fit elsewhere
    for (const Displaced& d : displaced) {
        const Color col = common_free_color(g, c, d.edge);
        if (col != kUncolored) c.assign(g, d.edge, col);
    }
}

void DynKec::on_decrease(Graph& g, Coloring& c, NodeId u, NodeId v) {
    // heaviest uncolored edge per endpoint, tried heaviest first
    auto heaviest_uncolored = [&](NodeId at) -> EdgeId {
        EdgeId best = kNoEdge;
        for (const AdjEntry& a : g.neighbors(at)) {
            if (c.is_colored(a.edge)) continue;
            if (best == kNoEdge || g.weight(a.edge) > g.weight(best) ||
                (g.weight(a.edge) == g.weight(best) && a.edge < best))
                best = a.edge;
        }
        return best;
    };
    EdgeId cand[2] = {heaviest_uncolored(u), heaviest_uncolored(v)};
    if (cand[0] == cand[1]) cand[1] = kNoEdge;
    if (cand[0] != kNoEdge && cand[1] != kNoEdge) {
        if (g.weight(cand[1]) > g.weight(cand[0]) ||
            (g.weight(cand[1]) == g.weight(cand[0]) && cand[1] < cand[0]))
            std::swap(cand[0], cand[1]);
    }
    for (EdgeId e : cand) {
        if (e == kNoEdge) continue;
        if (!g.present(e) || c.is_colored(e)) continue;
        on_increase(g, c, e);
    }
}

void DynKec::on_update(Graph& g, Coloring& c, const AppliedUpdate& up) {
    switch (up.cls) {
    case UpdateClass::Insertion:
        on_increase(g, c, up.edge);
        break;
    case UpdateClass::ChangeUp:
        if (!c.is_colored(up.edge)) on_increase(g, c, up.edge);
        break;
    case UpdateClass::ChangeDown:
        if (c.is_colored(up.edge)) on_decrease(g, c, up.u, up.v);
        break;
    case UpdateClass::Deletion:
        if (up.color_before != kUncolored) on_decrease(g, c, up.u, up.v);
        break;
    }
}

} // namespace djm
