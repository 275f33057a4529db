#include "djm/coloring.hpp"

#include "djm/errors.hpp"

namespace djm {

void Coloring::assign(const Graph& g, EdgeId e, Color c) {
    if (c < 1 || c > k_) throw internal_error("color out of range");
    if (e >= color_.size()) color_.resize(g.handle_count(), kUncolored);
    if (color_[e] != kUncolored) throw internal_error("assign to a colored edge");
    if (!g.present(e)) throw internal_error("assign to an absent edge");
    const auto [u, v] = g.endpoints(e);
    EdgeId& slot_u = occupancy_[static_cast<std::size_t>(u) * k_ + (c - 1)];
    EdgeId& slot_v = occupancy_[static_cast<std::size_t>(v) * k_ + (c - 1)];
    if (slot_u != kNoEdge || slot_v != kNoEdge)
        throw internal_error("color not free at an endpoint");
    slot_u = e;
    slot_v = e;
    color_[e] = c;
    colored_weight_ += g.weight(e);
    ++writes_;
}

void Coloring::unassign(const Graph& g, EdgeId e) {
    const Color c = color(e);
    if (c == kUncolored) throw internal_error("unassign of an uncolored edge");
    const auto [u, v] = g.endpoints(e);
    occupancy_[static_cast<std::size_t>(u) * k_ + (c - 1)] = kNoEdge;
    occupancy_[static_cast<std::size_t>(v) * k_ + (c - 1)] = kNoEdge;
    color_[e] = kUncolored;
    colored_weight_ -= g.weight(e);
    ++writes_;
    ++unassigns_;
}

std::vector<Color> free_colors_at(const Graph& g, const Coloring& c, NodeId v) {
    (void)g;
    std::vector<Color> out;
    for (Color col = 1; col <= c.num_colors(); ++col)
        if (c.is_free(v, col)) out.push_back(col);
    return out;
}

Color common_free_color(const Graph& g, const Coloring& c, EdgeId e) {
    const auto [u, v] = g.endpoints(e);
    return c.lowest_common_free(g, u, v);
}

Weight colored_neighborhood_weight(const Graph& g, const Coloring& c, EdgeId e,
                                   Color col) {
    const auto [u, v] = g.endpoints(e);
    Weight total = 0;
    const EdgeId at_u = c.occupant(u, col);
    if (at_u != kNoEdge && at_u != e) total += g.weight(at_u);
    const EdgeId at_v = c.occupant(v, col);
    if (at_v != kNoEdge && at_v != e) total += g.weight(at_v);
    return total;
}

UpdateClass apply_update(Graph& g, Coloring& c, const EdgeUpdate& up) {
    if (up.u == up.v) throw data_error("self-loop update");
    if (up.delta == 0) throw data_error("zero-delta update");
    const EdgeId e = g.handle_for(up.u, up.v);
    const Weight old = g.weight(e);
    if (up.delta < 0 && static_cast<Weight>(-up.delta) > old)
        throw data_error("update drives edge weight below zero");
    const Weight now = up.delta > 0 ? old + static_cast<Weight>(up.delta)
                                    : old - static_cast<Weight>(-up.delta);

    // a deleted edge is uncolored first; otherwise the cached total follows
    if (c.is_colored(e)) {
        if (now == 0)
            c.unassign(g, e);
        else
            c.on_weight_change(e, old, now);
    }
    g.set_weight(e, now);

    if (old == 0) return UpdateClass::Insertion;
    if (now == 0) return UpdateClass::Deletion;
    return now > old ? UpdateClass::ChangeUp : UpdateClass::ChangeDown;
}

} // namespace djm
