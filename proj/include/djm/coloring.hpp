#pragma once

#include <cstdint>
#include <vector>

#include "djm/graph.hpp"
#include "djm/types.hpp"

namespace djm {

// Partial k-coloring of the edges: each color class is a matching. Keeps a
// per-(vertex, color) occupancy table and the total colored weight in sync
// with every assignment.
class Coloring {
public:
    Coloring(const Graph& g, Color k)
        : k_(k), occupancy_(static_cast<std::size_t>(g.node_count()) * k, kNoEdge) {}

    Color num_colors() const { return k_; }

    Color color(EdgeId e) const {
        return e < color_.size() ? color_[e] : kUncolored;
    }
    bool is_colored(EdgeId e) const { return color(e) != kUncolored; }

    EdgeId occupant(NodeId v, Color c) const {
        return occupancy_[static_cast<std::size_t>(v) * k_ + (c - 1)];
    }
    bool is_free(NodeId v, Color c) const { return occupant(v, c) == kNoEdge; }

    // lowest color free at both endpoints, kUncolored if none
    Color lowest_common_free(const Graph& g, NodeId u, NodeId v) const {
        for (Color c = 1; c <= k_; ++c)
            if (is_free(u, c) && is_free(v, c)) return c;
        (void)g;
        return kUncolored;
    }

    bool has_free_color(NodeId v) const {
        for (Color c = 1; c <= k_; ++c)
            if (is_free(v, c)) return true;
        return false;
    }

    void assign(const Graph& g, EdgeId e, Color c);
    void unassign(const Graph& g, EdgeId e);

    // keeps the cached total in step when a colored edge's weight changes;
    // called by apply_update before the graph weight is overwritten
    void on_weight_change(EdgeId e, Weight old_w, Weight new_w) {
        if (is_colored(e)) colored_weight_ = colored_weight_ - old_w + new_w;
    }

    Weight colored_weight() const { return colored_weight_; }

    void reset() {
        color_.assign(color_.size(), kUncolored);
        occupancy_.assign(occupancy_.size(), kNoEdge);
        colored_weight_ = 0;
    }

    // instrumentation: number of color writes since construction
    std::uint64_t write_count() const { return writes_; }
    std::uint64_t unassign_count() const { return unassigns_; }

private:
    Color k_;
    std::vector<Color> color_;      // indexed by edge handle, grows on demand
    std::vector<EdgeId> occupancy_; // (vertex, color) -> incident edge of that color
    Weight colored_weight_ = 0;
    std::uint64_t writes_ = 0;
    std::uint64_t unassigns_ = 0;
};

// colors free at v, ascending
std::vector<Color> free_colors_at(const Graph& g, const Coloring& c, NodeId v);

// lowest color free at both endpoints of e, kUncolored if none
Color common_free_color(const Graph& g, const Coloring& c, EdgeId e);

// total weight of the edges adjacent to e that carry color col (at most one
// per endpoint by properness)
Weight colored_neighborhood_weight(const Graph& g, const Coloring& c, EdgeId e,
                                   Color col);

// applies one weight change; a deleted edge is uncolored first. Throws
// data_error on a self-loop or a negative resulting weight.
UpdateClass apply_update(Graph& g, Coloring& c, const EdgeUpdate& up);

} // namespace djm
