#pragma once

#include <vector>

#include "djm/coloring.hpp"
#include "djm/graph.hpp"

namespace djm {

// edges and nodes around one applied batch: every present edge that is
// updated or adjacent to an updated-or-deleted edge, and every node incident
// to an updated edge
struct AffectedSet {
    std::vector<EdgeId> edges; // sorted, unique
    std::vector<NodeId> nodes; // sorted, unique
};

AffectedSet collect_affected(const Graph& g, const Batch& batch);

// uncolors the affected edges and re-runs the greedy rounds over exactly that
// set; with local_swaps, swap_out only trades within the affected set so that
// untouched edges keep their colors
void batch_greedy(Graph& g, Coloring& c, const Batch& batch, bool local_swaps);

// uncolors all edges incident to nodes of updated edges and re-runs the
// node-centered pass over those nodes (same rating, threshold and deferral
// rules as the from-scratch solver)
void batch_node_centered(Graph& g, Coloring& c, const Batch& batch,
                         double threshold = 0.2);

} // namespace djm
