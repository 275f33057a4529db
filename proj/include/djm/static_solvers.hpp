#pragma once

#include <vector>

#include "djm/coloring.hpp"
#include "djm/graph.hpp"

namespace djm {

// present edges sorted by non-increasing weight, ties by handle
std::vector<EdgeId> edges_by_weight(const Graph& g);

// k rounds of weight-greedy coloring; with local_swaps, swap_out runs on
// every edge of the round's color before the next round starts
void greedy_it(Graph& g, Coloring& c, bool local_swaps);

// node-by-node greedy with deferral of edges lighter than threshold * W;
// deferred edges are colored in one final weight-ordered pass
void node_centered(Graph& g, Coloring& c, double threshold = 0.2);

// weight-ordered edge coloring built on fan rotations and alternating-path
// inversions; never uncolors an already colored edge
void kec(Graph& g, Coloring& c);

// colors one present, uncolored edge if possible; returns success. Exposed
// for the dynamic variant.
bool k_color_edge(Graph& g, Coloring& c, EdgeId e);

} // namespace djm
