#pragma once

#include <array>
#include <cstddef>

#include "djm/coloring.hpp"
#include "djm/graph.hpp"
#include "djm/rng.hpp"

namespace djm {

struct SwapInResult {
    bool changed = false;
    std::array<EdgeId, 2> uncolored{kNoEdge, kNoEdge};
    int uncolored_count = 0;
};

// Colors e with col and uncolors N_col(e) if w(e) is strictly larger than
// w[N_col(e)]; otherwise leaves everything untouched. e must be present and
// uncolored. The displaced edges are reported in endpoint order (smaller
// endpoint's side first).
SwapInResult swap_in(Graph& g, Coloring& c, EdgeId e, Color col);

// Looks for up to two non-adjacent uncolored neighbors of e for which e's
// color is free (with e itself ignored) and whose total weight is maximal;
// trades e for them iff that total strictly beats w(e). e must be colored.
bool swap_out(Graph& g, Coloring& c, EdgeId e);

// Same, but only beta uniformly sampled incident edges per endpoint enter the
// candidate search; with beta >= max degree no sampling happens and the
// result equals swap_out for any rng.
bool swap_out_sampled(Graph& g, Coloring& c, EdgeId e, std::size_t beta, Rng& rng);

// Same as swap_out, but candidates are limited to edges with allowed[e] != 0.
// The batch solvers use this to keep rewrites inside the affected set.
bool swap_out_within(Graph& g, Coloring& c, EdgeId e,
                     const std::vector<char>& allowed);

// Swap-out semantics applied to the hole a deleted colored edge {u,v} leaves
// behind: colors the best candidate pair with col if any candidate exists.
// Used by the dynamic solvers' deletion path.
bool repair_color_hole(Graph& g, Coloring& c, NodeId u, NodeId v, Color col,
                       std::size_t beta, Rng* rng);

} // namespace djm
