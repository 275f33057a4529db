#pragma once

#include <cstdint>
#include <vector>

#include "djm/coloring.hpp"
#include "djm/graph.hpp"
#include "djm/rng.hpp"

namespace djm {

// state of one update after it has been applied to the graph
struct AppliedUpdate {
    EdgeId edge;
    NodeId u, v;
    Weight w_old, w_new;
    Color color_before; // color the edge had before a deletion uncolored it
    UpdateClass cls;
};

// applies the update and captures everything the per-update solvers need
AppliedUpdate apply_and_classify(Graph& g, Coloring& c, const EdgeUpdate& up);

struct DynGreedyConfig {
    int alpha = 1;            // recursion depth for re-coloring attempts
    std::size_t beta = 1;     // sample size; ignored when deterministic
    bool deterministic = false; // treat beta as max{k, max degree}
};

// per-update greedy maintenance built on swap_in / swap_out
class DynGreedy {
public:
    DynGreedy(DynGreedyConfig cfg, std::uint64_t seed)
        : cfg_(cfg), rng_(seed) {}

    void on_update(Graph& g, Coloring& c, const AppliedUpdate& up);

    // instrumentation for the work/recourse contracts
    int max_depth_seen() const { return max_depth_seen_; }
    std::uint64_t last_touched_edges() const { return last_touched_; }

    Rng& rng() { return rng_; }

private:
    void attempt_color(Graph& g, Coloring& c, EdgeId e, int depth);
    void decrease_weight(Graph& g, Coloring& c, EdgeId e);
    std::size_t effective_beta_colors(const Coloring& c) const;
    std::size_t effective_beta_edges(const Graph& g) const;

    DynGreedyConfig cfg_;
    Rng rng_;
    int max_depth_seen_ = 0;
    int depth_base_ = 0;
    std::uint64_t last_touched_ = 0;
};

// per-update maintenance around k_color_edge
class DynKec {
public:
    void on_update(Graph& g, Coloring& c, const AppliedUpdate& up);

private:
    void on_increase(Graph& g, Coloring& c, EdgeId e);
    void on_decrease(Graph& g, Coloring& c, NodeId u, NodeId v);
};

} // namespace djm
