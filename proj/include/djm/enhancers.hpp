#pragma once

#include <cstdint>
#include <vector>

#include "djm/coloring.hpp"
#include "djm/dynamic_solvers.hpp"
#include "djm/graph.hpp"

namespace djm {

enum class FilterDecision { Keep, Drop };

// drops a change iff both weights are positive and the ratio stays within
// [1/t, t]; insertions and deletions always pass
FilterDecision filter_decision(double t, Weight w_old, Weight w_new);

struct PostProcessStats {
    std::uint64_t enqueues = 0;
    std::uint64_t dequeues = 0;
    std::uint64_t rechecks = 0; // worklist passes over already-processed edges
    bool duplicate_enqueue = false;
};

// Local optimization around uncolored edges: a weight-ordered queue of
// candidates is processed by coloring with a free color, or trading against a
// strictly lighter same-color neighborhood (swap_in), or leaving the edge
// alone. On top of the queue, a worklist re-checks uncolored edges whose
// same-color support was displaced after they had already been processed;
// without it the domination invariant below can leak. Each edge enters the
// priority queue at most once per run.
//
// After a run seeded with every uncolored edge, each uncolored edge e
// satisfies w[N_c(e)] >= w(e) for every color c, which makes the coloring a
// 1/2-approximation of the heaviest k disjoint matchings.
class PostProcessor {
public:
    PostProcessStats run(Graph& g, Coloring& c, const std::vector<EdgeId>& seeds);
    PostProcessStats run_all_uncolored(Graph& g, Coloring& c);

    const PostProcessStats& last_stats() const { return stats_; }

private:
    void process_edge(Graph& g, Coloring& c, EdgeId e);
    void note_uncolored(Graph& g, Coloring& c, EdgeId f, Color col);
    void check_or_requeue(const Graph& g, const Coloring& c, EdgeId e);
    void push(const Graph& g, EdgeId e);

    struct QEntry {
        Weight w;
        EdgeId e;
        bool operator<(const QEntry& o) const {
            if (w != o.w) return w < o.w;
            return e > o.e; // heap pops heaviest, ties by smaller handle
        }
    };

    std::vector<QEntry> heap_;
    std::vector<EdgeId> worklist_;
    std::vector<std::uint32_t> enqueued_;
    std::vector<std::uint32_t> dequeued_;
    std::uint32_t epoch_ = 0;
    PostProcessStats stats_;
};

// standalone batch-dynamic variant: collects the edges whose invariant an
// update may have broken and post-processes only those at the batch end
class Batch2Apx {
public:
    void observe(const AppliedUpdate& up);
    PostProcessStats end_batch(Graph& g, Coloring& c);

private:
    struct Touched {
        EdgeId edge;
        NodeId u, v;
        bool decreased_while_colored;
    };
    std::vector<Touched> touched_;
    PostProcessor pp_;
};

} // namespace djm
