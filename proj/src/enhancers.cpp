#include "djm/enhancers.hpp"

#include <algorithm>

#include "djm/errors.hpp"
#include "djm/primitives.hpp"

namespace djm {

FilterDecision filter_decision(double t, Weight w_old, Weight w_new) {
    if (t < 1.0) throw usage_error("filter threshold must be >= 1");
    if (w_old == 0 || w_new == 0) return FilterDecision::Keep;
    const long double lo = static_cast<long double>(w_old);
    const long double ln = static_cast<long double>(w_new);
    const long double lt = static_cast<long double>(t);
    return (ln <= lt * lo && lo <= lt * ln) ? FilterDecision::Drop
                                            : FilterDecision::Keep;
}

void PostProcessor::push(const Graph& g, EdgeId e) {
    heap_.push_back(QEntry{g.weight(e), e});
    std::push_heap(heap_.begin(), heap_.end());
    if (enqueued_[e] == epoch_) stats_.duplicate_enqueue = true;
    enqueued_[e] = epoch_;
    ++stats_.enqueues;
}

void PostProcessor::check_or_requeue(const Graph& g, const Coloring& c, EdgeId e) {
    if (c.is_colored(e)) return;
    if (enqueued_[e] != epoch_) {
        push(g, e);
    } else if (dequeued_[e] == epoch_) {
        // already processed once; a displacement may have broken its
        // invariant, so it goes on the recheck worklist instead of the queue
        worklist_.push_back(e);
    }
    // else: still waiting in the queue, nothing to do
}

void PostProcessor::note_uncolored(Graph& g, Coloring& c, EdgeId f, Color col) {
    check_or_requeue(g, c, f);
    // uncoloring f shrinks N_col of f's uncolored neighbors; any of them whose
    // domination in col just broke needs another look
    const auto [fu, fv] = g.endpoints(f);
    for (NodeId at : {fu, fv}) {
        for (const AdjEntry& a : g.neighbors(at)) {
            const EdgeId h = a.edge;
            if (h == f || c.is_colored(h)) continue;
            if (colored_neighborhood_weight(g, c, h, col) < g.weight(h))
                check_or_requeue(g, c, h);
        }
    }
}

void PostProcessor::process_edge(Graph& g, Coloring& c, EdgeId e) {
    if (c.is_colored(e) || !g.present(e)) return;
    const Color free = common_free_color(g, c, e);
    if (free != kUncolored) {
        c.assign(g, e, free);
        return;
    }
    for (Color col = 1; col <= c.num_colors(); ++col) {
        if (colored_neighborhood_weight(g, c, e, col) >= g.weight(e)) continue;
        const SwapInResult res = swap_in(g, c, e, col);
        if (!res.changed)
            throw internal_error("swap_in failed despite a violated invariant");
        for (int i = 0; i < res.uncolored_count; ++i)
            note_uncolored(g, c, res.uncolored[i], col);
        return;
    }
    // invariant satisfied in every color: e stays uncolored
}

PostProcessStats PostProcessor::run(Graph& g, Coloring& c,
                                    const std::vector<EdgeId>& seeds) {
    ++epoch_;
    stats_ = {};
    heap_.clear();
    worklist_.clear();
    enqueued_.resize(g.handle_count(), 0);
    dequeued_.resize(g.handle_count(), 0);

    for (EdgeId e : seeds) {
        if (!g.present(e) || c.is_colored(e)) continue;
        if (enqueued_[e] != epoch_) push(g, e);
    }
    for (;;) {
        if (!worklist_.empty()) {
            const EdgeId e = worklist_.back();
            worklist_.pop_back();
            ++stats_.rechecks;
            process_edge(g, c, e);
            continue;
        }
        if (heap_.empty()) break;
        std::pop_heap(heap_.begin(), heap_.end());
        const EdgeId e = heap_.back().e;
        heap_.pop_back();
        dequeued_[e] = epoch_;
        ++stats_.dequeues;
        process_edge(g, c, e);
    }
    return stats_;
}

PostProcessStats PostProcessor::run_all_uncolored(Graph& g, Coloring& c) {
    std::vector<EdgeId> seeds;
    for (EdgeId e : g.present_edges())
        if (!c.is_colored(e)) seeds.push_back(e);
    return run(g, c, seeds);
}

void Batch2Apx::observe(const AppliedUpdate& up) {
    const bool decrease =
        up.cls == UpdateClass::ChangeDown || up.cls == UpdateClass::Deletion;
    touched_.push_back(Touched{up.edge, up.u, up.v,
                               decrease && up.color_before != kUncolored});
}

PostProcessStats Batch2Apx::end_batch(Graph& g, Coloring& c) {
    std::vector<EdgeId> seeds;
    std::vector<char> seen(g.handle_count(), 0);
    auto add = [&](EdgeId e) {
        if (!seen[e] && g.present(e) && !c.is_colored(e)) {
            seen[e] = 1;
            seeds.push_back(e);
        }
    };
    for (const Touched& t : touched_) {
        add(t.edge);
        if (!t.decreased_while_colored) continue;
        // the support this edge gave its uncolored neighbors shrank
        for (NodeId at : {t.u, t.v})
            for (const AdjEntry& a : g.neighbors(at)) add(a.edge);
    }
    touched_.clear();
    return pp_.run(g, c, seeds);
}

} // namespace djm
