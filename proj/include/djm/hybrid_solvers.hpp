#pragma once

#include <cstddef>
#include <optional>

#include "djm/coloring.hpp"
#include "djm/dynamic_solvers.hpp"
#include "djm/graph.hpp"

namespace djm {

enum class HybridMode { Dynamic, Static };

// dynamic iff the previous batch was smaller than n; the first batch (no
// estimate yet) recomputes statically
HybridMode choose_mode(std::optional<std::size_t> prev_batch_size, NodeId n);

// Per-batch switch between a dynamic subroutine and a static rebuild with
// kec. In dynamic mode every update is routed to the paired dynamic solver
// as it arrives; in static mode the updates only change the graph and the
// coloring is recomputed from scratch at the batch end.
template <typename DynSolver>
class Hybrid {
public:
    explicit Hybrid(DynSolver dyn) : dyn_(std::move(dyn)) {}

    HybridMode begin_batch(const Graph& g) {
        mode_ = choose_mode(prev_batch_size_, g.node_count());
        return mode_;
    }
    HybridMode mode() const { return mode_; }

    // returns true when the caller should hand the update to the dynamic side
    bool wants_updates() const { return mode_ == HybridMode::Dynamic; }

    void process_update(Graph& g, Coloring& c, const AppliedUpdate& up) {
        if (mode_ == HybridMode::Dynamic) dyn_.on_update(g, c, up);
    }

    void end_batch(Graph& g, Coloring& c, std::size_t batch_size);

    DynSolver& dynamic_solver() { return dyn_; }

private:
    DynSolver dyn_;
    HybridMode mode_ = HybridMode::Static;
    std::optional<std::size_t> prev_batch_size_;
};

using HybridGreedy = Hybrid<DynGreedy>;
using HybridKec = Hybrid<DynKec>;

} // namespace djm
