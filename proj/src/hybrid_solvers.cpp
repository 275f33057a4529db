#include "djm/hybrid_solvers.hpp"

#include "djm/static_solvers.hpp"

namespace djm {

HybridMode choose_mode(std::optional<std::size_t> prev_batch_size, NodeId n) {
    if (!prev_batch_size.has_value()) return HybridMode::Static;
    return *prev_batch_size < n ? HybridMode::Dynamic : HybridMode::Static;
}

template <typename DynSolver>
void Hybrid<DynSolver>::end_batch(Graph& g, Coloring& c, std::size_t batch_size) {
    if (mode_ == HybridMode::Static) {
        c.reset();
        kec(g, c);
    }
    prev_batch_size_ = batch_size;
}

template class Hybrid<DynGreedy>;
template class Hybrid<DynKec>;

} // namespace djm
