#pragma once

#include <cstdint>
#include <limits>

namespace djm {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Weight = std::uint64_t; // demand units; 0 means the edge is absent
using Delta  = std::int64_t;  // signed weight change
using Color  = std::int32_t;  // 1..k; kUncolored when unassigned

inline constexpr Color  kUncolored = 0;
inline constexpr EdgeId kNoEdge    = std::numeric_limits<EdgeId>::max();

// canonical key of an undirected edge: (min,max) packed into 64 bits
inline std::uint64_t edge_key(NodeId u, NodeId v) {
    if (u > v) { NodeId t = u; u = v; v = t; }
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

} // namespace djm
