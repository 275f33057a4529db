#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "djm/coloring.hpp"
#include "djm/graph.hpp"

namespace djm {

struct BruteForceResult {
    Weight weight = 0;
    // witness: (edge handle, color) pairs of one optimal coloring
    std::vector<std::pair<EdgeId, Color>> witness;
};

// exact maximum over all proper partial k-colorings, by branch and bound;
// refuses graphs with more than `max_edges` present edges
BruteForceResult brute_force_opt(const Graph& g, Color k,
                                 std::size_t max_edges = 20);

// second enumerator with a different search order; used to cross-check the
// oracle itself
Weight brute_force_opt_alt(const Graph& g, Color k, std::size_t max_edges = 20);

struct ValidationReport {
    bool ok = true;
    std::string message;
};

// checks properness, colored-implies-present, occupancy consistency, the
// cached colored weight, and the graph's cached m / max degree / max weight
ValidationReport validate(const Graph& g, const Coloring& c);

// frozen colored-edge map at a batch boundary, keyed by node pair so that
// deleted edges compare as uncolored afterwards
class ColoringSnapshot {
public:
    ColoringSnapshot() = default;
    ColoringSnapshot(const Graph& g, const Coloring& c);

    Color color_of_key(std::uint64_t key) const;
    const std::vector<std::pair<std::uint64_t, Color>>& entries() const {
        return entries_;
    }

private:
    std::vector<std::pair<std::uint64_t, Color>> entries_; // sorted by key
};

enum class RecourseScope { All, Touched };

// number of edge keys whose color differs between the snapshots; Touched
// restricts the count to the given batch keys
std::size_t recourse(const ColoringSnapshot& before, const ColoringSnapshot& after,
                     RecourseScope scope,
                     const std::vector<std::uint64_t>& touched_keys = {});

} // namespace djm
