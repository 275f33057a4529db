#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "djm/graph.hpp"
#include "djm/rng.hpp"

namespace djm {

// replayable sequence of coalesced update batches over n nodes
struct InstanceStream {
    NodeId n = 0;
    std::vector<Batch> batches;

    bool operator==(const InstanceStream&) const = default;
};

// text format:
//   djm 1 <n>
//   #batch
//   <u> <v> <w_new>      (absolute new weight, 0 <= u < v < n)
// absolute weights become deltas on load; same-edge lines coalesce, the last
// absolute weight winning. Unknown lines fail hard with their line number.
InstanceStream read_djm(std::istream& in);
InstanceStream read_djm_file(const std::string& path);
void write_djm(const InstanceStream& s, std::ostream& out);
void write_djm_file(const InstanceStream& s, const std::string& path);

enum class TraceFormat { Timestamp, Sequence };

// Rows are (timestamp|seq, src, dst[, size]) separated by whitespace or
// commas. Groups of x distinct timestamps form one batch; per node pair the
// sizes (Timestamp) or the row count (Sequence) within the group become the
// pair's new absolute weight, and pairs active before but silent in the group
// are deleted. Nodes are renumbered densely in order of first appearance.
InstanceStream ingest_trace(std::istream& in, std::uint64_t group,
                            TraceFormat format);
InstanceStream ingest_trace_file(const std::string& path, std::uint64_t group,
                                 TraceFormat format);

struct SplitParams {
    std::uint32_t sub_batches = 5;  // y
    Weight cap = 100000;            // z
    std::uint64_t seed = 1;
};

// Spreads every updated weight w over ceil(w/z) consecutive sub-batches
// chosen uniformly at random among the y sub-batches of its original batch:
// the cap during all but the last of them, the remainder in the last, and a
// zeroing right after the window (deferred into the next original batch's
// first sub-batch when the window ends the batch, and omitted entirely when
// the edge is updated right there). At most 3 emitted updates per original
// update. Requires max weight <= y*z.
InstanceStream split_instance(const InstanceStream& in, const SplitParams& p);

// emitted updates for one split window; exposed for deterministic tests
struct SplitWindow {
    std::uint32_t set_at;              // sub-batch of the initial assignment
    Weight set_to;                     // cap, or w itself when w <= cap
    std::int64_t reduce_at = -1;       // sub-batch of the remainder, -1 if none
    Weight reduce_to = 0;
    std::int64_t zero_at = -1;         // sub-batch after the window, -1 if past the batch
};
SplitWindow make_split_window(Weight w, Weight cap, std::uint32_t y,
                              std::uint32_t window_start);

enum class RmatModel { B, G, Er };

struct RmatParams {
    std::uint32_t log_nodes = 8;     // n = 2^log_nodes
    RmatModel model = RmatModel::B;
    double fraction = 0.1;           // edges updated per batch, relative to m0
    double del_prob = 0.1;           // deletion probability for present edges
    std::uint32_t update_batches = 30;
    std::uint32_t density = 8;       // target edge count = density * n
    double weight_mean = 50000;      // exponential mean, truncated to the range
    Weight weight_max = 500000;
    std::uint64_t seed = 1;
};

// batch 0 inserts a static RMAT graph; each later batch redraws or deletes a
// fixed fraction of the original edge slots
InstanceStream gen_rmat_dynamic(const RmatParams& p);

} // namespace djm
