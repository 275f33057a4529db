#include "djm/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "djm/errors.hpp"

namespace djm {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw data_error("line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(const std::string& tok, std::size_t line) {
    std::uint64_t value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        parse_fail(line, "expected a non-negative integer, got '" + tok + "'");
    return value;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ' ' || ch == '\t' || ch == ',' || ch == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

} // namespace

InstanceStream read_djm(std::istream& in) {
    InstanceStream s;
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw data_error("empty instance file");
    ++lineno;
    {
        const auto tok = tokenize(line);
        if (tok.size() != 3 || tok[0] != "djm" || tok[1] != "1")
            parse_fail(lineno, "expected header 'djm 1 <n>'");
        const std::uint64_t n = parse_u64(tok[2], lineno);
        if (n == 0 || n > (1ULL << 31)) parse_fail(lineno, "node count out of range");
        s.n = static_cast<NodeId>(n);
    }

    std::unordered_map<std::uint64_t, Weight> weight; // replay state
    std::vector<EdgeUpdate> raw;
    bool in_batch = false;
    auto close_batch = [&]() {
        if (!in_batch) return;
        // deltas of one edge within a batch sum to "last absolute wins"
        s.batches.push_back(coalesce_batch(raw));
        for (const EdgeUpdate& up : s.batches.back().updates) {
            Weight& w = weight[edge_key(up.u, up.v)];
            w = up.delta > 0 ? w + static_cast<Weight>(up.delta)
                             : w - static_cast<Weight>(-up.delta);
        }
        raw.clear();
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (line == "#batch") {
            close_batch();
            in_batch = true;
            continue;
        }
        if (line.empty()) parse_fail(lineno, "blank line");
        const auto tok = tokenize(line);
        if (tok.size() != 3) parse_fail(lineno, "expected '<u> <v> <w>'");
        const std::uint64_t u = parse_u64(tok[0], lineno);
        const std::uint64_t v = parse_u64(tok[1], lineno);
        const Weight w_new = parse_u64(tok[2], lineno);
        if (!(u < v)) parse_fail(lineno, "endpoints must satisfy u < v");
        if (v >= s.n) parse_fail(lineno, "node id exceeds the node count");
        if (!in_batch) parse_fail(lineno, "update before the first #batch");
        // absolute weight to delta against the running replay state; a
        // repeated edge in one batch is measured against its prior line
        std::uint64_t key = edge_key(static_cast<NodeId>(u), static_cast<NodeId>(v));
        Weight base = weight.count(key) ? weight[key] : 0;
        for (const EdgeUpdate& p : raw)
            if (edge_key(p.u, p.v) == key)
                base = p.delta > 0 ? base + static_cast<Weight>(p.delta)
                                   : base - static_cast<Weight>(-p.delta);
        const Delta delta = static_cast<Delta>(w_new) - static_cast<Delta>(base);
        if (delta != 0)
            raw.push_back(EdgeUpdate{static_cast<NodeId>(u),
                                     static_cast<NodeId>(v), delta});
    }
    close_batch();
    return s;
}

InstanceStream read_djm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    return read_djm(in);
}

void write_djm(const InstanceStream& s, std::ostream& out) {
    out << "djm 1 " << s.n << "\n";
    std::unordered_map<std::uint64_t, Weight> weight;
    for (const Batch& b : s.batches) {
        out << "#batch\n";
        for (const EdgeUpdate& up : b.updates) {
            Weight& w = weight[edge_key(up.u, up.v)];
            w = up.delta > 0 ? w + static_cast<Weight>(up.delta)
                             : w - static_cast<Weight>(-up.delta);
            out << up.u << ' ' << up.v << ' ' << w << "\n";
        }
    }
}

void write_djm_file(const InstanceStream& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    write_djm(s, out);
}

InstanceStream ingest_trace(std::istream& in, std::uint64_t group,
                            TraceFormat format) {
    if (group == 0) throw usage_error("group size must be positive");
    std::unordered_map<std::string, NodeId> node_id;
    auto intern = [&](const std::string& name) {
        auto it = node_id.find(name);
        if (it != node_id.end()) return it->second;
        const NodeId id = static_cast<NodeId>(node_id.size());
        node_id.emplace(name, id);
        return id;
    };

    struct PendingBatch {
        // first-appearance order of pairs plus accumulated weight
        std::vector<std::uint64_t> order;
        std::unordered_map<std::uint64_t, Weight> weight;
    };
    std::vector<PendingBatch> groups;
    PendingBatch current;
    std::uint64_t stamps_in_group = 0;
    bool have_last_stamp = false;
    std::uint64_t last_stamp = 0;
    std::size_t skipped_self = 0;

    auto flush_group = [&]() {
        if (stamps_in_group == 0) return;
        groups.push_back(std::move(current));
        current = {};
        stamps_in_group = 0;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto tok = tokenize(line);
        const std::size_t want = format == TraceFormat::Timestamp ? 4 : 3;
        if (tok.size() < want)
            parse_fail(lineno, "expected (timestamp, src, dst" +
                                   std::string(format == TraceFormat::Timestamp
                                                   ? ", size)"
                                                   : ")"));
        const std::uint64_t stamp = parse_u64(tok[0], lineno);
        if (!have_last_stamp || stamp != last_stamp) {
            if (stamps_in_group == group) flush_group();
            ++stamps_in_group;
            last_stamp = stamp;
            have_last_stamp = true;
        }
        if (tok[1] == tok[2]) {
            ++skipped_self; // self-demand cannot be scheduled on a matching
            continue;
        }
        const NodeId a = intern(tok[1]);
        const NodeId b = intern(tok[2]);
        Weight size = 1; // Sequence format counts packets
        if (format == TraceFormat::Timestamp) size = parse_u64(tok[3], lineno);
        const std::uint64_t key = edge_key(a, b);
        auto it = current.weight.find(key);
        if (it == current.weight.end()) {
            current.order.push_back(key);
            current.weight.emplace(key, size);
        } else {
            it->second += size;
        }
    }
    flush_group();
    (void)skipped_self;

    InstanceStream s;
    s.n = static_cast<NodeId>(node_id.size());
    std::unordered_map<std::uint64_t, Weight> active;
    for (PendingBatch& gb : groups) {
        std::vector<EdgeUpdate> raw;
        for (std::uint64_t key : gb.order) {
            const Weight w_new = gb.weight[key];
            const NodeId u = static_cast<NodeId>(key >> 32);
            const NodeId v = static_cast<NodeId>(key & 0xffffffffu);
            const Weight w_old = active.count(key) ? active[key] : 0;
            const Delta delta =
                static_cast<Delta>(w_new) - static_cast<Delta>(w_old);
            if (delta != 0) raw.push_back(EdgeUpdate{u, v, delta});
            if (w_new == 0)
                active.erase(key);
            else
                active[key] = w_new;
        }
        // pairs active before but silent in this group disappear
        std::vector<std::uint64_t> gone;
        for (const auto& [key, w] : active)
            if (!gb.weight.count(key)) gone.push_back(key);
        std::sort(gone.begin(), gone.end());
        for (std::uint64_t key : gone) {
            raw.push_back(EdgeUpdate{static_cast<NodeId>(key >> 32),
                                     static_cast<NodeId>(key & 0xffffffffu),
                                     -static_cast<Delta>(active[key])});
            active.erase(key);
        }
        s.batches.push_back(coalesce_batch(raw));
    }
    return s;
}

InstanceStream ingest_trace_file(const std::string& path, std::uint64_t group,
                                 TraceFormat format) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    return ingest_trace(in, group, format);
}

SplitWindow make_split_window(Weight w, Weight cap, std::uint32_t y,
                              std::uint32_t window_start) {
    const std::uint32_t s =
        static_cast<std::uint32_t>((w + cap - 1) / cap); // ceil(w/cap)
    SplitWindow win;
    win.set_at = window_start;
    win.set_to = s > 1 ? cap : w;
    const Weight remainder = w - static_cast<Weight>(s - 1) * cap;
    if (s > 1 && remainder != cap) {
        win.reduce_at = window_start + s - 1;
        win.reduce_to = remainder;
    }
    const std::uint32_t after = window_start + s;
    win.zero_at = after < y ? static_cast<std::int64_t>(after) : -1;
    return win;
}

InstanceStream split_instance(const InstanceStream& in, const SplitParams& p) {
    if (p.sub_batches < 1) throw usage_error("sub-batch count must be positive");
    if (p.cap < 1) throw usage_error("weight cap must be positive");
    const std::uint32_t y = p.sub_batches;

    // eligibility: every absolute weight must fit into the y sub-batches
    std::unordered_map<std::uint64_t, Weight> weight;
    for (const Batch& b : in.batches) {
        for (const EdgeUpdate& up : b.updates) {
            Weight& w = weight[edge_key(up.u, up.v)];
            w = up.delta > 0 ? w + static_cast<Weight>(up.delta)
                             : w - static_cast<Weight>(-up.delta);
            if (w > p.cap * static_cast<Weight>(y))
                throw data_error("instance not eligible for splitting: weight " +
                                 std::to_string(w) + " exceeds y*z");
        }
    }

    Rng rng(p.seed);
    InstanceStream out;
    out.n = in.n;
    weight.clear();

    // per edge: sub-batch (global index) that still owes a zeroing
    std::unordered_map<std::uint64_t, std::size_t> pending_zero;

    std::vector<std::vector<EdgeUpdate>> subs;
    for (std::size_t bi = 0; bi < in.batches.size(); ++bi) {
        subs.assign(y, {});
        const std::size_t base = out.batches.size();

        std::unordered_set<std::uint64_t> zeroed_here;
        for (const EdgeUpdate& up : in.batches[bi].updates) {
            const std::uint64_t key = edge_key(up.u, up.v);
            Weight& w = weight[key];
            const Weight w_new =
                up.delta > 0 ? w + static_cast<Weight>(up.delta)
                             : w - static_cast<Weight>(-up.delta);
            w = w_new;

            if (w_new == 0) {
                // an original deletion: the previous window either zeroed the
                // edge already or still owes the zeroing at this first sub-batch
                auto pz = pending_zero.find(key);
                if (pz != pending_zero.end()) {
                    zeroed_here.insert(key);
                    subs[0].push_back(EdgeUpdate{up.u, up.v, 0}); // placeholder
                    pending_zero.erase(pz);
                }
                continue;
            }

            const std::uint32_t s =
                static_cast<std::uint32_t>((w_new + p.cap - 1) / p.cap);
            const std::uint32_t start =
                static_cast<std::uint32_t>(rng.below(y - s + 1));
            const SplitWindow win = make_split_window(w_new, p.cap, y, start);

            auto pz = pending_zero.find(key);
            if (pz != pending_zero.end()) {
                // zeroing is omitted iff the window begins right away
                if (win.set_at != 0) subs[0].push_back(EdgeUpdate{up.u, up.v, 0});
                pending_zero.erase(pz);
            }
            subs[win.set_at].push_back(
                EdgeUpdate{up.u, up.v, static_cast<Delta>(win.set_to)});
            if (win.reduce_at >= 0)
                subs[static_cast<std::size_t>(win.reduce_at)].push_back(
                    EdgeUpdate{up.u, up.v, static_cast<Delta>(win.reduce_to)});
            if (win.zero_at >= 0)
                subs[static_cast<std::size_t>(win.zero_at)].push_back(
                    EdgeUpdate{up.u, up.v, 0});
            else
                pending_zero[key] = base + y; // first sub-batch of the next batch
        }

        // edges owing a zeroing from the previous batch but untouched now
        std::vector<std::pair<std::uint64_t, std::size_t>> stale(
            pending_zero.begin(), pending_zero.end());
        std::sort(stale.begin(), stale.end());
        for (const auto& [key, due] : stale) {
            if (due != base) continue;
            if (zeroed_here.count(key)) continue;
            subs[0].push_back(EdgeUpdate{static_cast<NodeId>(key >> 32),
                                         static_cast<NodeId>(key & 0xffffffffu), 0});
            pending_zero.erase(key);
        }

        for (std::uint32_t si = 0; si < y; ++si) out.batches.emplace_back();
        for (std::uint32_t si = 0; si < y; ++si)
            out.batches[base + si].updates = std::move(subs[si]);
    }

    // the collected updates carry absolute weights in `delta`; convert
    std::unordered_map<std::uint64_t, Weight> replay;
    for (Batch& b : out.batches) {
        std::vector<EdgeUpdate> raw;
        for (const EdgeUpdate& up : b.updates) {
            const std::uint64_t key = edge_key(up.u, up.v);
            const Weight w_old = replay.count(key) ? replay[key] : 0;
            const Weight w_new = static_cast<Weight>(up.delta);
            if (w_new == w_old) continue;
            raw.push_back(EdgeUpdate{up.u, up.v,
                                     static_cast<Delta>(w_new) -
                                         static_cast<Delta>(w_old)});
            if (w_new == 0)
                replay.erase(key);
            else
                replay[key] = w_new;
        }
        b = coalesce_batch(raw);
    }
    return out;
}

namespace {

std::pair<NodeId, NodeId> rmat_draw(Rng& rng, std::uint32_t log_nodes,
                                    double a, double b, double c) {
    NodeId row = 0, col = 0;
    for (std::uint32_t level = 0; level < log_nodes; ++level) {
        const double r = rng.unit();
        row <<= 1;
        col <<= 1;
        if (r < a) {
            // top-left
        } else if (r < a + b) {
            col |= 1;
        } else if (r < a + b + c) {
            row |= 1;
        } else {
            row |= 1;
            col |= 1;
        }
    }
    return {row, col};
}

} // namespace

InstanceStream gen_rmat_dynamic(const RmatParams& p) {
    if (p.log_nodes < 2 || p.log_nodes > 24)
        throw usage_error("log-nodes out of range");
    if (p.fraction <= 0.0 || p.fraction > 1.0)
        throw usage_error("update fraction must be in (0,1]");
    if (p.del_prob < 0.0 || p.del_prob > 1.0)
        throw usage_error("deletion probability must be in [0,1]");
    const NodeId n = NodeId{1} << p.log_nodes;
    const std::uint64_t target = static_cast<std::uint64_t>(p.density) * n;
    if (target > static_cast<std::uint64_t>(n) * (n - 1) / 2)
        throw usage_error("edge target exceeds the complete graph");

    double a = 0, b = 0, c = 0;
    switch (p.model) {
    case RmatModel::B: a = 0.55, b = 0.15, c = 0.15; break;
    case RmatModel::G: a = 0.45, b = 0.15, c = 0.15; break;
    case RmatModel::Er: a = 0.25, b = 0.25, c = 0.25; break;
    }

    Rng rng(p.seed);
    std::vector<std::uint64_t> keys;
    std::unordered_set<std::uint64_t> seen;
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap = 256 * target + 1024;
    while (keys.size() < target) {
        if (++attempts > attempt_cap)
            throw data_error("rmat generator cannot reach the target density");
        const auto [u, v] = rmat_draw(rng, p.log_nodes, a, b, c);
        if (u == v) continue;
        const std::uint64_t key = edge_key(u, v);
        if (seen.insert(key).second) keys.push_back(key);
    }

    std::vector<Weight> weights(keys.size());
    for (Weight& w : weights)
        w = rng.truncated_exponential(p.weight_mean, p.weight_max);

    InstanceStream s;
    s.n = n;
    std::vector<EdgeUpdate> raw;
    raw.reserve(keys.size());
    std::vector<Weight> current(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        current[i] = weights[i];
        raw.push_back(EdgeUpdate{static_cast<NodeId>(keys[i] >> 32),
                                 static_cast<NodeId>(keys[i] & 0xffffffffu),
                                 static_cast<Delta>(weights[i])});
    }
    s.batches.push_back(coalesce_batch(raw));

    const std::size_t per_batch = static_cast<std::size_t>(
        p.fraction * static_cast<double>(keys.size()));
    for (std::uint32_t bi = 0; bi < p.update_batches; ++bi) {
        raw.clear();
        const auto picks = rng.sample_indices(
            static_cast<std::uint32_t>(keys.size()),
            static_cast<std::uint32_t>(per_batch));
        for (std::uint32_t slot : picks) {
            const NodeId u = static_cast<NodeId>(keys[slot] >> 32);
            const NodeId v = static_cast<NodeId>(keys[slot] & 0xffffffffu);
            Weight next;
            if (current[slot] > 0 && rng.bernoulli(p.del_prob)) {
                next = 0;
            } else {
                // redraw from the original weight multiset until the slot
                // really changes, so every sampled slot is a real update
                next = current[slot];
                for (int tries = 0; tries < 32 && next == current[slot]; ++tries)
                    next = weights[rng.below(weights.size())];
                if (next == current[slot])
                    next = current[slot] > 1 ? current[slot] - 1 : current[slot] + 1;
            }
            raw.push_back(EdgeUpdate{u, v,
                                     static_cast<Delta>(next) -
                                         static_cast<Delta>(current[slot])});
            current[slot] = next;
        }
        s.batches.push_back(coalesce_batch(raw));
    }
    return s;
}

} // namespace djm
