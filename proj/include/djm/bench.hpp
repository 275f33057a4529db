#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "djm/coloring.hpp"
#include "djm/dynamic_solvers.hpp"
#include "djm/graph.hpp"
#include "djm/instance.hpp"

namespace djm {

// one algorithm plugged into the batch replay loop; updates are always
// applied to the graph by the loop, the driver only decides what solver work
// happens per update and per batch
class AlgoDriver {
public:
    virtual ~AlgoDriver() = default;
    virtual void begin_batch(Graph&, Coloring&) {}
    virtual void on_update(Graph&, Coloring&, const AppliedUpdate&) {}
    virtual void end_batch(Graph&, Coloring&, const Batch& forwarded,
                           std::size_t coalesced_size) = 0;
    // hybrids skip the post-processing suffix while in static mode
    virtual bool postprocess_applies() const { return true; }
};

const std::vector<std::string>& algo_ids();
bool algo_known(const std::string& id);
bool algo_is_randomized(const std::string& id);
std::unique_ptr<AlgoDriver> make_driver(const std::string& id, std::uint64_t seed);

// base id plus the paper-style suffix flags, e.g. dyn-greedy-r + p + f
// renders as dyn-greedy-rpf and kec + p as kec-p
std::string render_algo_id(const std::string& base, bool postprocess, bool filter);

struct RunConfig {
    std::string instance_path; // also the instance id in the CSV
    std::string algo;
    Color k = 2;
    std::uint64_t seed = 1;
    int repeats = 3;
    bool postprocess = false;
    std::optional<double> filter_t;
    bool measure_recourse = false;
};

struct MetricsRecord {
    std::string instance;
    std::string algo; // rendered with suffix flags
    Color k = 0;
    std::uint64_t seed = 0;
    int repeat = -1; // -1 marks a reduced row
    std::size_t batch = 0;
    std::size_t b = 0;
    std::optional<double> time_ns;
    std::optional<double> weight;
    std::optional<double> recourse_all;
    std::optional<double> recourse_touched;
};

// replays the instance through the algorithm; returns the per-repeat rows
// followed by the reduced per-batch rows (median time for deterministic
// algorithms, arithmetic mean over seeds for randomized ones). Timed runs
// never snapshot; recourse runs never report times. The coloring is
// validated after every batch.
std::vector<MetricsRecord> run_experiment(const RunConfig& cfg);

// convenience: run on an already-loaded stream
std::vector<MetricsRecord> run_experiment_on(const InstanceStream& stream,
                                             const RunConfig& cfg);

extern const char* const kMetricsCsvHeader;
void write_csv(const std::vector<MetricsRecord>& rows, std::ostream& out);
std::vector<MetricsRecord> read_csv(std::istream& in);
std::vector<MetricsRecord> read_csv_file(const std::string& path);

struct PerInstanceStats {
    std::optional<double> tau;   // mean over batches of time / b, b > 0
    std::optional<double> sigma; // mean solution weight over batches
    std::optional<double> obar;  // mean recourse (all-edges scope)
};

// consumes the reduced rows of one (instance, algo, k)
PerInstanceStats compute_per_instance(const std::vector<MetricsRecord>& rows);

struct AggregateRow {
    std::string dataset;
    std::string algo;
    std::string reference;
    Color k = 0;
    std::optional<double> speedup;       // tau_ref / tau_algo
    std::optional<double> rel_weight;    // sigma_algo / sigma_ref
    std::optional<double> rel_recourse;  // obar_algo / obar_ref
};

// per-instance ratios against the reference algorithm, geometric mean across
// instances; instances with zero denominators are skipped with a warning
std::vector<AggregateRow> aggregate_relative(const std::vector<MetricsRecord>& rows,
                                             const std::string& reference,
                                             const std::string& dataset);
void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out);

} // namespace djm
