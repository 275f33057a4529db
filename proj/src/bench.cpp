#include "djm/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "djm/batch_solvers.hpp"
#include "djm/enhancers.hpp"
#include "djm/errors.hpp"
#include "djm/hybrid_solvers.hpp"
#include "djm/oracle.hpp"
#include "djm/static_solvers.hpp"

namespace djm {

namespace {

class StaticDriver : public AlgoDriver {
public:
    explicit StaticDriver(std::function<void(Graph&, Coloring&)> solve)
        : solve_(std::move(solve)) {}
    void end_batch(Graph& g, Coloring& c, const Batch&, std::size_t) override {
        c.reset();
        solve_(g, c);
    }

private:
    std::function<void(Graph&, Coloring&)> solve_;
};

template <typename Solver>
class DynamicDriver : public AlgoDriver {
public:
    explicit DynamicDriver(Solver s) : solver_(std::move(s)) {}
    void on_update(Graph& g, Coloring& c, const AppliedUpdate& up) override {
        solver_.on_update(g, c, up);
    }
    void end_batch(Graph&, Coloring&, const Batch&, std::size_t) override {}

private:
    Solver solver_;
};

class BatchGreedyDriver : public AlgoDriver {
public:
    explicit BatchGreedyDriver(bool local_swaps) : local_swaps_(local_swaps) {}
    void end_batch(Graph& g, Coloring& c, const Batch& fwd, std::size_t) override {
        batch_greedy(g, c, fwd, local_swaps_);
    }

private:
    bool local_swaps_;
};

class BatchNcDriver : public AlgoDriver {
public:
    void end_batch(Graph& g, Coloring& c, const Batch& fwd, std::size_t) override {
        batch_node_centered(g, c, fwd);
    }
};

class Batch2ApxDriver : public AlgoDriver {
public:
    void on_update(Graph&, Coloring&, const AppliedUpdate& up) override {
        apx_.observe(up);
    }
    void end_batch(Graph& g, Coloring& c, const Batch&, std::size_t) override {
        apx_.end_batch(g, c);
    }

private:
    Batch2Apx apx_;
};

template <typename DynSolver>
class HybridDriver : public AlgoDriver {
public:
    explicit HybridDriver(DynSolver dyn) : hybrid_(std::move(dyn)) {}
    void begin_batch(Graph& g, Coloring&) override { hybrid_.begin_batch(g); }
    void on_update(Graph& g, Coloring& c, const AppliedUpdate& up) override {
        hybrid_.process_update(g, c, up);
    }
    void end_batch(Graph& g, Coloring& c, const Batch&,
                   std::size_t coalesced_size) override {
        hybrid_.end_batch(g, c, coalesced_size);
    }
    bool postprocess_applies() const override {
        return hybrid_.mode() == HybridMode::Dynamic;
    }

private:
    Hybrid<DynSolver> hybrid_;
};

DynGreedyConfig deterministic_greedy_config() {
    DynGreedyConfig cfg;
    cfg.alpha = 1;
    cfg.deterministic = true;
    return cfg;
}

DynGreedyConfig randomized_greedy_config() {
    DynGreedyConfig cfg;
    cfg.alpha = 1;
    cfg.beta = 1;
    cfg.deterministic = false;
    return cfg;
}

} // namespace

const std::vector<std::string>& algo_ids() {
    static const std::vector<std::string> ids = {
        "greedy",       "greedy-l",   "nc",
        "kec",          "dyn-greedy", "dyn-greedy-r",
        "dyn-kec",      "batch-greedy", "batch-greedy-l",
        "batch-nc",     "batch-2apx", "hybrid-greedy-r",
        "hybrid-kec"};
    return ids;
}

bool algo_known(const std::string& id) {
    const auto& ids = algo_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool algo_is_randomized(const std::string& id) {
    return id == "dyn-greedy-r" || id == "hybrid-greedy-r";
}

std::unique_ptr<AlgoDriver> make_driver(const std::string& id, std::uint64_t seed) {
    if (id == "greedy")
        return std::make_unique<StaticDriver>(
            [](Graph& g, Coloring& c) { greedy_it(g, c, false); });
    if (id == "greedy-l")
        return std::make_unique<StaticDriver>(
            [](Graph& g, Coloring& c) { greedy_it(g, c, true); });
    if (id == "nc")
        return std::make_unique<StaticDriver>(
            [](Graph& g, Coloring& c) { node_centered(g, c); });
    if (id == "kec")
        return std::make_unique<StaticDriver>([](Graph& g, Coloring& c) { kec(g, c); });
    if (id == "dyn-greedy")
        return std::make_unique<DynamicDriver<DynGreedy>>(
            DynGreedy(deterministic_greedy_config(), seed));
    if (id == "dyn-greedy-r")
        return std::make_unique<DynamicDriver<DynGreedy>>(
            DynGreedy(randomized_greedy_config(), seed));
    if (id == "dyn-kec")
        return std::make_unique<DynamicDriver<DynKec>>(DynKec{});
    if (id == "batch-greedy") return std::make_unique<BatchGreedyDriver>(false);
    if (id == "batch-greedy-l") return std::make_unique<BatchGreedyDriver>(true);
    if (id == "batch-nc") return std::make_unique<BatchNcDriver>();
    if (id == "batch-2apx") return std::make_unique<Batch2ApxDriver>();
    if (id == "hybrid-greedy-r")
        return std::make_unique<HybridDriver<DynGreedy>>(
            DynGreedy(randomized_greedy_config(), seed));
    if (id == "hybrid-kec")
        return std::make_unique<HybridDriver<DynKec>>(DynKec{});
    throw usage_error("unknown algorithm id '" + id + "'");
}

std::string render_algo_id(const std::string& base, bool postprocess, bool filter) {
    if (!postprocess && !filter) return base;
    std::string suffix;
    if (postprocess) suffix += 'p';
    if (filter) suffix += 'f';
    const bool glue = base.size() > 1 && base[base.size() - 2] == '-' &&
                      (base.back() == 'r' || base.back() == 'l');
    return glue ? base + suffix : base + "-" + suffix;
}

namespace {

struct BatchOutcome {
    std::size_t b = 0;
    std::uint64_t time_ns = 0;
    Weight weight = 0;
    std::size_t recourse_all = 0;
    std::size_t recourse_touched = 0;
};

std::vector<BatchOutcome> replay_once(const InstanceStream& stream,
                                      const RunConfig& cfg, std::uint64_t seed) {
    Graph g(stream.n);
    Coloring c(g, cfg.k);
    auto driver = make_driver(cfg.algo, seed);
    PostProcessor pp;

    std::vector<BatchOutcome> out;
    out.reserve(stream.batches.size());
    for (std::size_t bi = 0; bi < stream.batches.size(); ++bi) {
        const Batch& batch = stream.batches[bi];
        BatchOutcome row;
        row.b = batch.size();

        ColoringSnapshot before;
        std::vector<std::uint64_t> touched;
        if (cfg.measure_recourse) {
            before = ColoringSnapshot(g, c);
            for (const EdgeUpdate& up : batch.updates)
                touched.push_back(edge_key(up.u, up.v));
        }

        const auto t0 = std::chrono::steady_clock::now();
        driver->begin_batch(g, c);
        Batch forwarded;
        for (const EdgeUpdate& up : batch.updates) {
            const Weight w_old = g.weight_between(up.u, up.v);
            bool forward = true;
            if (cfg.filter_t.has_value()) {
                const Weight w_new =
                    up.delta > 0 ? w_old + static_cast<Weight>(up.delta)
                                 : w_old - static_cast<Weight>(-up.delta);
                forward = filter_decision(*cfg.filter_t, w_old, w_new) ==
                          FilterDecision::Keep;
            }
            const AppliedUpdate au = apply_and_classify(g, c, up);
            if (forward) {
                forwarded.updates.push_back(up);
                driver->on_update(g, c, au);
            }
        }
        driver->end_batch(g, c, forwarded, batch.size());
        if (cfg.postprocess && driver->postprocess_applies())
            pp.run_all_uncolored(g, c);
        const auto t1 = std::chrono::steady_clock::now();
        row.time_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());

        const ValidationReport report = validate(g, c);
        if (!report.ok)
            throw internal_error("validation failed after batch " +
                                 std::to_string(bi) + ": " + report.message);
        row.weight = c.colored_weight();

        if (cfg.measure_recourse) {
            const ColoringSnapshot after(g, c);
            row.recourse_all = recourse(before, after, RecourseScope::All);
            row.recourse_touched =
                recourse(before, after, RecourseScope::Touched, touched);
        }
        out.push_back(row);
    }
    return out;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2]; // lower median for even counts
}

double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

std::vector<MetricsRecord> run_experiment_on(const InstanceStream& stream,
                                             const RunConfig& cfg) {
    if (!algo_known(cfg.algo)) throw usage_error("unknown algorithm '" + cfg.algo + "'");
    if (cfg.k < 1 || cfg.k > 64) throw usage_error("k out of range");
    if (cfg.repeats < 1) throw usage_error("repeats must be positive");
    if (cfg.filter_t.has_value() && *cfg.filter_t < 1.0)
        throw usage_error("filter threshold must be >= 1");

    const std::string algo_name =
        render_algo_id(cfg.algo, cfg.postprocess, cfg.filter_t.has_value());
    const bool randomized = algo_is_randomized(cfg.algo);

    std::vector<MetricsRecord> rows;
    std::vector<std::vector<BatchOutcome>> runs;
    for (int r = 0; r < cfg.repeats; ++r) {
        const std::uint64_t seed = randomized ? cfg.seed + static_cast<std::uint64_t>(r)
                                              : cfg.seed;
        runs.push_back(replay_once(stream, cfg, seed));
        for (std::size_t bi = 0; bi < runs.back().size(); ++bi) {
            const BatchOutcome& o = runs.back()[bi];
            MetricsRecord rec;
            rec.instance = cfg.instance_path;
            rec.algo = algo_name;
            rec.k = cfg.k;
            rec.seed = seed;
            rec.repeat = r;
            rec.batch = bi;
            rec.b = o.b;
            if (!cfg.measure_recourse)
                rec.time_ns = static_cast<double>(o.time_ns);
            rec.weight = static_cast<double>(o.weight);
            if (cfg.measure_recourse) {
                rec.recourse_all = static_cast<double>(o.recourse_all);
                rec.recourse_touched = static_cast<double>(o.recourse_touched);
            }
            rows.push_back(std::move(rec));
        }
    }

    // reduced rows: median time for deterministic algorithms, arithmetic mean
    // over the seeds for randomized ones; recourse reduces by the mean
    const std::size_t batches = runs.front().size();
    for (std::size_t bi = 0; bi < batches; ++bi) {
        MetricsRecord rec;
        rec.instance = cfg.instance_path;
        rec.algo = algo_name;
        rec.k = cfg.k;
        rec.seed = cfg.seed;
        rec.repeat = -1;
        rec.batch = bi;
        rec.b = runs.front()[bi].b;
        std::vector<double> times, weights, rec_all, rec_touched;
        for (const auto& run : runs) {
            times.push_back(static_cast<double>(run[bi].time_ns));
            weights.push_back(static_cast<double>(run[bi].weight));
            rec_all.push_back(static_cast<double>(run[bi].recourse_all));
            rec_touched.push_back(static_cast<double>(run[bi].recourse_touched));
        }
        if (!cfg.measure_recourse)
            rec.time_ns = randomized ? mean_of(times) : median_of(times);
        rec.weight = mean_of(weights);
        if (cfg.measure_recourse) {
            rec.recourse_all = mean_of(rec_all);
            rec.recourse_touched = mean_of(rec_touched);
        }
        rows.push_back(std::move(rec));
    }
    return rows;
}

std::vector<MetricsRecord> run_experiment(const RunConfig& cfg) {
    const InstanceStream stream = read_djm_file(cfg.instance_path);
    return run_experiment_on(stream, cfg);
}

const char* const kMetricsCsvHeader =
    "instance,algo,k,seed,repeat,batch,b,time_ns,weight,recourse_all,recourse_touched";

namespace {

std::string fmt_metric(const std::optional<double>& v) {
    if (!v.has_value()) return "";
    const double x = *v;
    if (x == std::floor(x) && std::abs(x) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", x);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

} // namespace

void write_csv(const std::vector<MetricsRecord>& rows, std::ostream& out) {
    out << kMetricsCsvHeader << "\n";
    for (const MetricsRecord& r : rows) {
        out << r.instance << ',' << r.algo << ',' << r.k << ',' << r.seed << ',';
        if (r.repeat >= 0) out << r.repeat;
        out << ',' << r.batch << ',' << r.b << ',' << fmt_metric(r.time_ns) << ','
            << fmt_metric(r.weight) << ',' << fmt_metric(r.recourse_all) << ','
            << fmt_metric(r.recourse_touched) << "\n";
    }
}

std::vector<MetricsRecord> read_csv(std::istream& in) {
    std::vector<MetricsRecord> rows;
    std::string line;
    if (!std::getline(in, line)) throw data_error("empty csv");
    if (line != kMetricsCsvHeader) throw data_error("unexpected csv header");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                f.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        f.push_back(cur);
        if (f.size() != 11)
            throw data_error("line " + std::to_string(lineno) + ": bad column count");
        MetricsRecord r;
        r.instance = f[0];
        r.algo = f[1];
        auto num = [&](const std::string& s) { return std::stod(s); };
        r.k = static_cast<Color>(std::stoi(f[2]));
        r.seed = std::stoull(f[3]);
        r.repeat = f[4].empty() ? -1 : std::stoi(f[4]);
        r.batch = std::stoull(f[5]);
        r.b = std::stoull(f[6]);
        if (!f[7].empty()) r.time_ns = num(f[7]);
        if (!f[8].empty()) r.weight = num(f[8]);
        if (!f[9].empty()) r.recourse_all = num(f[9]);
        if (!f[10].empty()) r.recourse_touched = num(f[10]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<MetricsRecord> read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    return read_csv(in);
}

PerInstanceStats compute_per_instance(const std::vector<MetricsRecord>& rows) {
    PerInstanceStats stats;
    std::vector<double> per_update, weights, recourse_vals;
    std::size_t batches_seen = 0;
    for (const MetricsRecord& r : rows) {
        if (r.repeat != -1) continue; // reduced rows only
        ++batches_seen;
        if (r.time_ns.has_value() && r.b > 0)
            per_update.push_back(*r.time_ns / static_cast<double>(r.b));
        if (r.weight.has_value()) weights.push_back(*r.weight);
        if (r.recourse_all.has_value()) recourse_vals.push_back(*r.recourse_all);
    }
    if (batches_seen == 0) throw data_error("no reduced rows for the instance");
    if (!per_update.empty()) stats.tau = mean_of(per_update);
    if (!weights.empty()) stats.sigma = mean_of(weights);
    if (!recourse_vals.empty()) stats.obar = mean_of(recourse_vals);
    return stats;
}

std::vector<AggregateRow> aggregate_relative(const std::vector<MetricsRecord>& rows,
                                             const std::string& reference,
                                             const std::string& dataset) {
    // (instance, algo, k) -> reduced rows
    std::map<std::tuple<std::string, std::string, Color>, std::vector<MetricsRecord>>
        cells;
    for (const MetricsRecord& r : rows)
        if (r.repeat == -1)
            cells[{r.instance, r.algo, r.k}].push_back(r);

    std::map<std::tuple<std::string, std::string, Color>, PerInstanceStats> stats;
    for (const auto& [key, cell] : cells) stats[key] = compute_per_instance(cell);

    std::map<std::pair<std::string, Color>,
             std::vector<std::tuple<double, double, double, int>>>
        ratios; // (algo, k) -> per-instance (speedup, relw, relo, mask)
    for (const auto& [key, st] : stats) {
        const auto& [instance, algo, k] = key;
        if (algo == reference) continue;
        auto ref_it = stats.find({instance, reference, k});
        if (ref_it == stats.end()) continue;
        const PerInstanceStats& ref = ref_it->second;
        double speedup = 0, relw = 0, relo = 0;
        int mask = 0;
        if (st.tau && ref.tau) {
            if (*st.tau == 0) {
                std::cerr << "warning: zero per-update time for " << algo << " on "
                          << instance << ", instance skipped for speedup\n";
            } else {
                speedup = *ref.tau / *st.tau;
                mask |= 1;
            }
        }
        if (st.sigma && ref.sigma && *ref.sigma != 0) {
            relw = *st.sigma / *ref.sigma;
            mask |= 2;
        }
        if (st.obar && ref.obar) {
            if (*ref.obar == 0) {
                std::cerr << "warning: zero reference recourse on " << instance
                          << ", instance skipped for relative recourse\n";
            } else {
                relo = *st.obar / *ref.obar;
                mask |= 4;
            }
        }
        ratios[{algo, k}].emplace_back(speedup, relw, relo, mask);
    }

    std::vector<AggregateRow> out;
    for (const auto& [key, list] : ratios) {
        AggregateRow row;
        row.dataset = dataset;
        row.algo = key.first;
        row.reference = reference;
        row.k = key.second;
        double log_speedup = 0, log_relw = 0, log_relo = 0;
        int n_speedup = 0, n_relw = 0, n_relo = 0;
        for (const auto& [sp, rw, ro, mask] : list) {
            if (mask & 1) {
                log_speedup += std::log(sp);
                ++n_speedup;
            }
            if (mask & 2) {
                log_relw += std::log(rw);
                ++n_relw;
            }
            if (mask & 4) {
                log_relo += std::log(ro);
                ++n_relo;
            }
        }
        if (n_speedup > 0) row.speedup = std::exp(log_speedup / n_speedup);
        if (n_relw > 0) row.rel_weight = std::exp(log_relw / n_relw);
        if (n_relo > 0) row.rel_recourse = std::exp(log_relo / n_relo);
        out.push_back(std::move(row));
    }
    return out;
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
    out << "dataset,algo,reference,k,speedup,rel_weight,rel_recourse\n";
    for (const AggregateRow& r : rows) {
        out << r.dataset << ',' << r.algo << ',' << r.reference << ',' << r.k << ','
            << fmt_metric(r.speedup) << ',' << fmt_metric(r.rel_weight) << ','
            << fmt_metric(r.rel_recourse) << "\n";
    }
}

} // namespace djm
