// Acceptance suite: replays the library's guarantees end to end and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "djm/batch_solvers.hpp"
#include "djm/bench.hpp"
#include "djm/enhancers.hpp"
#include "djm/hybrid_solvers.hpp"
#include "djm/instance.hpp"
#include "djm/oracle.hpp"
#include "djm/primitives.hpp"
#include "djm/static_solvers.hpp"
#include "../tests/helpers.hpp"

using namespace djm;

namespace {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

double geometric_mean(const std::vector<double>& xs) {
    double acc = 0;
    for (double x : xs) acc += std::log(x);
    return std::exp(acc / static_cast<double>(xs.size()));
}

bool invariant_holds(const Graph& g, const Coloring& c) {
    for (EdgeId e : g.present_edges()) {
        if (c.is_colored(e)) continue;
        for (Color col = 1; col <= c.num_colors(); ++col)
            if (colored_neighborhood_weight(g, c, e, col) < g.weight(e))
                return false;
    }
    return true;
}

// random instance whose edges come from a bounded pool of node pairs, so the
// edge count never exceeds the brute-force guard
InstanceStream pooled_instance(std::uint64_t seed, NodeId n, std::size_t pool_size,
                               std::size_t batches, std::size_t batch_updates,
                               Weight max_w) {
    Rng rng(seed);
    std::vector<std::pair<NodeId, NodeId>> pool;
    std::set<std::uint64_t> used;
    while (pool.size() < pool_size) {
        const NodeId u = static_cast<NodeId>(rng.below(n));
        const NodeId v = static_cast<NodeId>(rng.below(n));
        if (u == v) continue;
        if (used.insert(edge_key(u, v)).second)
            pool.emplace_back(std::min(u, v), std::max(u, v));
    }
    InstanceStream s;
    s.n = n;
    std::map<std::uint64_t, Weight> weight;
    for (std::size_t bi = 0; bi < batches; ++bi) {
        std::vector<EdgeUpdate> raw;
        std::map<std::uint64_t, Weight> pending = weight;
        for (std::size_t i = 0; i < batch_updates; ++i) {
            const auto [u, v] = pool[rng.below(pool.size())];
            Weight& cur = pending[edge_key(u, v)];
            Delta delta;
            if (cur == 0) {
                delta = static_cast<Delta>(rng.range(1, max_w));
            } else if (rng.below(10) < 3) {
                delta = -static_cast<Delta>(cur);
            } else {
                const Weight target = rng.range(1, max_w);
                if (target == cur) continue;
                delta = static_cast<Delta>(target) - static_cast<Delta>(cur);
            }
            cur = delta > 0 ? cur + static_cast<Weight>(delta)
                            : cur - static_cast<Weight>(-delta);
            raw.push_back(EdgeUpdate{u, v, delta});
        }
        s.batches.push_back(coalesce_batch(raw));
        weight = std::move(pending);
    }
    return s;
}

// acceptance-side replay harness with per-batch hooks and queue statistics
struct ReplayResult {
    bool queue_clean = true; // no duplicate enqueues, enqueues <= m
    std::string error;
};

ReplayResult replay_instance(
    const InstanceStream& stream, const std::string& algo, Color k,
    std::uint64_t seed, bool postprocess, std::optional<double> filter_t,
    const std::function<void(std::size_t, Graph&, Coloring&, bool)>& after_batch) {
    ReplayResult result;
    Graph g(stream.n);
    Coloring c(g, k);
    std::unique_ptr<AlgoDriver> driver;
    std::unique_ptr<Batch2Apx> apx;
    if (algo == "batch-2apx")
        apx = std::make_unique<Batch2Apx>();
    else
        driver = make_driver(algo, seed);
    PostProcessor pp;

    auto check_queue = [&](const PostProcessStats& stats) {
        if (stats.duplicate_enqueue || stats.enqueues > g.present_edge_count())
            result.queue_clean = false;
    };

    for (std::size_t bi = 0; bi < stream.batches.size(); ++bi) {
        const Batch& batch = stream.batches[bi];
        if (driver) driver->begin_batch(g, c);
        Batch forwarded;
        for (const EdgeUpdate& up : batch.updates) {
            const Weight w_old = g.weight_between(up.u, up.v);
            bool forward = true;
            if (filter_t.has_value()) {
                const Weight w_new =
                    up.delta > 0 ? w_old + static_cast<Weight>(up.delta)
                                 : w_old - static_cast<Weight>(-up.delta);
                forward =
                    filter_decision(*filter_t, w_old, w_new) == FilterDecision::Keep;
            }
            const AppliedUpdate au = apply_and_classify(g, c, up);
            if (forward) {
                forwarded.updates.push_back(up);
                if (driver)
                    driver->on_update(g, c, au);
                else
                    apx->observe(au);
            }
        }
        bool postprocessed = false;
        if (driver) {
            driver->end_batch(g, c, forwarded, batch.size());
            if (postprocess && driver->postprocess_applies()) {
                check_queue(pp.run_all_uncolored(g, c));
                postprocessed = true;
            }
        } else {
            check_queue(apx->end_batch(g, c));
            postprocessed = true;
            if (postprocess) {
                check_queue(pp.run_all_uncolored(g, c));
            }
        }
        const ValidationReport report = validate(g, c);
        if (!report.ok) {
            result.error = "batch " + std::to_string(bi) + ": " + report.message;
            return result;
        }
        if (after_batch) after_batch(bi, g, c, postprocessed);
    }
    return result;
}

// ---------------------------------------------------------------- criterion 1

CriterionResult criterion_properness() {
    const auto t0 = std::chrono::steady_clock::now();
    const Color ks[] = {1, 2, 4, 8};
    std::size_t checked = 0;
    for (int inst = 0; inst < 200; ++inst) {
        Rng meta(9000 + inst);
        const NodeId n = static_cast<NodeId>(8 + meta.below(57)); // 8..64
        const std::size_t bsz = 1 + meta.below(12);
        const InstanceStream s =
            test::random_instance(meta.next(), n, 50, bsz, 1000);
        const Color k = ks[inst % 4];
        for (const std::string& algo : algo_ids()) {
            const ReplayResult r =
                replay_instance(s, algo, k, 7 + inst, false, std::nullopt, {});
            if (!r.error.empty())
                return {1, "properness", false,
                        algo + " on instance " + std::to_string(inst) + ": " +
                            r.error};
            ++checked;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu replays of 50 batches validated in %.1fs", checked, secs);
    return {1, "properness", secs < 120.0, buf};
}

// ------------------------------------------------------------ criteria 2 + 11

struct HalfApxOutcome {
    CriterionResult half_apx;
    CriterionResult queue_bound;
};

HalfApxOutcome criteria_half_approximation_and_queue() {
    bool queue_clean = true;
    std::size_t cases = 0, runs = 0;
    std::string fail_detail;

    for (int inst = 0; inst < 120 && fail_detail.empty(); ++inst) {
        const InstanceStream s =
            pooled_instance(4000 + inst, 6 + inst % 3, 10, 3, 5, 60);
        for (Color k = 1; k <= 3 && fail_detail.empty(); ++k) {
            // exact optimum per batch boundary, shared across algorithms
            std::vector<Weight> opt;
            {
                Graph g(s.n);
                Coloring c(g, k);
                for (const Batch& b : s.batches) {
                    for (const EdgeUpdate& up : b.updates) apply_update(g, c, up);
                    opt.push_back(brute_force_opt(g, k, 12).weight);
                }
            }
            cases += opt.size();
            for (const std::string& algo : algo_ids()) {
                const bool standalone = algo == "batch-2apx";
                const ReplayResult r = replay_instance(
                    s, algo, k, 11, !standalone, std::nullopt,
                    [&](std::size_t bi, Graph& g, Coloring& c, bool postprocessed) {
                        if (!postprocessed) return; // hybrid static batches
                        if (2 * c.colored_weight() < opt[bi])
                            fail_detail = algo + " k=" + std::to_string(k) +
                                          " batch " + std::to_string(bi) +
                                          ": weight " +
                                          std::to_string(c.colored_weight()) +
                                          " < half of " + std::to_string(opt[bi]);
                        else if (!invariant_holds(g, c))
                            fail_detail = algo + " k=" + std::to_string(k) +
                                          " batch " + std::to_string(bi) +
                                          ": invariant violated";
                    });
                queue_clean = queue_clean && r.queue_clean;
                if (!r.error.empty()) fail_detail = algo + ": " + r.error;
                ++runs;
                if (!fail_detail.empty()) break;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu graph cases, %zu postprocessed runs against brute force",
                  cases, runs);
    HalfApxOutcome out{
        {2, "half-approximation + invariant", fail_detail.empty(),
         fail_detail.empty() ? buf : fail_detail},
        {11, "post-processing queue bound", queue_clean,
         queue_clean ? "no duplicate enqueues; enqueues <= m in every invocation"
                     : "queue discipline violated"}};
    return out;
}

// ---------------------------------------------------------------- criterion 3

CriterionResult criterion_inductive_invariant() {
    for (int round = 0; round < 15; ++round) {
        Rng rng(700 + round);
        const NodeId n = 14;
        Graph g(n);
        Coloring c(g, static_cast<Color>(1 + round % 3));
        Batch2Apx apx;
        for (int bi = 0; bi < 100; ++bi) {
            const Batch b = test::random_batch(rng, n, g, 3, 50);
            for (const EdgeUpdate& up : b.updates)
                apx.observe(apply_and_classify(g, c, up));
            apx.end_batch(g, c);
            if (!invariant_holds(g, c))
                return {3, "inductive invariant", false,
                        "violated after batch " + std::to_string(bi) +
                            " of sequence " + std::to_string(round)};
        }
    }
    return {3, "inductive invariant", true,
            "15 sequences x 100 batches, invariant held after every batch"};
}

// ---------------------------------------------------------------- criterion 4

CriterionResult criterion_oracle_equivalence() {
    // (a) full-insertion batch_greedy == greedy_it, edge for edge
    Rng rng(31);
    for (int round = 0; round < 30; ++round) {
        std::vector<EdgeUpdate> raw;
        for (int i = 0; i < 24; ++i) {
            const NodeId u = static_cast<NodeId>(rng.below(14));
            const NodeId v = static_cast<NodeId>(rng.below(14));
            if (u == v) continue;
            raw.push_back(EdgeUpdate{u, v, static_cast<Delta>(rng.range(1, 90))});
        }
        const Batch all = coalesce_batch(raw);
        for (bool swaps : {false, true}) {
            for (Color k : {1, 2, 4}) {
                Graph g1(14);
                Coloring c1(g1, k);
                for (const EdgeUpdate& up : all.updates) apply_update(g1, c1, up);
                batch_greedy(g1, c1, all, swaps);
                Graph g2(14);
                Coloring c2(g2, k);
                for (const EdgeUpdate& up : all.updates) apply_update(g2, c2, up);
                greedy_it(g2, c2, swaps);
                if (ColoringSnapshot(g1, c1).entries() !=
                    ColoringSnapshot(g2, c2).entries())
                    return {4, "oracle equivalence", false,
                            "batch_greedy(full insertion) differs from greedy_it"};
            }
        }
    }

    // (b) hybrid static mode == kec bitwise
    {
        Rng r2(5);
        Graph g(6);
        Coloring c(g, 2);
        HybridKec hybrid{DynKec{}};
        for (int step = 0; step < 12; ++step) {
            const Batch b = test::distinct_batch(r2, 6, g, 8, 40);
            hybrid.begin_batch(g);
            if (hybrid.mode() != HybridMode::Static)
                return {4, "oracle equivalence", false, "expected static mode"};
            for (const EdgeUpdate& up : b.updates) {
                const AppliedUpdate au = apply_and_classify(g, c, up);
                hybrid.process_update(g, c, au);
            }
            hybrid.end_batch(g, c, b.size());
            Graph g2(6);
            Coloring c2(g2, 2);
            for (EdgeId e : g.present_edges()) {
                const auto [u, v] = g.endpoints(e);
                test::add_edge(g2, c2, u, v, g.weight(e));
            }
            kec(g2, c2);
            if (ColoringSnapshot(g, c).entries() != ColoringSnapshot(g2, c2).entries())
                return {4, "oracle equivalence", false,
                        "hybrid static batch differs from kec"};
        }
    }

    // (c) per batch, the hybrid is bitwise its mode's solver: the twin clones
    // the full state (graph, coloring, embedded rng) at every batch start
    {
        Rng r3(9);
        const NodeId n = 16;
        DynGreedyConfig cfg;
        cfg.alpha = 1;
        cfg.beta = 1;
        Graph hg(n);
        Coloring hc(hg, 2);
        HybridGreedy hybrid{DynGreedy(cfg, 77)};
        std::size_t dynamic_batches = 0, static_batches = 0;
        for (int step = 0; step < 50; ++step) {
            const std::size_t want = (step % 4 == 3) ? n + 4 : 4;
            const Batch b = test::distinct_batch(r3, n, hg, want, 30);
            Graph tg = hg;
            Coloring tc = hc;
            DynGreedy twin = hybrid.dynamic_solver();
            const HybridMode mode = hybrid.begin_batch(hg);
            for (const EdgeUpdate& up : b.updates) {
                hybrid.process_update(hg, hc, apply_and_classify(hg, hc, up));
                const AppliedUpdate au = apply_and_classify(tg, tc, up);
                if (mode == HybridMode::Dynamic) twin.on_update(tg, tc, au);
            }
            hybrid.end_batch(hg, hc, b.size());
            if (mode == HybridMode::Static) {
                tc.reset();
                kec(tg, tc);
                ++static_batches;
            } else {
                ++dynamic_batches;
            }
            if (ColoringSnapshot(hg, hc).entries() !=
                ColoringSnapshot(tg, tc).entries())
                return {4, "oracle equivalence", false,
                        "hybrid batch differs from its mode's solver"};
        }
        if (dynamic_batches < 10 || static_batches < 10)
            return {4, "oracle equivalence", false, "modes were not both exercised"};
    }
    return {4, "oracle equivalence", true,
            "batch==static reproduction and both hybrid modes bitwise identical"};
}

// ---------------------------------------------------------------- criterion 5

CriterionResult criterion_work_locality() {
    // bounded-degree graphs of growing size; same batch profile everywhere
    auto build = [](NodeId n, Rng& rng, InstanceStream& out) {
        out.n = n;
        std::vector<EdgeUpdate> raw;
        std::vector<std::uint32_t> degree(n, 0);
        // ring plus two random chords per node, degree capped at 6
        for (NodeId v = 0; v < n; ++v) {
            raw.push_back(EdgeUpdate{v, static_cast<NodeId>((v + 1) % n),
                                     static_cast<Delta>(rng.range(1, 1000000))});
        }
        for (NodeId v = 0; v < n; ++v) degree[v] = 2;
        std::size_t chords = 0;
        while (chords < n) {
            const NodeId u = static_cast<NodeId>(rng.below(n));
            const NodeId v = static_cast<NodeId>(rng.below(n));
            if (u == v || degree[u] >= 6 || degree[v] >= 6) continue;
            raw.push_back(EdgeUpdate{u, v, static_cast<Delta>(rng.range(1, 1000000))});
            ++degree[u];
            ++degree[v];
            ++chords;
        }
        out.batches.push_back(coalesce_batch(raw));
        const Batch inserted = out.batches[0];
        std::map<std::uint64_t, Weight> current;
        for (const EdgeUpdate& up : inserted.updates)
            current[edge_key(up.u, up.v)] = static_cast<Weight>(up.delta);
        // ten batches of 16 weight redraws on distinct edge slots: batch
        // size, degrees and the edge set stay fixed while n grows, and the
        // touched neighborhoods stay disjoint even at the smallest size
        for (int bi = 0; bi < 10; ++bi) {
            std::vector<EdgeUpdate> ups;
            std::set<std::size_t> picked;
            while (ups.size() < 16) {
                const std::size_t slot = rng.below(inserted.updates.size());
                if (!picked.insert(slot).second) continue;
                const EdgeUpdate& base = inserted.updates[slot];
                Weight& cur = current[edge_key(base.u, base.v)];
                Weight next = cur;
                while (next == cur) next = rng.range(1, 1000000);
                ups.push_back(EdgeUpdate{base.u, base.v,
                                         static_cast<Delta>(next) -
                                             static_cast<Delta>(cur)});
                cur = next;
            }
            out.batches.push_back(coalesce_batch(ups));
        }
    };

    const std::vector<NodeId> sizes{256, 512, 1024, 2048, 4096};
    const std::vector<std::string> locals{"batch-greedy", "batch-nc", "dyn-greedy",
                                          "dyn-kec"};
    std::map<std::string, std::vector<double>> writes; // algo -> per-size totals
    for (NodeId n : sizes) {
        Rng rng(n);
        InstanceStream s;
        build(n, rng, s);
        for (const std::string& algo : locals) {
            // count color writes over the update batches only (skip batch 0)
            Graph g(s.n);
            Coloring c(g, 4);
            auto driver = make_driver(algo, 1);
            std::uint64_t after_insert = 0;
            for (std::size_t bi = 0; bi < s.batches.size(); ++bi) {
                driver->begin_batch(g, c);
                Batch fwd;
                for (const EdgeUpdate& up : s.batches[bi].updates) {
                    const AppliedUpdate au = apply_and_classify(g, c, up);
                    fwd.updates.push_back(up);
                    driver->on_update(g, c, au);
                }
                driver->end_batch(g, c, fwd, fwd.size());
                if (bi == 0) after_insert = c.write_count();
            }
            writes[algo].push_back(
                static_cast<double>(c.write_count() - after_insert));
        }
        // kec from scratch per batch
        {
            Graph g(s.n);
            Coloring c(g, 4);
            auto driver = make_driver("kec", 1);
            std::uint64_t after_insert = 0;
            for (std::size_t bi = 0; bi < s.batches.size(); ++bi) {
                Batch fwd;
                for (const EdgeUpdate& up : s.batches[bi].updates)
                    (void)apply_and_classify(g, c, up);
                driver->end_batch(g, c, fwd, s.batches[bi].size());
                if (bi == 0) after_insert = c.write_count();
            }
            writes["kec"].push_back(
                static_cast<double>(c.write_count() - after_insert));
        }
    }

    std::string detail;
    bool pass = true;
    for (const std::string& algo : locals) {
        if (writes[algo].front() <= 0) {
            pass = false;
            detail += algo + " did no work; ";
            continue;
        }
        const double ratio = writes[algo].back() / writes[algo].front();
        char buf[80];
        std::snprintf(buf, sizeof buf, "%s x%.2f ", algo.c_str(), ratio);
        detail += buf;
        if (ratio >= 1.5) pass = false;
    }
    const double kec_ratio = writes["kec"].back() / writes["kec"].front();
    char buf[80];
    std::snprintf(buf, sizeof buf, "kec x%.1f (16x nodes)", kec_ratio);
    detail += buf;
    if (kec_ratio < 8.0) pass = false;
    return {5, "work locality", pass, detail};
}

// ----------------------------------------------------------- criteria 6 and 7

struct TrendOutcome {
    CriterionResult recourse;
    CriterionResult weight;
};

TrendOutcome criteria_trends() {
    struct Cell {
        double obar = 0;
        double sigma = 0;
    };
    // suite: 3 models x 2 deletion probabilities x 2 seeds, f = 0.1, k = 8
    std::vector<InstanceStream> instances;
    for (RmatModel model : {RmatModel::B, RmatModel::G, RmatModel::Er}) {
        for (double del_prob : {0.1, 0.3}) {
            for (std::uint64_t seed : {1ULL, 2ULL}) {
                RmatParams p;
                p.log_nodes = 9;
                p.model = model;
                p.fraction = 0.1;
                p.del_prob = del_prob;
                p.update_batches = 10;
                p.density = 8;
                p.seed = seed;
                instances.push_back(gen_rmat_dynamic(p));
            }
        }
    }

    struct AlgoSpec {
        std::string id;
        bool postprocess;
        std::optional<double> filter;
    };
    const std::vector<AlgoSpec> specs{{"kec", false, std::nullopt},
                                      {"dyn-greedy-r", true, 2.0},
                                      {"dyn-kec", true, 2.0},
                                      {"batch-2apx", false, std::nullopt}};

    std::map<std::string, std::vector<Cell>> cells;
    for (const AlgoSpec& spec : specs) {
        for (std::size_t ii = 0; ii < instances.size(); ++ii) {
            RunConfig cfg;
            cfg.instance_path = "rmat-" + std::to_string(ii);
            cfg.algo = spec.id;
            cfg.k = 8;
            cfg.seed = 1;
            cfg.repeats = algo_is_randomized(spec.id) ? 2 : 1;
            cfg.postprocess = spec.postprocess;
            cfg.filter_t = spec.filter;
            cfg.measure_recourse = true;
            const auto rows = run_experiment_on(instances[ii], cfg);
            std::vector<MetricsRecord> reduced;
            for (const auto& r : rows)
                if (r.repeat == -1) reduced.push_back(r);
            const PerInstanceStats st = compute_per_instance(reduced);
            cells[spec.id].push_back(Cell{st.obar.value_or(0), st.sigma.value_or(0)});
        }
    }

    bool recourse_pass = true;
    std::string recourse_detail;
    bool weight_pass = true;
    std::string weight_detail;
    for (const AlgoSpec& spec : specs) {
        if (spec.id == "kec") continue;
        std::vector<double> rel_recourse, rel_weight;
        std::size_t below_one = 0;
        for (std::size_t ii = 0; ii < instances.size(); ++ii) {
            const Cell& a = cells[spec.id][ii];
            const Cell& ref = cells["kec"][ii];
            if (ref.obar > 0) {
                rel_recourse.push_back(a.obar / ref.obar);
                if (a.obar / ref.obar < 1.0) ++below_one;
            }
            if (ref.sigma > 0) rel_weight.push_back(a.sigma / ref.sigma);
        }
        const double gm_rec = geometric_mean(rel_recourse);
        const double frac =
            static_cast<double>(below_one) / static_cast<double>(rel_recourse.size());
        char buf[120];
        std::snprintf(buf, sizeof buf, "%s gm=%.3f below1=%.0f%% ", spec.id.c_str(),
                      gm_rec, 100 * frac);
        recourse_detail += buf;
        if (gm_rec >= 0.95 || frac < 0.9) recourse_pass = false;

        if (spec.id != "batch-2apx") {
            const double gm_w = geometric_mean(rel_weight);
            std::snprintf(buf, sizeof buf, "%s relw=%.3f ", spec.id.c_str(), gm_w);
            weight_detail += buf;
            if (gm_w < 0.90) weight_pass = false;
        }
    }
    return {{6, "recourse trend", recourse_pass, recourse_detail},
            {7, "weight trend (k=8)", weight_pass, weight_detail}};
}

// ---------------------------------------------------------------- criterion 8

CriterionResult criterion_determinism() {
    const InstanceStream s = test::random_instance(77, 48, 12, 20, 5000);
    for (const std::string& algo : algo_ids()) {
        RunConfig cfg;
        cfg.instance_path = "det";
        cfg.algo = algo;
        cfg.k = 4;
        cfg.seed = 3;
        cfg.repeats = 2;
        auto strip = [](std::vector<MetricsRecord> rows) {
            for (auto& r : rows) r.time_ns.reset();
            std::ostringstream out;
            write_csv(rows, out);
            return out.str();
        };
        const std::string a = strip(run_experiment_on(s, cfg));
        const std::string b = strip(run_experiment_on(s, cfg));
        if (a != b)
            return {8, "determinism", false, algo + ": reruns differ beyond time"};
    }
    return {8, "determinism", true,
            "csv identical across reruns (time columns excluded) for all ids"};
}

// ---------------------------------------------------------------- criterion 9

CriterionResult criterion_filter_semantics() {
    Rng rng(55);
    std::size_t dropped = 0, kept = 0;
    for (int round = 0; round < 20; ++round) {
        Graph g(16);
        Coloring c(g, 2);
        for (int step = 0; step < 500; ++step) {
            const auto ups = test::random_updates(rng, 16, 1, g, 400);
            for (const EdgeUpdate& up : ups) {
                const Weight w_old = g.weight_between(up.u, up.v);
                const Weight w_new =
                    up.delta > 0 ? w_old + static_cast<Weight>(up.delta)
                                 : w_old - static_cast<Weight>(-up.delta);
                const FilterDecision d = filter_decision(2.0, w_old, w_new);
                if (d == FilterDecision::Drop) {
                    ++dropped;
                    // integer-exact restatement of the [1/2, 2] band
                    if (w_old == 0 || w_new == 0 || w_new > 2 * w_old ||
                        w_old > 2 * w_new)
                        return {9, "filter semantics", false,
                                "dropped update outside the band: " +
                                    std::to_string(w_old) + " -> " +
                                    std::to_string(w_new)};
                } else {
                    ++kept;
                }
                apply_update(g, c, up);
            }
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "%zu drops all inside [1/2,2] with positive weights; %zu kept",
                  dropped, kept);
    return {9, "filter semantics", dropped > 0, buf};
}

// --------------------------------------------------------------- criterion 10

CriterionResult criterion_split_roundtrip() {
    Rng seeds(123);
    auto weights_after = [](const InstanceStream& s) {
        std::vector<std::map<std::uint64_t, Weight>> out;
        std::map<std::uint64_t, Weight> cur;
        for (const Batch& b : s.batches) {
            for (const EdgeUpdate& up : b.updates) {
                Weight& w = cur[edge_key(up.u, up.v)];
                w = up.delta > 0 ? w + static_cast<Weight>(up.delta)
                                 : w - static_cast<Weight>(-up.delta);
                if (w == 0) cur.erase(edge_key(up.u, up.v));
            }
            out.push_back(cur);
        }
        return out;
    };

    for (int round = 0; round < 20; ++round) {
        // trace-shaped original: every active pair re-set or zeroed per batch
        Rng rng(seeds.next());
        InstanceStream original;
        original.n = 8;
        std::map<std::uint64_t, Weight> active;
        for (int bi = 0; bi < 6; ++bi) {
            std::map<std::uint64_t, Weight> next;
            for (int i = 0; i < 3; ++i) {
                const NodeId u = static_cast<NodeId>(rng.below(8));
                const NodeId v = static_cast<NodeId>(rng.below(8));
                if (u != v) next[edge_key(u, v)] = rng.range(1, 450);
            }
            std::vector<EdgeUpdate> raw;
            for (const auto& [key, w] : next) {
                const Weight old = active.count(key) ? active.at(key) : 0;
                if (w != old)
                    raw.push_back(EdgeUpdate{static_cast<NodeId>(key >> 32),
                                             static_cast<NodeId>(key & 0xffffffffu),
                                             static_cast<Delta>(w) -
                                                 static_cast<Delta>(old)});
            }
            for (const auto& [key, w] : active)
                if (!next.count(key))
                    raw.push_back(EdgeUpdate{static_cast<NodeId>(key >> 32),
                                             static_cast<NodeId>(key & 0xffffffffu),
                                             -static_cast<Delta>(w)});
            active = next;
            original.batches.push_back(coalesce_batch(raw));
        }

        SplitParams p;
        p.sub_batches = 5 * (1 + round % 4); // 5, 10, 15, 20
        p.cap = 100;
        p.seed = seeds.next();
        const InstanceStream split = split_instance(original, p);
        if (split.batches.size() != original.batches.size() * p.sub_batches)
            return {10, "split round-trip", false, "sub-batch count mismatch"};

        const auto orig_w = weights_after(original);
        const auto split_w = weights_after(split);

        std::size_t orig_updates = 0, split_updates = 0;
        for (const Batch& b : original.batches) orig_updates += b.size();
        for (const Batch& b : split.batches) split_updates += b.size();
        if (split_updates > 3 * orig_updates)
            return {10, "split round-trip", false, "more than 3 updates per update"};

        for (const auto& snap : split_w)
            for (const auto& [key, w] : snap)
                if (w > p.cap)
                    return {10, "split round-trip", false, "cap exceeded"};

        for (std::size_t bi = 0; bi < original.batches.size(); ++bi) {
            std::map<std::uint64_t, Weight> volume;
            for (std::uint32_t si = 0; si < p.sub_batches; ++si)
                for (const auto& [key, w] : split_w[bi * p.sub_batches + si])
                    volume[key] += w;
            for (const auto& [key, w] : orig_w[bi]) {
                auto it = volume.find(key);
                if ((it == volume.end() ? 0 : it->second) != w)
                    return {10, "split round-trip", false,
                            "volume differs from the original weight"};
            }
            for (const auto& [key, vol] : volume) {
                auto it = orig_w[bi].find(key);
                if (vol != (it == orig_w[bi].end() ? 0 : it->second))
                    return {10, "split round-trip", false,
                            "volume on an edge the original does not carry"};
            }
        }
    }
    return {10, "split round-trip", true,
            "20 instances: volumes exact, cap respected, <= 3 updates per update"};
}

} // namespace

int main() {
    std::vector<CriterionResult> results;
    results.push_back(criterion_properness());
    {
        const HalfApxOutcome o = criteria_half_approximation_and_queue();
        results.push_back(o.half_apx);
        results.push_back(o.queue_bound);
    }
    results.push_back(criterion_inductive_invariant());
    results.push_back(criterion_oracle_equivalence());
    results.push_back(criterion_work_locality());
    {
        const TrendOutcome o = criteria_trends();
        results.push_back(o.recourse);
        results.push_back(o.weight);
    }
    results.push_back(criterion_determinism());
    results.push_back(criterion_filter_semantics());
    results.push_back(criterion_split_roundtrip());

    std::sort(results.begin(), results.end(),
              [](const CriterionResult& a, const CriterionResult& b) {
                  return a.id < b.id;
              });
    bool all_pass = true;
    for (const CriterionResult& r : results) {
        std::printf("%s criterion %2d (%s): %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}
