#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "djm/bench.hpp"
#include "djm/enhancers.hpp"
#include "djm/errors.hpp"
#include "djm/instance.hpp"
#include "djm/oracle.hpp"

namespace {

int cmd_run(const djm::RunConfig& cfg, const std::string& out_path) {
    const std::vector<djm::MetricsRecord> rows = djm::run_experiment(cfg);
    std::ofstream out(out_path);
    if (!out) throw djm::data_error("cannot open '" + out_path + "' for writing");
    djm::write_csv(rows, out);
    return 0;
}

int cmd_verify(const std::string& in_path, djm::Color k,
               std::size_t oracle_max_edges) {
    const djm::InstanceStream stream = djm::read_djm_file(in_path);
    djm::Graph g(stream.n);
    djm::Coloring c(g, k);
    djm::Batch2Apx apx;
    for (std::size_t bi = 0; bi < stream.batches.size(); ++bi) {
        for (const djm::EdgeUpdate& up : stream.batches[bi].updates)
            apx.observe(djm::apply_and_classify(g, c, up));
        apx.end_batch(g, c);
        const djm::ValidationReport report = djm::validate(g, c);
        if (!report.ok) {
            std::cerr << "batch " << bi << ": " << report.message << "\n";
            return 3;
        }
        if (g.present_edge_count() <= oracle_max_edges) {
            const auto opt = djm::brute_force_opt(g, k, oracle_max_edges);
            if (2 * c.colored_weight() < opt.weight) {
                std::cerr << "batch " << bi << ": weight " << c.colored_weight()
                          << " below half of the optimum " << opt.weight << "\n";
                return 3;
            }
        }
    }
    std::cout << "ok: " << stream.batches.size() << " batches, " << stream.n
              << " nodes\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k edge-disjoint matchings under dynamic weight updates"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "replay an instance through an algorithm");
    djm::RunConfig cfg;
    std::string run_out;
    run->add_option("--algo", cfg.algo, "algorithm id")->required();
    run->add_option("--k", cfg.k, "number of matchings")->required();
    run->add_option("--input", cfg.instance_path, "instance file")->required();
    run->add_option("--repeats", cfg.repeats, "repetitions per experiment")
        ->default_val(3);
    run->add_option("--seed", cfg.seed, "base seed")->default_val(1);
    double filter_t = 0;
    auto* filter_opt =
        run->add_option("--filter", filter_t, "drop changes within ratio [1/t, t]");
    run->add_flag("--postprocess", cfg.postprocess,
                  "re-establish the domination invariant after each batch");
    run->add_flag("--measure-recourse", cfg.measure_recourse,
                  "snapshot colorings and report recourse instead of times");
    run->add_option("--out", run_out, "output csv")->required();

    // gen-rmat
    auto* gen = app.add_subcommand("gen-rmat", "generate a synthetic dynamic instance");
    djm::RmatParams rmat;
    std::string gen_model = "b", gen_out;
    gen->add_option("--log-nodes", rmat.log_nodes, "log2 of the node count")
        ->required();
    gen->add_option("--model", gen_model, "initiator matrix: b, g or er")
        ->default_val("b");
    gen->add_option("--fraction", rmat.fraction, "edges updated per batch")
        ->default_val(0.1);
    gen->add_option("--del-prob", rmat.del_prob, "deletion probability")
        ->default_val(0.1);
    gen->add_option("--update-batches", rmat.update_batches, "batches after the insert")
        ->default_val(30);
    gen->add_option("--density", rmat.density, "edges per node")->default_val(8);
    gen->add_option("--weight-mean", rmat.weight_mean,
                    "mean of the truncated exponential weights")
        ->default_val(50000.0);
    gen->add_option("--seed", rmat.seed, "generator seed")->default_val(1);
    gen->add_option("--out", gen_out, "output instance")->required();

    // split
    auto* split = app.add_subcommand("split", "spread batches over capped sub-batches");
    djm::SplitParams sp;
    std::string split_in, split_out;
    split->add_option("--sub-batches", sp.sub_batches, "sub-batches per batch")
        ->required();
    split->add_option("--cap", sp.cap, "weight cap per sub-batch")->required();
    split->add_option("--seed", sp.seed, "window placement seed")->default_val(1);
    split->add_option("--in", split_in, "input instance")->required();
    split->add_option("--out", split_out, "output instance")->required();

    // ingest
    auto* ingest = app.add_subcommand("ingest", "convert a packet trace");
    std::uint64_t group = 0;
    std::string fmt = "ts", ingest_in, ingest_out;
    ingest->add_option("--group", group, "timestamps per batch")->required();
    ingest->add_option("--format", fmt, "ts (timestamped sizes) or seq (packet counts)")
        ->default_val("ts");
    ingest->add_option("--in", ingest_in, "trace file")->required();
    ingest->add_option("--out", ingest_out, "output instance")->required();

    // aggregate
    auto* agg = app.add_subcommand("aggregate", "relative metrics against a reference");
    std::string reference = "kec", dataset = "all", agg_out;
    std::vector<std::string> agg_in;
    agg->add_option("--reference", reference, "reference algorithm id")
        ->default_val("kec");
    agg->add_option("--dataset", dataset, "dataset label for the output")
        ->default_val("all");
    agg->add_option("--in", agg_in, "metrics csv files")->required()->expected(-1);
    agg->add_option("--out", agg_out, "output csv")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "replay and validate an instance");
    std::string verify_in;
    djm::Color verify_k = 2;
    std::size_t oracle_max_edges = 20;
    verify->add_option("--in", verify_in, "instance file")->required();
    verify->add_option("--k", verify_k, "number of matchings")->required();
    verify->add_option("--oracle-max-edges", oracle_max_edges,
                       "compare against the exact optimum up to this size")
        ->default_val(20);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (filter_opt->count() > 0) cfg.filter_t = filter_t;
            return cmd_run(cfg, run_out);
        }
        if (gen->parsed()) {
            if (gen_model == "b")
                rmat.model = djm::RmatModel::B;
            else if (gen_model == "g")
                rmat.model = djm::RmatModel::G;
            else if (gen_model == "er")
                rmat.model = djm::RmatModel::Er;
            else
                throw djm::usage_error("unknown model '" + gen_model + "'");
            djm::write_djm_file(djm::gen_rmat_dynamic(rmat), gen_out);
            return 0;
        }
        if (split->parsed()) {
            djm::write_djm_file(
                djm::split_instance(djm::read_djm_file(split_in), sp), split_out);
            return 0;
        }
        if (ingest->parsed()) {
            djm::TraceFormat format;
            if (fmt == "ts")
                format = djm::TraceFormat::Timestamp;
            else if (fmt == "seq")
                format = djm::TraceFormat::Sequence;
            else
                throw djm::usage_error("unknown trace format '" + fmt + "'");
            djm::write_djm_file(djm::ingest_trace_file(ingest_in, group, format),
                                ingest_out);
            return 0;
        }
        if (agg->parsed()) {
            std::vector<djm::MetricsRecord> rows;
            for (const std::string& path : agg_in) {
                auto part = djm::read_csv_file(path);
                rows.insert(rows.end(), part.begin(), part.end());
            }
            const auto agg_rows = djm::aggregate_relative(rows, reference, dataset);
            std::ofstream out(agg_out);
            if (!out)
                throw djm::data_error("cannot open '" + agg_out + "' for writing");
            djm::write_aggregate_csv(agg_rows, out);
            return 0;
        }
        if (verify->parsed()) return cmd_verify(verify_in, verify_k, oracle_max_edges);
    } catch (const djm::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const djm::data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const djm::internal_error& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
