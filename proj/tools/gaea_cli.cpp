// gaea command line: run experiment specs, aggregate record directories,
// render SVG plots, rank architectures with the enumeration oracle, and run
// the verification suite.
#include "gaea/acceptance.hpp"
#include "gaea/harness.hpp"
#include "gaea/supernet.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

int cmd_run(const std::string& spec_path) {
    gaea::ExperimentSpec spec = gaea::ExperimentSpec::load(spec_path);
    auto outcomes = gaea::run_experiment(spec);
    int failures = 0;
    for (const auto& o : outcomes) {
        if (o.ok) {
            std::printf("seed %llu: ok%s%s\n", static_cast<unsigned long long>(o.seed),
                        o.record_path.empty() ? "" : " -> ", o.record_path.c_str());
        } else {
            ++failures;
            std::printf("seed %llu: FAILED: %s\n", static_cast<unsigned long long>(o.seed),
                        o.error.c_str());
        }
    }
    std::printf("%zu/%zu seeds succeeded\n", outcomes.size() - failures, outcomes.size());
    return failures == 0 ? 0 : 1;
}

int cmd_aggregate(const std::string& dir, std::string out_path) {
    std::vector<gaea::RunRecord> records;
    std::vector<std::string> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("record_", 0) == 0 && entry.path().extension() == ".json")
            paths.push_back(entry.path().string());
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) records.push_back(gaea::load_record(p));
    if (records.empty()) {
        std::fprintf(stderr, "aggregate: no record_*.json files in %s\n", dir.c_str());
        return 1;
    }
    gaea::Summary summary = gaea::aggregate(records);
    if (out_path.empty()) out_path = dir + "/summary.json";
    summary.save(out_path);
    std::printf("aggregated %zu records -> %s\n", records.size(), out_path.c_str());
    return 0;
}

int cmd_plot(const std::vector<std::string>& summary_paths, const std::string& kind,
             const std::string& out_path) {
    std::vector<gaea::Summary> summaries;
    for (const auto& p : summary_paths) summaries.push_back(gaea::Summary::load(p));
    gaea::emit_plot(summaries, gaea::plot_kind_from_name(kind), out_path);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_oracle(const std::string& space_path, const std::string& csv, int n, double noise,
               std::uint64_t data_seed, const std::vector<int>& planted_ops, int epochs,
               int batch, double eta_w, std::uint64_t seed, int top,
               const std::string& json_out) {
    gaea::SearchSpace space = gaea::SearchSpace::load(space_path);
    gaea::DataSet data;
    if (!csv.empty()) {
        data = gaea::DataSet::load_csv(csv, space.feat_dim);
    } else {
        gaea::DiscreteArchitecture planted;
        planted.op_per_edge = planted_ops.empty()
                                  ? std::vector<int>(static_cast<std::size_t>(space.num_edges()), 0)
                                  : planted_ops;
        gaea::Vec planted_w = gaea::init_shared_weights(space, data_seed ^ 0x5eedULL);
        data = gaea::make_planted_dataset(space, planted, planted_w, n, noise, data_seed);
    }
    gaea::OracleTrainConfig cfg;
    cfg.epochs = epochs;
    cfg.batch_size = batch;
    cfg.eta_w = eta_w;
    cfg.seed = seed;
    auto ranked = gaea::enumerate_oracle(space, data, cfg);
    const int shown = top > 0 ? std::min<int>(top, static_cast<int>(ranked.size()))
                              : static_cast<int>(ranked.size());
    std::printf("rank  loss          architecture\n");
    for (int i = 0; i < shown; ++i)
        std::printf("%4d  %.6e  %s\n", i + 1, ranked[static_cast<std::size_t>(i)].final_loss,
                    ranked[static_cast<std::size_t>(i)].arch.describe(space).c_str());
    if (!json_out.empty()) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : ranked)
            j.push_back({{"ops", r.arch.op_per_edge}, {"loss", r.final_loss}});
        std::ofstream out(json_out);
        out << j.dump(2) << "\n";
        std::printf("wrote %s\n", json_out.c_str());
    }
    return 0;
}

int cmd_verify(const std::string& golden_dir, const std::vector<int>& only, bool quiet) {
    gaea::acceptance::AcceptanceConfig cfg;
    cfg.golden_dir = golden_dir;
    cfg.only = only;
    cfg.verbose = !quiet;
    auto results = gaea::acceptance::run_acceptance(cfg);
    if (quiet)
        for (const auto& r : results)
            std::printf("%s\n", gaea::acceptance::format_result(r).c_str());
    const bool ok = gaea::acceptance::all_passed(results);
    std::printf("%s\n", ok ? "verification passed" : "verification FAILED");
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometry-aware block-stochastic mirror descent toolkit"};
    app.require_subcommand(1);

    std::string spec_path;
    auto* run = app.add_subcommand("run", "execute an experiment spec over its seed list");
    run->add_option("spec", spec_path, "experiment spec JSON")->required();

    std::string agg_dir, agg_out;
    auto* agg = app.add_subcommand("aggregate", "reduce a directory of run records to a summary");
    agg->add_option("dir", agg_dir, "directory holding record_*.json")->required();
    agg->add_option("-o,--out", agg_out, "summary output path (default <dir>/summary.json)");

    std::vector<std::string> plot_inputs;
    std::string plot_kind = "loss", plot_out = "plot.svg";
    auto* plot = app.add_subcommand("plot", "render a summary (or several) as a static SVG");
    plot->add_option("summaries", plot_inputs, "summary JSON files")->required();
    plot->add_option("--kind", plot_kind, "entropy | loss | stationarity-vs-T");
    plot->add_option("-o,--out", plot_out, "output SVG path");

    std::string oracle_space, oracle_csv, oracle_json;
    int oracle_n = 256, oracle_epochs = 40, oracle_batch = 16, oracle_top = 0;
    double oracle_noise = 0.02, oracle_eta_w = 0.08;
    std::uint64_t oracle_data_seed = 17, oracle_seed = 0;
    std::vector<int> oracle_planted;
    auto* oracle = app.add_subcommand("oracle", "train and rank every discrete architecture");
    oracle->add_option("space", oracle_space, "search-space description JSON")->required();
    oracle->add_option("--data", oracle_csv, "dataset CSV (feature and target columns)");
    oracle->add_option("--n", oracle_n, "generated dataset size");
    oracle->add_option("--noise", oracle_noise, "generated dataset noise std");
    oracle->add_option("--data-seed", oracle_data_seed, "generated dataset seed");
    oracle->add_option("--planted-ops", oracle_planted, "per-edge op ids of the planted cell");
    oracle->add_option("--epochs", oracle_epochs, "training epochs per architecture");
    oracle->add_option("--batch", oracle_batch, "minibatch size");
    oracle->add_option("--eta-w", oracle_eta_w, "weight learning rate");
    oracle->add_option("--seed", oracle_seed, "training seed");
    oracle->add_option("--top", oracle_top, "print only the best N");
    oracle->add_option("--json", oracle_json, "also write the full ranking as JSON");

    std::string golden_dir = "data/golden";
    std::vector<int> verify_only;
    bool verify_quiet = false;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite (nonzero exit on failure)");
    verify->add_option("--golden-dir", golden_dir, "directory with the frozen golden records");
    verify->add_option("--only", verify_only, "criterion ids to run (default: all)");
    verify->add_flag("--quiet", verify_quiet, "suppress progress, print only the result lines");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(spec_path);
        if (agg->parsed()) return cmd_aggregate(agg_dir, agg_out);
        if (plot->parsed()) return cmd_plot(plot_inputs, plot_kind, plot_out);
        if (oracle->parsed())
            return cmd_oracle(oracle_space, oracle_csv, oracle_n, oracle_noise, oracle_data_seed,
                              oracle_planted, oracle_epochs, oracle_batch, oracle_eta_w,
                              oracle_seed, oracle_top, oracle_json);
        if (verify->parsed()) return cmd_verify(golden_dir, verify_only, verify_quiet);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
