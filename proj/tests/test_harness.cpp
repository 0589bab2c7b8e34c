#include "gaea/harness.hpp"

#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>

using namespace gaea;
using nlohmann::json;

namespace {

json minimal_spec_json() {
    return json{{"schema_version", 1},
                {"problem", "rwc_benchmark"},
                {"problem_params", {{"n_w", 2}, {"n_theta", 3}, {"gamma", 1.0}}},
                {"variant", "gaea-eg"},
                {"variant_params", {{"eta_w", 0.05}, {"eta_theta", 0.1}}},
                {"run", {{"T", 12}}},
                {"seeds", {1, 2}},
                {"output_dir", ""}};
}

std::filesystem::path temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("gaea_harness_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("spec schema errors name the offending field") {
    json ok = minimal_spec_json();
    CHECK_NOTHROW(ExperimentSpec::from_json(ok));

    json missing = ok;
    missing.erase("seeds");
    try {
        ExperimentSpec::from_json(missing);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("seeds") != std::string::npos);
    }

    json bad_type = ok;
    bad_type["run"]["T"] = "twelve";
    try {
        ExperimentSpec::from_json(bad_type);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("T") != std::string::npos);
    }

    json bad_variant = ok;
    bad_variant["variant"] = "adamw";
    CHECK_THROWS_AS(ExperimentSpec::from_json(bad_variant), std::invalid_argument);
}

TEST_CASE("run_experiment writes one deterministic record per seed") {
    auto dir = temp_dir("records");
    ExperimentSpec spec = ExperimentSpec::from_json(minimal_spec_json());
    spec.output_dir = dir.string();

    std::vector<RunRecord> records;
    auto outcomes = run_experiment(spec, &records);
    REQUIRE(outcomes.size() == 2);
    CHECK(outcomes[0].ok);
    CHECK(outcomes[1].ok);
    CHECK(records.size() == 2);
    CHECK(std::filesystem::exists(outcomes[0].record_path));
    CHECK(std::filesystem::exists(outcomes[1].record_path));

    // Rerun: byte-identical bodies apart from the wall-clock field.
    std::vector<RunRecord> again;
    run_experiment(spec, &again);
    for (int i = 0; i < 2; ++i) {
        json a = record_to_json(records[static_cast<std::size_t>(i)]);
        json b = record_to_json(again[static_cast<std::size_t>(i)]);
        a.erase("wall_clock_sec");
        b.erase("wall_clock_sec");
        CHECK(a.dump() == b.dump());
    }

    // Records parse back from disk to the same trajectory and re-aggregate
    // to the same summary.
    RunRecord loaded = load_record(outcomes[0].record_path);
    CHECK(same_trajectory(loaded, records[0]));
    std::vector<RunRecord> reloaded;
    for (const auto& o : outcomes) reloaded.push_back(load_record(o.record_path));
    CHECK(aggregate(reloaded).to_json().dump() == aggregate(records).to_json().dump());

    std::filesystem::remove_all(dir);
}

TEST_CASE("per-seed failures are isolated") {
    ExperimentSpec spec = ExperimentSpec::from_json(minimal_spec_json());
    spec.problem_params["n_theta"] = 4;  // not a multiple of 3: every seed fails
    std::vector<RunRecord> records;
    auto outcomes = run_experiment(spec, &records);
    REQUIRE(outcomes.size() == 2);
    CHECK_FALSE(outcomes[0].ok);
    CHECK_FALSE(outcomes[1].ok);
    CHECK(outcomes[0].error.find("multiple of 3") != std::string::npos);
    CHECK(records.empty());
}

TEST_CASE("aggregate medians and bands") {
    auto make_record = [](std::vector<double> losses, std::uint64_t seed) {
        RunRecord r;
        r.seed = seed;
        r.config["problem"] = "toy";
        r.loss = std::move(losses);
        r.grad_dual_norm.assign(r.loss.size(), 1.0);
        r.step_size.assign(r.loss.size(), 0.1);
        r.chosen_block.assign(r.loss.size(), 0);
        r.iterate_hash.assign(r.loss.size(), 7);
        r.output_point = {{0.0}};
        r.final_point = {{0.0}};
        r.output_index = static_cast<int>(r.loss.size()) + 1;
        return r;
    };

    SUBCASE("single record: summary equals the record") {
        auto r = make_record({3.0, 2.0, 1.0}, 1);
        Summary s = aggregate({r});
        CHECK(s.series.at("loss").median == std::vector<double>{3.0, 2.0, 1.0});
        CHECK(s.series.at("loss").q25 == s.series.at("loss").q75);
        CHECK(s.final_metrics.at("final_loss").at("median").get<double>() == 1.0);
    }

    SUBCASE("constant metric across seeds gives a zero-width band") {
        Summary s = aggregate({make_record({5.0, 4.0}, 1), make_record({5.0, 4.0}, 2),
                               make_record({5.0, 4.0}, 3)});
        CHECK(s.series.at("loss").q25 == s.series.at("loss").q75);
        CHECK(s.series.at("loss").q25 == s.series.at("loss").median);
    }

    SUBCASE("three-record toy matches hand-computed medians") {
        Summary s = aggregate({make_record({1.0, 2.0, 10.0}, 1), make_record({3.0, 5.0, 6.0}, 2),
                               make_record({2.0, 4.0, 8.0}, 3)});
        CHECK(s.series.at("loss").median == std::vector<double>{2.0, 4.0, 8.0});
    }

    SUBCASE("horizon mismatch is a schema error") {
        CHECK_THROWS_AS(aggregate({make_record({1.0}, 1), make_record({1.0, 2.0}, 2)}),
                        std::invalid_argument);
    }
}

TEST_CASE("quantiles interpolate linearly") {
    CHECK(quantile({1.0, 2.0, 3.0}, 0.5) == 2.0);
    CHECK(quantile({4.0, 1.0, 3.0, 2.0}, 0.5) == doctest::Approx(2.5));
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.25) == doctest::Approx(1.75));
    CHECK(quantile({5.0}, 0.75) == 5.0);
}

TEST_CASE("svg plots embed series and the fitted slope") {
    auto dir = temp_dir("plots");

    SUBCASE("two-variant entropy plot carries two labeled series") {
        auto make_summary = [&](const std::string& label, double level) {
            RunRecord r;
            r.seed = 0;
            r.config["variant"] = label;
            r.config["iteration_unit"] = "epoch";
            r.loss = {1.0, 0.5, 0.2};
            r.entropy = {level, level * 0.8, level * 0.5};
            r.output_point = {{0.0}};
            r.final_point = {{0.0}};
            r.output_index = 4;
            return aggregate({r});
        };
        Summary a = make_summary("gaea-eg", 1.0);
        Summary b = make_summary("softmax-baseline", 1.1);
        const std::string path = (dir / "entropy.svg").string();
        emit_plot({a, b}, PlotKind::entropy, path);
        std::ifstream in(path);
        std::string svg((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        CHECK(svg.find("gaea-eg") != std::string::npos);
        CHECK(svg.find("softmax-baseline") != std::string::npos);
        CHECK(svg.find("<polyline") != std::string::npos);
        CHECK(svg.find("<polygon") == std::string::npos);  // zero-width band: line only
        CHECK(svg.find("<svg") != std::string::npos);
    }

    SUBCASE("stationarity-vs-T log-log plot annotates the fitted slope") {
        std::vector<Summary> summaries;
        for (long long T : {64, 256, 1024, 4096}) {
            Summary s;
            s.meta["horizon"] = T;
            s.meta["label"] = "rwc";
            s.meta["config"] = json::object();
            const double delta = 8.0 / std::sqrt(static_cast<double>(T));  // exact -1/2 slope
            s.final_metrics["output_stationarity"] = {
                {"median", delta}, {"q25", delta * 0.9}, {"q75", delta * 1.1}};
            summaries.push_back(std::move(s));
        }
        const std::string path = (dir / "stat.svg").string();
        emit_plot(summaries, PlotKind::stationarity_vs_T, path);
        std::ifstream in(path);
        std::string svg((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        CHECK(svg.find("fitted slope = -0.5") != std::string::npos);
    }

    SUBCASE("missing series is an error") {
        Summary empty;
        empty.meta["config"] = json::object();
        CHECK_THROWS_AS(emit_plot({empty}, PlotKind::entropy, (dir / "x.svg").string()),
                        std::invalid_argument);
    }

    std::filesystem::remove_all(dir);
}

TEST_CASE("plot kind names") {
    CHECK(plot_kind_from_name("entropy") == PlotKind::entropy);
    CHECK(plot_kind_from_name("loss") == PlotKind::loss);
    CHECK(plot_kind_from_name("stationarity-vs-T") == PlotKind::stationarity_vs_T);
    CHECK_THROWS_AS(plot_kind_from_name("pie"), std::invalid_argument);
}

TEST_SUITE_END();
