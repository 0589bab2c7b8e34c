// Experiment harness: a JSON experiment spec names a problem and an optimizer
// variant, fans runs out over a seed list, and writes one RunRecord per seed.
// Aggregation reduces homogeneous records to per-iteration medians with
// interquartile bands; plots are self-contained SVG with numbers as plain
// text so artifacts diff cleanly.
#pragma once

#include "gaea/blockmd.hpp"
#include "gaea/run_record.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace gaea {

inline constexpr int kSpecSchemaVersion = 1;

struct ExperimentSpec {
    int schema_version = kSpecSchemaVersion;
    std::string problem;  // "simplex_linear" | "rwc_benchmark" | "supernet_toy"
    nlohmann::json problem_params;
    std::string variant;  // "gaea-eg" | "euclidean-sgd" | "softmax-baseline" | "score-function"
    nlohmann::json variant_params;
    RunConfig run;  // seed field is overridden by each entry of seeds
    std::vector<std::uint64_t> seeds;
    std::string output_dir;
    bool measure_stationarity = false;

    /// Throws with the offending field name on schema violations.
    static ExperimentSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    static ExperimentSpec load(const std::string& path);
};

struct SeedOutcome {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;        // set when ok is false
    std::string record_path;  // set when written to disk
};

/// Executes one run per seed, isolating per-seed failures. Records are
/// written to spec.output_dir as record_seed<seed>.json when output_dir is
/// nonempty; records[] returns them in seed order regardless.
std::vector<SeedOutcome> run_experiment(const ExperimentSpec& spec,
                                        std::vector<RunRecord>* records = nullptr);

/// Single run for one seed (the unit run_experiment fans out).
RunRecord run_single(const ExperimentSpec& spec, std::uint64_t seed);

struct SeriesSummary {
    std::vector<double> median;
    std::vector<double> q25;
    std::vector<double> q75;
};

struct Summary {
    int schema_version = kSpecSchemaVersion;
    nlohmann::json meta;  // problem/variant/horizon echo, seed count, label
    std::map<std::string, SeriesSummary> series;
    nlohmann::json final_metrics;  // per-metric {median, q25, q75} of final values

    nlohmann::json to_json() const;
    static Summary from_json(const nlohmann::json& j);
    static Summary load(const std::string& path);
    void save(const std::string& path) const;
};

/// Per-iteration median and interquartile band across seeds, plus a
/// final-metric table. Records must share one schema (same series names and
/// horizon); throws otherwise.
Summary aggregate(const std::vector<RunRecord>& records);

/// Linear-interpolation quantile of an unsorted sample (p in [0,1]).
double quantile(std::vector<double> values, double p);

enum class PlotKind { entropy, loss, stationarity_vs_T };
PlotKind plot_kind_from_name(const std::string& name);

/// Writes a static SVG: one median line (plus IQR band when non-degenerate)
/// per summary. stationarity_vs_T is a log-log scatter of the final
/// stationarity medians against the horizon with a least-squares slope
/// annotation. Throws when a summary lacks the requested series.
void emit_plot(const std::vector<Summary>& summaries, PlotKind kind, const std::string& out_path);

}  // namespace gaea
