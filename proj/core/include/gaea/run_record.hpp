// Full trajectory record of one optimization run: config echo, per-iteration
// metric arrays, iterate fingerprints, and the designated output iterate.
// Serialization is deterministic (sorted keys, shortest round-trip doubles)
// so reruns with equal seeds produce byte-identical bodies apart from the
// wall-clock field.
#pragma once

#include "gaea/geometry.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gaea {

inline constexpr int kRecordSchemaVersion = 1;

struct RunRecord {
    int schema_version = kRecordSchemaVersion;
    nlohmann::json config;  // problem / variant / run parameters, iteration unit
    std::uint64_t seed = 0;
    std::vector<std::string> block_names;

    // Per-iteration (or per-epoch) series; lengths all equal the horizon.
    std::vector<int> chosen_block;          // empty when both blocks step every tick
    std::vector<double> loss;               // sampled loss at the post-update point
    std::vector<double> grad_dual_norm;     // drawn gradient, measured in its block's dual norm
    std::vector<double> step_size;          // effective step applied at t
    std::vector<double> entropy;            // mean per-simplex entropy; empty if no simplex block
    std::vector<std::uint64_t> iterate_hash;

    // Additional named series (e.g. per-block gradient norms of the search
    // loops, validation loss in bilevel mode). Same length as loss.
    std::map<std::string, std::vector<double>> extra_series;

    BlockPoint output_point;  // the iterate the algorithm designates as output
    int output_index = 0;     // t in [1, T] for random-iterate modes, T+1 for last-iterate
    BlockPoint final_point;   // x^(T+1)

    bool has_stationarity = false;
    double output_stationarity = 0.0;  // filled offline by the measurement pass

    double wall_clock_sec = 0.0;

    std::vector<BlockPoint> trajectory;  // optional x^(1..T+1); kept on request

    int horizon() const { return static_cast<int>(loss.size()); }
    /// Checks all populated series share one length.
    void validate() const;
};

nlohmann::json record_to_json(const RunRecord& r);
RunRecord record_from_json(const nlohmann::json& j);

/// Everything except wall-clock compares equal (exact doubles, hashes,
/// iterates). This is the determinism / golden-regression comparator.
bool same_trajectory(const RunRecord& a, const RunRecord& b);

void save_record(const RunRecord& r, const std::string& path);
RunRecord load_record(const std::string& path);

}  // namespace gaea
