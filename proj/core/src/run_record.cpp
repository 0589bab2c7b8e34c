#include "gaea/run_record.hpp"

#include <fstream>
#include <stdexcept>

namespace gaea {

using nlohmann::json;

namespace {

json point_to_json(const BlockPoint& p) {
    json out = json::array();
    for (const auto& b : p) out.push_back(b);
    return out;
}

BlockPoint point_from_json(const json& j) {
    BlockPoint p;
    for (const auto& b : j) p.push_back(b.get<Vec>());
    return p;
}

}  // namespace

void RunRecord::validate() const {
    const std::size_t n = loss.size();
    auto check = [&](std::size_t m, const char* what) {
        if (m != 0 && m != n)
            throw std::runtime_error(std::string("RunRecord: series length mismatch in ") + what);
    };
    check(chosen_block.size(), "chosen_block");
    check(grad_dual_norm.size(), "grad_dual_norm");
    check(step_size.size(), "step_size");
    check(entropy.size(), "entropy");
    check(iterate_hash.size(), "iterate_hash");
    for (const auto& [key, values] : extra_series) check(values.size(), key.c_str());
    if (!trajectory.empty() && trajectory.size() != n + 1)
        throw std::runtime_error("RunRecord: trajectory must hold horizon+1 iterates");
}

json record_to_json(const RunRecord& r) {
    r.validate();
    json j;
    j["schema_version"] = r.schema_version;
    j["seed"] = r.seed;
    j["config"] = r.config;
    j["block_names"] = r.block_names;
    json series;
    series["chosen_block"] = r.chosen_block;
    series["loss"] = r.loss;
    series["grad_dual_norm"] = r.grad_dual_norm;
    series["step_size"] = r.step_size;
    series["entropy"] = r.entropy;
    series["iterate_hash"] = r.iterate_hash;
    for (const auto& [key, values] : r.extra_series) series[key] = values;
    j["series"] = series;
    j["output_index"] = r.output_index;
    j["output_point"] = point_to_json(r.output_point);
    j["final_point"] = point_to_json(r.final_point);
    if (r.has_stationarity) j["output_stationarity"] = r.output_stationarity;
    j["wall_clock_sec"] = r.wall_clock_sec;
    if (!r.trajectory.empty()) {
        json t = json::array();
        for (const auto& p : r.trajectory) t.push_back(point_to_json(p));
        j["trajectory"] = t;
    }
    return j;
}

RunRecord record_from_json(const json& j) {
    RunRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kRecordSchemaVersion)
        throw std::runtime_error("record_from_json: unsupported schema_version " +
                                 std::to_string(r.schema_version));
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = j.at("config");
    r.block_names = j.at("block_names").get<std::vector<std::string>>();
    const json& s = j.at("series");
    r.chosen_block = s.at("chosen_block").get<std::vector<int>>();
    r.loss = s.at("loss").get<std::vector<double>>();
    r.grad_dual_norm = s.at("grad_dual_norm").get<std::vector<double>>();
    r.step_size = s.at("step_size").get<std::vector<double>>();
    r.entropy = s.at("entropy").get<std::vector<double>>();
    r.iterate_hash = s.at("iterate_hash").get<std::vector<std::uint64_t>>();
    static const char* known[] = {"chosen_block", "loss", "grad_dual_norm",
                                  "step_size",    "entropy", "iterate_hash"};
    for (auto it = s.begin(); it != s.end(); ++it) {
        bool is_known = false;
        for (const char* k : known) is_known = is_known || it.key() == k;
        if (!is_known) r.extra_series[it.key()] = it.value().get<std::vector<double>>();
    }
    r.output_index = j.at("output_index").get<int>();
    r.output_point = point_from_json(j.at("output_point"));
    r.final_point = point_from_json(j.at("final_point"));
    if (j.contains("output_stationarity")) {
        r.has_stationarity = true;
        r.output_stationarity = j.at("output_stationarity").get<double>();
    }
    r.wall_clock_sec = j.value("wall_clock_sec", 0.0);
    if (j.contains("trajectory"))
        for (const auto& p : j.at("trajectory")) r.trajectory.push_back(point_from_json(p));
    r.validate();
    return r;
}

bool same_trajectory(const RunRecord& a, const RunRecord& b) {
    json ja = record_to_json(a);
    json jb = record_to_json(b);
    ja.erase("wall_clock_sec");
    jb.erase("wall_clock_sec");
    return ja == jb;
}

void save_record(const RunRecord& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_record: cannot open " + path);
    out << record_to_json(r).dump(2) << "\n";
}

RunRecord load_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_record: cannot open " + path);
    json j;
    in >> j;
    return record_from_json(j);
}

}  // namespace gaea
