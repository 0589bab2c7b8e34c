#include "gaea/harness.hpp"

#include "gaea/problems.hpp"
#include "gaea/stationarity.hpp"
#include "gaea/supernet.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gaea {

using nlohmann::json;

namespace {

[[noreturn]] void spec_error(const std::string& field, const std::string& why) {
    throw std::invalid_argument("ExperimentSpec: field '" + field + "' " + why);
}

template <typename T>
T spec_get(const json& j, const std::string& field) {
    if (!j.contains(field)) spec_error(field, "is missing");
    try {
        return j.at(field).get<T>();
    } catch (const json::exception&) {
        spec_error(field, "has the wrong type");
    }
}

RunConfig run_config_from_json(const json& j) {
    RunConfig cfg;
    cfg.T = spec_get<int>(j, "T");
    if (cfg.T < 1) spec_error("run.T", "must be >= 1");
    const std::string sel = j.value("selection", std::string("cyclic"));
    if (sel == "cyclic")
        cfg.selection = BlockSelection::cyclic;
    else if (sel == "uniform_random")
        cfg.selection = BlockSelection::uniform_random;
    else
        spec_error("run.selection", "must be 'cyclic' or 'uniform_random'");
    const std::string out = j.value("output", std::string("last_iterate"));
    if (out == "last_iterate")
        cfg.output = IterateOutput::last_iterate;
    else if (out == "weighted_random")
        cfg.output = IterateOutput::weighted_random;
    else
        spec_error("run.output", "must be 'last_iterate' or 'weighted_random'");
    if (j.contains("schedule")) {
        if (j.at("schedule").is_string() && j.at("schedule") == "constant")
            cfg.schedule = StepSchedule::constant();
        else if (j.at("schedule").is_array())
            cfg.schedule = StepSchedule::sequence(j.at("schedule").get<std::vector<double>>());
        else
            spec_error("run.schedule", "must be 'constant' or an array of multipliers");
    }
    cfg.keep_iterates = j.value("keep_iterates", false);
    return cfg;
}

json run_config_to_json(const RunConfig& cfg) {
    json j;
    j["T"] = cfg.T;
    j["selection"] = cfg.selection == BlockSelection::cyclic ? "cyclic" : "uniform_random";
    j["output"] = cfg.output == IterateOutput::last_iterate ? "last_iterate" : "weighted_random";
    if (cfg.schedule.is_constant())
        j["schedule"] = "constant";
    else
        j["schedule"] = cfg.schedule.multipliers;
    j["keep_iterates"] = cfg.keep_iterates;
    return j;
}

SearchMode search_mode_from_params(const json& vp) {
    const std::string mode = vp.value("mode", std::string("single_level"));
    if (mode == "single_level") return SearchMode::single_level;
    if (mode == "bilevel") return SearchMode::bilevel;
    spec_error("variant_params.mode", "must be 'single_level' or 'bilevel'");
}

SearchOptions search_options_from_params(const json& vp) {
    SearchOptions opts;
    opts.eta_w = vp.value("eta_w", opts.eta_w);
    opts.warmup_epochs = vp.value("warmup_epochs", opts.warmup_epochs);
    opts.batch_size = vp.value("batch_size", opts.batch_size);
    opts.lambda_reg = vp.value("lambda_reg", opts.lambda_reg);
    opts.bilevel_per_epoch = vp.value("bilevel_per_epoch", opts.bilevel_per_epoch);
    opts.score_samples = vp.value("score_samples", opts.score_samples);
    return opts;
}

// Builds the toy supernet task from problem params: either a CSV path plus a
// space file, or a generated planted-architecture dataset.
void build_supernet_task(const json& pp, SearchSpace& space, DataSet& data) {
    if (pp.contains("space_file"))
        space = SearchSpace::load(pp.at("space_file").get<std::string>());
    else if (pp.contains("space"))
        space = SearchSpace::from_json(pp.at("space"));
    else
        space = SearchSpace::toy_three_edge(pp.value("feat_dim", 3),
                                            pp.value("include_zero", true));
    if (pp.contains("csv")) {
        data = DataSet::load_csv(pp.at("csv").get<std::string>(), space.feat_dim);
        return;
    }
    DiscreteArchitecture planted;
    if (pp.contains("planted_ops"))
        planted.op_per_edge = pp.at("planted_ops").get<std::vector<int>>();
    else
        planted.op_per_edge = {0, 2, 1};  // linear into softplus, middle edge off
    const std::uint64_t data_seed = pp.value("data_seed", std::uint64_t{17});
    Vec planted_w = init_shared_weights(space, data_seed ^ 0x5eedULL);
    // Scaling the planted weights pushes the softplus into its curved range,
    // which separates the discrete architectures cleanly.
    const double scale = pp.value("planted_scale", 3.5);
    for (double& v : planted_w) v *= scale;
    data = make_planted_dataset(space, planted, planted_w, pp.value("n", 256),
                                pp.value("noise_std", 0.02), data_seed);
}

}  // namespace

ExperimentSpec ExperimentSpec::from_json(const json& j) {
    ExperimentSpec s;
    s.schema_version = spec_get<int>(j, "schema_version");
    if (s.schema_version != kSpecSchemaVersion)
        spec_error("schema_version", "must be " + std::to_string(kSpecSchemaVersion));
    s.problem = spec_get<std::string>(j, "problem");
    s.problem_params = j.value("problem_params", json::object());
    s.variant = spec_get<std::string>(j, "variant");
    static const char* variants[] = {"gaea-eg", "euclidean-sgd", "softmax-baseline",
                                     "score-function"};
    if (std::find_if(std::begin(variants), std::end(variants),
                     [&](const char* v) { return s.variant == v; }) == std::end(variants))
        spec_error("variant", "must be one of gaea-eg / euclidean-sgd / softmax-baseline / "
                              "score-function");
    s.variant_params = j.value("variant_params", json::object());
    if (!j.contains("run")) spec_error("run", "is missing");
    s.run = run_config_from_json(j.at("run"));
    s.seeds = spec_get<std::vector<std::uint64_t>>(j, "seeds");
    if (s.seeds.empty()) spec_error("seeds", "must be non-empty");
    s.output_dir = j.value("output_dir", std::string());
    s.measure_stationarity = j.value("measure_stationarity", false);
    return s;
}

json ExperimentSpec::to_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["problem"] = problem;
    j["problem_params"] = problem_params;
    j["variant"] = variant;
    j["variant_params"] = variant_params;
    j["run"] = run_config_to_json(run);
    j["seeds"] = seeds;
    j["output_dir"] = output_dir;
    j["measure_stationarity"] = measure_stationarity;
    return j;
}

ExperimentSpec ExperimentSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ExperimentSpec::load: cannot open " + path);
    json j;
    in >> j;
    return from_json(j);
}

RunRecord run_single(const ExperimentSpec& spec, std::uint64_t seed) {
    RunConfig cfg = spec.run;
    cfg.seed = seed;
    const json& vp = spec.variant_params;
    RunRecord rec;

    if (spec.problem == "supernet_toy") {
        SearchSpace space;
        DataSet data;
        build_supernet_task(spec.problem_params, space, data);
        const SearchMode mode = search_mode_from_params(vp);
        const SearchOptions opts = search_options_from_params(vp);
        const double eta_arch = vp.value("eta_arch", 0.1);
        if (spec.variant == "gaea-eg")
            rec = gaea_search(space, data, cfg, eta_arch, mode, opts);
        else if (spec.variant == "softmax-baseline")
            rec = baseline_softmax_search(space, data, cfg, eta_arch, mode, opts);
        else if (spec.variant == "score-function")
            rec = score_function_search(space, data, cfg, eta_arch, mode, opts);
        else
            throw std::invalid_argument("run_single: variant '" + spec.variant +
                                        "' is not defined for supernet_toy");
    } else {
        auto objective = make_problem(spec.problem, spec.problem_params);
        const ProductGeometry& pg = objective->geometry();
        std::vector<UpdateRule> rules;
        if (pg.num_blocks() == 1) {
            const BlockGeometry& g = pg.blocks[0];
            const double eta = vp.value("eta", 0.1);
            if (spec.variant == "gaea-eg")
                rules.push_back(UpdateRule::eg_simplex(g.dim, eta));
            else if (spec.variant == "euclidean-sgd")
                rules.push_back(UpdateRule::projected_euclidean_simplex(g.dim, eta));
            else
                throw std::invalid_argument("run_single: variant '" + spec.variant +
                                            "' is not defined for " + spec.problem);
        } else {
            const double eta_w = vp.value("eta_w", 0.1);
            const double eta_theta = vp.value("eta_theta", 0.1);
            const BlockGeometry& gt = pg.blocks[1];
            rules.push_back(UpdateRule::euclidean(pg.blocks[0].dim, eta_w));
            if (spec.variant == "gaea-eg")
                rules.push_back(
                    UpdateRule::eg_simplex_product(gt.num_simplices, gt.simplex_size(), eta_theta));
            else if (spec.variant == "euclidean-sgd")
                rules.push_back(UpdateRule::projected_euclidean_simplex_product(
                    gt.num_simplices, gt.simplex_size(), eta_theta));
            else
                throw std::invalid_argument("run_single: variant '" + spec.variant +
                                            "' is not defined for " + spec.problem);
        }
        Rng init_rng = Rng(seed).stream("init");
        rec = run_multi_block(*objective, objective->initial_point(init_rng), cfg, rules);
        if (spec.measure_stationarity) {
            const ProxConfig prox = ProxConfig::for_gamma(objective->constants().gamma);
            rec.output_stationarity = bregman_stationarity(*objective, rec.output_point, prox);
            rec.has_stationarity = true;
        }
    }
    rec.config["experiment"] = {{"problem", spec.problem},
                                {"problem_params", spec.problem_params},
                                {"variant", spec.variant},
                                {"variant_params", spec.variant_params}};
    return rec;
}

std::vector<SeedOutcome> run_experiment(const ExperimentSpec& spec,
                                        std::vector<RunRecord>* records) {
    std::vector<SeedOutcome> outcomes;
    if (!spec.output_dir.empty()) std::filesystem::create_directories(spec.output_dir);
    for (std::uint64_t seed : spec.seeds) {
        SeedOutcome o;
        o.seed = seed;
        try {
            RunRecord rec = run_single(spec, seed);
            if (!spec.output_dir.empty()) {
                o.record_path = spec.output_dir + "/record_seed" + std::to_string(seed) + ".json";
                save_record(rec, o.record_path);
            }
            if (records) records->push_back(std::move(rec));
            o.ok = true;
        } catch (const std::exception& e) {
            o.ok = false;
            o.error = e.what();
        }
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

// ---------------------------------------------------------------------------
// aggregation
// ---------------------------------------------------------------------------

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

SeriesSummary summarize_series(const std::vector<const std::vector<double>*>& rows) {
    const std::size_t n = rows.front()->size();
    SeriesSummary s;
    s.median.resize(n);
    s.q25.resize(n);
    s.q75.resize(n);
    std::vector<double> column(rows.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < rows.size(); ++r) column[r] = (*rows[r])[i];
        s.median[i] = quantile(column, 0.5);
        s.q25[i] = quantile(column, 0.25);
        s.q75[i] = quantile(column, 0.75);
    }
    return s;
}

json quantile_triple(std::vector<double> values) {
    json j;
    j["median"] = quantile(values, 0.5);
    j["q25"] = quantile(values, 0.25);
    j["q75"] = quantile(values, 0.75);
    return j;
}

}  // namespace

Summary aggregate(const std::vector<RunRecord>& records) {
    if (records.empty()) throw std::invalid_argument("aggregate: no records");
    const RunRecord& first = records.front();
    const int horizon = first.horizon();
    std::vector<std::string> series_names;
    series_names.push_back("loss");
    series_names.push_back("grad_dual_norm");
    series_names.push_back("entropy");
    for (const auto& [key, _] : first.extra_series) series_names.push_back(key);

    auto series_of = [](const RunRecord& r, const std::string& name) -> const std::vector<double>* {
        if (name == "loss") return &r.loss;
        if (name == "grad_dual_norm") return &r.grad_dual_norm;
        if (name == "entropy") return &r.entropy;
        auto it = r.extra_series.find(name);
        return it == r.extra_series.end() ? nullptr : &it->second;
    };

    for (const RunRecord& r : records) {
        if (r.horizon() != horizon)
            throw std::invalid_argument("aggregate: records disagree on the horizon");
        for (const std::string& name : series_names) {
            const auto* a = series_of(first, name);
            const auto* b = series_of(r, name);
            if ((b == nullptr) != (a == nullptr) || (a && b && a->size() != b->size()))
                throw std::invalid_argument("aggregate: records disagree on series '" + name + "'");
        }
    }

    Summary s;
    s.meta["num_seeds"] = records.size();
    s.meta["horizon"] = horizon;
    s.meta["config"] = first.config;
    if (first.config.contains("experiment")) {
        s.meta["label"] = first.config.at("experiment").value("variant", std::string()) + " " +
                          first.config.at("experiment").value("problem", std::string());
    } else {
        s.meta["label"] = first.config.value("variant", first.config.value("problem", std::string("run")));
    }

    for (const std::string& name : series_names) {
        const auto* probe = series_of(first, name);
        if (!probe || probe->empty()) continue;
        std::vector<const std::vector<double>*> rows;
        for (const RunRecord& r : records) rows.push_back(series_of(r, name));
        s.series[name] = summarize_series(rows);
    }

    std::vector<double> final_loss;
    for (const RunRecord& r : records) final_loss.push_back(r.loss.back());
    s.final_metrics["final_loss"] = quantile_triple(final_loss);
    if (!first.entropy.empty()) {
        std::vector<double> final_entropy;
        for (const RunRecord& r : records) final_entropy.push_back(r.entropy.back());
        s.final_metrics["final_entropy"] = quantile_triple(final_entropy);
    }
    if (first.has_stationarity) {
        std::vector<double> stat;
        for (const RunRecord& r : records) {
            if (!r.has_stationarity)
                throw std::invalid_argument("aggregate: records disagree on stationarity presence");
            stat.push_back(r.output_stationarity);
        }
        s.final_metrics["output_stationarity"] = quantile_triple(stat);
    }
    return s;
}

json Summary::to_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["meta"] = meta;
    json ser;
    for (const auto& [name, ss] : series) {
        ser[name] = {{"median", ss.median}, {"q25", ss.q25}, {"q75", ss.q75}};
    }
    j["series"] = ser;
    j["final_metrics"] = final_metrics;
    return j;
}

Summary Summary::from_json(const json& j) {
    Summary s;
    s.schema_version = j.at("schema_version").get<int>();
    s.meta = j.at("meta");
    for (auto it = j.at("series").begin(); it != j.at("series").end(); ++it) {
        SeriesSummary ss;
        ss.median = it.value().at("median").get<std::vector<double>>();
        ss.q25 = it.value().at("q25").get<std::vector<double>>();
        ss.q75 = it.value().at("q75").get<std::vector<double>>();
        s.series[it.key()] = std::move(ss);
    }
    s.final_metrics = j.at("final_metrics");
    return s;
}

Summary Summary::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("Summary::load: cannot open " + path);
    json j;
    in >> j;
    return from_json(j);
}

void Summary::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("Summary::save: cannot open " + path);
    out << to_json().dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// SVG plots
// ---------------------------------------------------------------------------

PlotKind plot_kind_from_name(const std::string& name) {
    if (name == "entropy") return PlotKind::entropy;
    if (name == "loss") return PlotKind::loss;
    if (name == "stationarity-vs-T") return PlotKind::stationarity_vs_T;
    throw std::invalid_argument("unknown plot kind '" + name +
                                "' (expected entropy | loss | stationarity-vs-T)");
}

namespace {

constexpr double kW = 640, kH = 420;
constexpr double kML = 70, kMR = 20, kMT = 36, kMB = 52;
const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Axis {
    double lo = 0, hi = 1;
    double to_px(double v, double px_lo, double px_hi) const {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return px_lo + t * (px_hi - px_lo);
    }
};

Axis fit_axis(std::vector<double> vals) {
    Axis a;
    if (vals.empty()) return a;
    a.lo = *std::min_element(vals.begin(), vals.end());
    a.hi = *std::max_element(vals.begin(), vals.end());
    if (a.hi <= a.lo) {
        a.lo -= 0.5;
        a.hi += 0.5;
    }
    const double pad = 0.04 * (a.hi - a.lo);
    a.lo -= pad;
    a.hi += pad;
    return a;
}

void draw_frame(std::ostream& out, const Axis& xa, const Axis& ya, const std::string& title,
                const std::string& xlabel, const std::string& ylabel) {
    out << "<rect x='" << kML << "' y='" << kMT << "' width='" << (kW - kML - kMR) << "' height='"
        << (kH - kMT - kMB) << "' fill='none' stroke='#444'/>\n";
    out << "<text x='" << kW / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
        << "</text>\n";
    out << "<text x='" << kW / 2 << "' y='" << (kH - 14)
        << "' text-anchor='middle' font-size='12'>" << xlabel << "</text>\n";
    out << "<text x='16' y='" << kH / 2 << "' text-anchor='middle' font-size='12' transform='rotate(-90 16 "
        << kH / 2 << ")'>" << ylabel << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double tx = xa.lo + (xa.hi - xa.lo) * i / 4.0;
        const double px = xa.to_px(tx, kML, kW - kMR);
        out << "<line x1='" << px << "' y1='" << (kH - kMB) << "' x2='" << px << "' y2='"
            << (kH - kMB + 5) << "' stroke='#444'/>\n";
        out << "<text x='" << px << "' y='" << (kH - kMB + 18)
            << "' text-anchor='middle' font-size='11'>" << fmt(tx) << "</text>\n";
        const double ty = ya.lo + (ya.hi - ya.lo) * i / 4.0;
        const double py = ya.to_px(ty, kH - kMB, kMT);
        out << "<line x1='" << (kML - 5) << "' y1='" << py << "' x2='" << kML << "' y2='" << py
            << "' stroke='#444'/>\n";
        out << "<text x='" << (kML - 8) << "' y='" << (py + 4)
            << "' text-anchor='end' font-size='11'>" << fmt(ty) << "</text>\n";
    }
}

}  // namespace

void emit_plot(const std::vector<Summary>& summaries, PlotKind kind, const std::string& out_path) {
    if (summaries.empty()) throw std::invalid_argument("emit_plot: no summaries");
    std::ostringstream body;
    Axis xa, ya;
    std::string title, xlabel, ylabel;

    if (kind == PlotKind::stationarity_vs_T) {
        title = "stationarity vs T (log-log)";
        xlabel = "log10 T";
        ylabel = "log10 stationarity";
        std::vector<double> xs, ys, q25s, q75s;
        for (const Summary& s : summaries) {
            if (!s.final_metrics.contains("output_stationarity"))
                throw std::invalid_argument("emit_plot: summary lacks output_stationarity");
            xs.push_back(std::log10(s.meta.at("horizon").get<double>()));
            ys.push_back(std::log10(s.final_metrics.at("output_stationarity").at("median").get<double>()));
            q25s.push_back(std::log10(
                std::max(1e-300, s.final_metrics.at("output_stationarity").at("q25").get<double>())));
            q75s.push_back(std::log10(
                std::max(1e-300, s.final_metrics.at("output_stationarity").at("q75").get<double>())));
        }
        std::vector<double> all_x = xs, all_y = ys;
        all_y.insert(all_y.end(), q25s.begin(), q25s.end());
        all_y.insert(all_y.end(), q75s.begin(), q75s.end());
        xa = fit_axis(all_x);
        ya = fit_axis(all_y);
        // Least-squares slope on the log-log medians.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double slope = (n * sxy - sx * sy) / std::max(1e-12, n * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / n;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double px = xa.to_px(xs[i], kML, kW - kMR);
            body << "<line x1='" << px << "' y1='" << ya.to_px(q25s[i], kH - kMB, kMT) << "' x2='"
                 << px << "' y2='" << ya.to_px(q75s[i], kH - kMB, kMT)
                 << "' stroke='#1f77b4' stroke-width='1'/>\n";
            body << "<circle cx='" << px << "' cy='" << ya.to_px(ys[i], kH - kMB, kMT)
                 << "' r='3.5' fill='#1f77b4'/>\n";
        }
        body << "<line x1='" << xa.to_px(xa.lo, kML, kW - kMR) << "' y1='"
             << ya.to_px(intercept + slope * xa.lo, kH - kMB, kMT) << "' x2='"
             << xa.to_px(xa.hi, kML, kW - kMR) << "' y2='"
             << ya.to_px(intercept + slope * xa.hi, kH - kMB, kMT)
             << "' stroke='#d62728' stroke-dasharray='5,4'/>\n";
        body << "<text x='" << (kML + 10) << "' y='" << (kMT + 16)
             << "' font-size='12'>fitted slope = " << fmt(slope) << "</text>\n";
    } else {
        const std::string series_name = kind == PlotKind::entropy ? "entropy" : "loss";
        title = series_name + " by " +
                summaries.front().meta.at("config").value("iteration_unit", std::string("iteration"));
        xlabel = summaries.front().meta.at("config").value("iteration_unit", std::string("iteration"));
        ylabel = series_name;
        std::vector<double> all_x, all_y;
        for (const Summary& s : summaries) {
            auto it = s.series.find(series_name);
            if (it == s.series.end())
                throw std::invalid_argument("emit_plot: summary lacks series '" + series_name + "'");
            for (std::size_t i = 0; i < it->second.median.size(); ++i) {
                all_x.push_back(static_cast<double>(i + 1));
                all_y.push_back(it->second.median[i]);
                all_y.push_back(it->second.q25[i]);
                all_y.push_back(it->second.q75[i]);
            }
        }
        xa = fit_axis(all_x);
        ya = fit_axis(all_y);
        int color = 0;
        for (const Summary& s : summaries) {
            const SeriesSummary& ss = s.series.at(series_name);
            const char* c = kPalette[color % 6];
            bool band = false;
            for (std::size_t i = 0; i < ss.median.size(); ++i)
                band = band || ss.q75[i] - ss.q25[i] > 0.0;
            if (band) {
                body << "<polygon fill='" << c << "' fill-opacity='0.18' stroke='none' points='";
                for (std::size_t i = 0; i < ss.q75.size(); ++i)
                    body << xa.to_px(static_cast<double>(i + 1), kML, kW - kMR) << ","
                         << ya.to_px(ss.q75[i], kH - kMB, kMT) << " ";
                for (std::size_t i = ss.q25.size(); i-- > 0;)
                    body << xa.to_px(static_cast<double>(i + 1), kML, kW - kMR) << ","
                         << ya.to_px(ss.q25[i], kH - kMB, kMT) << " ";
                body << "'/>\n";
            }
            body << "<polyline fill='none' stroke='" << c << "' stroke-width='1.8' points='";
            for (std::size_t i = 0; i < ss.median.size(); ++i)
                body << xa.to_px(static_cast<double>(i + 1), kML, kW - kMR) << ","
                     << ya.to_px(ss.median[i], kH - kMB, kMT) << " ";
            body << "'/>\n";
            body << "<text x='" << (kW - kMR - 8) << "' y='" << (kMT + 16 + 16 * color)
                 << "' text-anchor='end' font-size='12' fill='" << c << "'>"
                 << s.meta.value("label", std::string("series")) << "</text>\n";
            ++color;
        }
    }

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("emit_plot: cannot open " + out_path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH
        << "' viewBox='0 0 " << kW << " " << kH << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    std::ostringstream frame;
    draw_frame(frame, xa, ya, title, xlabel, ylabel);
    out << frame.str() << body.str() << "</svg>\n";
}

}  // namespace gaea
