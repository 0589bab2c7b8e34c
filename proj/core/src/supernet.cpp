#include "gaea/supernet.hpp"

#include "gaea/mirror.hpp"
#include "gaea/problems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gaea {

using nlohmann::json;

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

double stable_softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::fabs(x))); }
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

bool op_has_params(OpKind k) { return k == OpKind::linear || k == OpKind::diag_scale; }

int op_param_count(OpKind k, int d) {
    switch (k) {
        case OpKind::linear: return d * d;
        case OpKind::diag_scale: return d;
        default: return 0;
    }
}

// out = op(x) for one edge instance; W points at the op's parameter slice.
Matrix op_forward(OpKind kind, const double* W, const Matrix& x) {
    const int n = x.rows, d = x.cols;
    Matrix out(n, d, 0.0);
    switch (kind) {
        case OpKind::zero:
            break;
        case OpKind::identity:
            out = x;
            break;
        case OpKind::linear:
            for (int s = 0; s < n; ++s)
                for (int a = 0; a < d; ++a) {
                    double acc = 0.0;
                    for (int b = 0; b < d; ++b) acc += W[a * d + b] * x.at(s, b);
                    out.at(s, a) = acc;
                }
            break;
        case OpKind::diag_scale:
            for (int s = 0; s < n; ++s)
                for (int j = 0; j < d; ++j) out.at(s, j) = W[j] * x.at(s, j);
            break;
        case OpKind::softplus:
            for (int s = 0; s < n; ++s)
                for (int j = 0; j < d; ++j) out.at(s, j) = stable_softplus(x.at(s, j));
            break;
    }
    return out;
}

// Reverse-mode for one edge instance: propagates scale * J^T adj into
// adj_input and accumulates scale * dL/dW into grad_W.
void op_backward(OpKind kind, const double* W, const Matrix& x, const Matrix& adj, double scale,
                 Matrix& adj_input, double* grad_W) {
    const int n = x.rows, d = x.cols;
    switch (kind) {
        case OpKind::zero:
            break;
        case OpKind::identity:
            for (int s = 0; s < n; ++s)
                for (int j = 0; j < d; ++j) adj_input.at(s, j) += scale * adj.at(s, j);
            break;
        case OpKind::linear:
            for (int s = 0; s < n; ++s)
                for (int a = 0; a < d; ++a) {
                    const double as = scale * adj.at(s, a);
                    for (int b = 0; b < d; ++b) {
                        adj_input.at(s, b) += as * W[a * d + b];
                        grad_W[a * d + b] += as * x.at(s, b);
                    }
                }
            break;
        case OpKind::diag_scale:
            for (int s = 0; s < n; ++s)
                for (int j = 0; j < d; ++j) {
                    const double as = scale * adj.at(s, j);
                    adj_input.at(s, j) += as * W[j];
                    grad_W[j] += as * x.at(s, j);
                }
            break;
        case OpKind::softplus:
            for (int s = 0; s < n; ++s)
                for (int j = 0; j < d; ++j)
                    adj_input.at(s, j) += scale * adj.at(s, j) * sigmoid(x.at(s, j));
            break;
    }
}

double frobenius_dot(const Matrix& a, const Matrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

bool matrix_finite(const Matrix& m) {
    for (double v : m.data)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

std::string op_kind_name(OpKind k) {
    switch (k) {
        case OpKind::zero: return "zero";
        case OpKind::identity: return "identity";
        case OpKind::linear: return "linear";
        case OpKind::diag_scale: return "diag_scale";
        case OpKind::softplus: return "softplus";
    }
    return "?";
}

OpKind op_kind_from_name(const std::string& name) {
    if (name == "zero") return OpKind::zero;
    if (name == "identity") return OpKind::identity;
    if (name == "linear") return OpKind::linear;
    if (name == "diag_scale") return OpKind::diag_scale;
    if (name == "softplus") return OpKind::softplus;
    throw std::invalid_argument("unknown operation kind '" + name + "'");
}

long long SearchSpace::num_architectures() const {
    long long a = 1;
    for (int e = 0; e < num_edges(); ++e) {
        a *= num_ops();
        if (a > (1LL << 16))
            throw std::invalid_argument("SearchSpace: |O|^|E| exceeds the enumeration bound 2^16");
    }
    return a;
}

void SearchSpace::validate() const {
    require(num_nodes >= 2, "SearchSpace: need at least input and output nodes");
    require(feat_dim >= 1, "SearchSpace: feat_dim must be >= 1");
    require(!ops.empty(), "SearchSpace: empty operation set");
    require(!edges.empty(), "SearchSpace: empty edge set");
    for (const auto& [dst, src] : edges) {
        require(0 <= src && src < dst && dst < num_nodes,
                "SearchSpace: edge (" + std::to_string(dst) + "," + std::to_string(src) +
                    ") violates the j < i ordering");
    }
}

json SearchSpace::to_json() const {
    json j;
    j["num_nodes"] = num_nodes;
    j["feat_dim"] = feat_dim;
    json e = json::array();
    for (const auto& [dst, src] : edges) e.push_back({dst, src});
    j["edges"] = e;
    json o = json::array();
    for (OpKind k : ops) o.push_back(op_kind_name(k));
    j["ops"] = o;
    return j;
}

SearchSpace SearchSpace::from_json(const json& j) {
    SearchSpace s;
    s.num_nodes = j.at("num_nodes").get<int>();
    s.feat_dim = j.at("feat_dim").get<int>();
    for (const auto& e : j.at("edges"))
        s.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& o : j.at("ops")) s.ops.push_back(op_kind_from_name(o.get<std::string>()));
    s.validate();
    return s;
}

SearchSpace SearchSpace::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("SearchSpace::load: cannot open " + path);
    json j;
    in >> j;
    return from_json(j);
}

void SearchSpace::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("SearchSpace::save: cannot open " + path);
    out << to_json().dump(2) << "\n";
}

SearchSpace SearchSpace::toy_three_edge(int feat_dim, bool include_zero) {
    SearchSpace s;
    s.num_nodes = 3;
    s.feat_dim = feat_dim;
    s.edges = {{1, 0}, {2, 0}, {2, 1}};
    s.ops = {OpKind::linear, OpKind::softplus,
             include_zero ? OpKind::zero : OpKind::identity};
    s.validate();
    return s;
}

Matrix DiscreteArchitecture::one_hot(int num_ops) const {
    Matrix m(static_cast<int>(op_per_edge.size()), num_ops, 0.0);
    for (std::size_t e = 0; e < op_per_edge.size(); ++e) {
        const int o = op_per_edge[e];
        if (o < 0 || o >= num_ops)
            throw std::invalid_argument("DiscreteArchitecture: op index out of range");
        m.at(static_cast<int>(e), o) = 1.0;
    }
    return m;
}

std::string DiscreteArchitecture::describe(const SearchSpace& space) const {
    std::string out;
    for (std::size_t e = 0; e < op_per_edge.size(); ++e) {
        const auto& [dst, src] = space.edges[e];
        if (e) out += " ";
        out += "(" + std::to_string(dst) + "," + std::to_string(src) + ")=" +
               op_kind_name(space.ops[static_cast<std::size_t>(op_per_edge[e])]);
    }
    return out;
}

DiscreteArchitecture discretize(const ArchParams& theta) {
    const Matrix w = theta.mixture_weights();
    DiscreteArchitecture a;
    a.op_per_edge.resize(static_cast<std::size_t>(w.rows));
    for (int e = 0; e < w.rows; ++e) {
        int best = 0;
        for (int o = 1; o < w.cols; ++o)
            if (w.at(e, o) > w.at(e, best)) best = o;  // ties keep the lowest index
        a.op_per_edge[static_cast<std::size_t>(e)] = best;
    }
    return a;
}

WeightLayout WeightLayout::build(const SearchSpace& space) {
    WeightLayout l;
    l.offset.assign(static_cast<std::size_t>(space.num_edges()),
                    std::vector<int>(static_cast<std::size_t>(space.num_ops()), 0));
    l.size = l.offset;
    int cursor = 0;
    for (int e = 0; e < space.num_edges(); ++e)
        for (int o = 0; o < space.num_ops(); ++o) {
            const int sz = op_param_count(space.ops[static_cast<std::size_t>(o)], space.feat_dim);
            l.offset[static_cast<std::size_t>(e)][static_cast<std::size_t>(o)] = cursor;
            l.size[static_cast<std::size_t>(e)][static_cast<std::size_t>(o)] = sz;
            cursor += sz;
        }
    l.total = cursor;
    return l;
}

Vec init_shared_weights(const SearchSpace& space, std::uint64_t seed) {
    const WeightLayout layout = WeightLayout::build(space);
    Vec w(static_cast<std::size_t>(layout.total), 0.0);
    Rng base = Rng(seed).stream("winit");
    const double scale = 1.0 / std::sqrt(static_cast<double>(space.feat_dim));
    for (int e = 0; e < space.num_edges(); ++e)
        for (int o = 0; o < space.num_ops(); ++o) {
            const OpKind kind = space.ops[static_cast<std::size_t>(o)];
            if (!op_has_params(kind)) continue;
            Rng r = base.stream(static_cast<std::uint64_t>(e)).stream(static_cast<std::uint64_t>(o));
            const int off = layout.offset[static_cast<std::size_t>(e)][static_cast<std::size_t>(o)];
            const int sz = layout.size[static_cast<std::size_t>(e)][static_cast<std::size_t>(o)];
            for (int i = 0; i < sz; ++i) {
                const double g = r.next_gaussian();
                w[static_cast<std::size_t>(off + i)] =
                    kind == OpKind::diag_scale ? 1.0 + 0.3 * g : scale * g;
            }
        }
    return w;
}

Matrix forward_mixture(const SearchSpace& space, const Vec& w, const Matrix& mixture,
                       const Matrix& X, ForwardTrace* trace) {
    space.validate();
    require(mixture.rows == space.num_edges() && mixture.cols == space.num_ops(),
            "forward_mixture: mixture shape mismatch");
    require(X.cols == space.feat_dim, "forward_mixture: input width mismatch");
    require(X.rows >= 1, "forward_mixture: empty batch");
    const WeightLayout layout = WeightLayout::build(space);
    require(static_cast<int>(w.size()) == layout.total, "forward_mixture: weight length mismatch");

    const int n = X.rows, d = X.cols;
    std::vector<Matrix> features(static_cast<std::size_t>(space.num_nodes), Matrix(n, d, 0.0));
    features[0] = X;
    std::vector<std::vector<Matrix>> op_out;
    if (trace)
        op_out.assign(static_cast<std::size_t>(space.num_edges()), std::vector<Matrix>());

    for (int i = 1; i < space.num_nodes; ++i) {
        Matrix acc(n, d, 0.0);
        for (int e = 0; e < space.num_edges(); ++e) {
            if (space.edges[static_cast<std::size_t>(e)].first != i) continue;
            const int j = space.edges[static_cast<std::size_t>(e)].second;
            for (int o = 0; o < space.num_ops(); ++o) {
                const double th = mixture.at(e, o);
                const double* W =
                    w.data() + layout.offset[static_cast<std::size_t>(e)][static_cast<std::size_t>(o)];
                Matrix out = op_forward(space.ops[static_cast<std::size_t>(o)], W,
                                        features[static_cast<std::size_t>(j)]);
                for (std::size_t t = 0; t < acc.data.size(); ++t) acc.data[t] += th * out.data[t];
                if (trace) op_out[static_cast<std::size_t>(e)].push_back(std::move(out));
            }
        }
        if (!matrix_finite(acc))
            throw std::runtime_error("forward_mixture: non-finite features at node " +
                                     std::to_string(i));
        features[static_cast<std::size_t>(i)] = std::move(acc);
    }
    Matrix pred = features[static_cast<std::size_t>(space.output_node())];
    if (trace) {
        trace->node_features = std::move(features);
        trace->op_outputs = std::move(op_out);
    }
    return pred;
}

LossGrads mixture_loss_and_grads(const SearchSpace& space, const Vec& w, const Matrix& mixture,
                                 const Matrix& X, const Matrix& Y, double lambda_reg) {
    require(Y.rows == X.rows && Y.cols == space.feat_dim,
            "mixture_loss_and_grads: target shape mismatch");
    ForwardTrace trace;
    const Matrix pred = forward_mixture(space, w, mixture, X, &trace);
    const WeightLayout layout = WeightLayout::build(space);
    const int n = X.rows, d = X.cols;

    LossGrads out;
    out.grad_w.assign(w.size(), 0.0);
    out.grad_theta = Matrix(space.num_edges(), space.num_ops(), 0.0);

    // Loss and the output adjoint.
    std::vector<Matrix> adj(static_cast<std::size_t>(space.num_nodes), Matrix(n, d, 0.0));
    double data_loss = 0.0;
    Matrix& adj_out = adj[static_cast<std::size_t>(space.output_node())];
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < d; ++j) {
            const double r = pred.at(s, j) - Y.at(s, j);
            data_loss += r * r;
            adj_out.at(s, j) = r / static_cast<double>(n);
        }
    out.loss = 0.5 * data_loss / static_cast<double>(n);
    for (double v : w) out.loss += lambda_reg * v * v;

    // Reverse sweep: adjoints of node i are complete once every node above i
    // has been processed, because edges only point from lower to higher ids.
    for (int i = space.num_nodes - 1; i >= 1; --i) {
        const Matrix& a = adj[static_cast<std::size_t>(i)];
        for (int e = 0; e < space.num_edges(); ++e) {
            if (space.edges[static_cast<std::size_t>(e)].first != i) continue;
            const int j = space.edges[static_cast<std::size_t>(e)].second;
            const Matrix& xin = trace.node_features[static_cast<std::size_t>(j)];
            for (int o = 0; o < space.num_ops(); ++o) {
                const double th = mixture.at(e, o);
                const int off = layout.offset[static_cast<std::size_t>(e)][static_cast<std::size_t>(o)];
                out.grad_theta.at(e, o) =
                    frobenius_dot(a, trace.op_outputs[static_cast<std::size_t>(e)][static_cast<std::size_t>(o)]);
                op_backward(space.ops[static_cast<std::size_t>(o)], w.data() + off, xin, a, th,
                            adj[static_cast<std::size_t>(j)], out.grad_w.data() + off);
            }
        }
    }
    if (lambda_reg != 0.0)
        for (std::size_t i = 0; i < w.size(); ++i) out.grad_w[i] += 2.0 * lambda_reg * w[i];
    return out;
}

LossGrads loss_and_grads(const SearchSpace& space, const Vec& w, const ArchParams& theta,
                         const Matrix& X, const Matrix& Y, double lambda_reg) {
    const Matrix mixture = theta.mixture_weights();
    LossGrads lg = mixture_loss_and_grads(space, w, mixture, X, Y, lambda_reg);
    if (theta.chart == ParamChart::softmax_logits) {
        // Pull the mixture gradient back through the row-wise softmax:
        // dL/dz = p .* (g - <p, g>).
        for (int e = 0; e < mixture.rows; ++e) {
            double inner = 0.0;
            for (int o = 0; o < mixture.cols; ++o) inner += mixture.at(e, o) * lg.grad_theta.at(e, o);
            for (int o = 0; o < mixture.cols; ++o)
                lg.grad_theta.at(e, o) = mixture.at(e, o) * (lg.grad_theta.at(e, o) - inner);
        }
    }
    return lg;
}

double mixture_loss(const SearchSpace& space, const Vec& w, const Matrix& mixture, const Matrix& X,
                    const Matrix& Y, double lambda_reg) {
    require(Y.rows == X.rows && Y.cols == space.feat_dim, "mixture_loss: target shape mismatch");
    const Matrix pred = forward_mixture(space, w, mixture, X);
    double data_loss = 0.0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
        const double r = pred.data[i] - Y.data[i];
        data_loss += r * r;
    }
    double loss = 0.5 * data_loss / static_cast<double>(X.rows);
    for (double v : w) loss += lambda_reg * v * v;
    return loss;
}

// ---------------------------------------------------------------------------
// data
// ---------------------------------------------------------------------------

DataSet DataSet::load_csv(const std::string& path, int feat_dim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("DataSet::load_csv: cannot open " + path);
    std::vector<Vec> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Vec row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != 2 * feat_dim)
            throw std::runtime_error("DataSet::load_csv: row with " + std::to_string(row.size()) +
                                     " fields, expected " + std::to_string(2 * feat_dim));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("DataSet::load_csv: empty file " + path);
    DataSet d;
    d.X = Matrix(static_cast<int>(rows.size()), feat_dim);
    d.Y = Matrix(static_cast<int>(rows.size()), feat_dim);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < feat_dim; ++c) {
            d.X.at(static_cast<int>(r), c) = rows[r][static_cast<std::size_t>(c)];
            d.Y.at(static_cast<int>(r), c) = rows[r][static_cast<std::size_t>(feat_dim + c)];
        }
    return d;
}

void DataSet::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("DataSet::save_csv: cannot open " + path);
    char buf[32];
    for (int r = 0; r < X.rows; ++r) {
        for (int c = 0; c < X.cols; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", X.at(r, c));
            out << buf << ",";
        }
        for (int c = 0; c < Y.cols; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", Y.at(r, c));
            out << buf << (c + 1 == Y.cols ? "" : ",");
        }
        out << "\n";
    }
}

DataSet make_planted_dataset(const SearchSpace& space, const DiscreteArchitecture& planted,
                             const Vec& planted_w, int n, double noise_std, std::uint64_t seed) {
    require(n >= 1, "make_planted_dataset: n must be >= 1");
    Rng rng(seed);
    Rng xs = rng.stream("x");
    DataSet d;
    d.X = Matrix(n, space.feat_dim);
    for (double& v : d.X.data) v = xs.next_gaussian();
    d.Y = forward_mixture(space, planted_w, planted.one_hot(space.num_ops()), d.X);
    Rng ns = rng.stream("noise");
    for (double& v : d.Y.data) v += noise_std * ns.next_gaussian();
    return d;
}

// ---------------------------------------------------------------------------
// search loops
// ---------------------------------------------------------------------------

namespace {

enum class ArchUpdateKind { eg_direct, sgd_softmax, score_eg };

Matrix rows_subset(const Matrix& m, const std::vector<int>& order, int begin, int count) {
    Matrix out(count, m.cols);
    for (int r = 0; r < count; ++r) {
        const int src = order[static_cast<std::size_t>(begin + r)];
        for (int c = 0; c < m.cols; ++c) out.at(r, c) = m.at(src, c);
    }
    return out;
}

const char* variant_name(ArchUpdateKind k) {
    switch (k) {
        case ArchUpdateKind::eg_direct: return "gaea-eg";
        case ArchUpdateKind::sgd_softmax: return "softmax-baseline";
        case ArchUpdateKind::score_eg: return "score-function";
    }
    return "?";
}

RunRecord run_search(const SearchSpace& space, const DataSet& data, const RunConfig& cfg,
                     double eta_arch, SearchMode mode, const SearchOptions& opts,
                     ArchUpdateKind kind) {
    const auto t_start = std::chrono::steady_clock::now();
    space.validate();
    require(cfg.T >= 1, "search: need at least one epoch");
    require(eta_arch >= 0.0, "search: eta_arch must be nonnegative");
    require(opts.eta_w > 0.0, "search: eta_w must be positive");
    require(opts.batch_size >= 1, "search: batch_size must be >= 1");
    require(data.size() >= 2, "search: need at least two data rows");
    cfg.schedule.validate(cfg.T);

    const int E = space.num_edges(), O = space.num_ops();
    const int n = data.size();
    const int n_train = mode == SearchMode::bilevel ? n / 2 : n;
    const int n_val = mode == SearchMode::bilevel ? n - n_train : 0;
    require(mode != SearchMode::bilevel || (n_train >= 1 && n_val >= 1),
            "search: bilevel split needs data on both sides");

    Vec w = init_shared_weights(space, cfg.seed);
    ArchParams theta = kind == ArchUpdateKind::sgd_softmax ? ArchParams::zero_logits(E, O)
                                                           : ArchParams::uniform(E, O);

    Rng base(cfg.seed);
    Rng shuffle_base = base.stream("shuffle");
    Rng shuffle_val_base = base.stream("shuffle_val");
    Rng score_base = base.stream("score");

    RunRecord rec;
    rec.seed = cfg.seed;
    rec.block_names = {"w", "theta"};
    rec.config["loop"] = "search";
    rec.config["variant"] = variant_name(kind);
    rec.config["mode"] = mode == SearchMode::bilevel ? "bilevel" : "single_level";
    rec.config["epochs"] = cfg.T;
    rec.config["eta_arch"] = eta_arch;
    rec.config["eta_w"] = opts.eta_w;
    rec.config["warmup_epochs"] = opts.warmup_epochs;
    rec.config["batch_size"] = opts.batch_size;
    rec.config["lambda_reg"] = opts.lambda_reg;
    rec.config["bilevel_per_epoch"] = opts.bilevel_per_epoch;
    rec.config["chart"] = kind == ArchUpdateKind::sgd_softmax ? "softmax_logits" : "direct_simplex";
    rec.config["space"] = space.to_json();
    rec.config["iteration_unit"] = "epoch";
    rec.config["entropy_log_base"] = "e";
    if (kind == ArchUpdateKind::score_eg) rec.config["score_samples"] = opts.score_samples;

    std::vector<double> gw_series, gt_series, val_series;
    const double sqrt_e = std::sqrt(static_cast<double>(E));

    for (int epoch = 1; epoch <= cfg.T; ++epoch) {
        Rng sh = shuffle_base.stream(static_cast<std::uint64_t>(epoch));
        std::vector<int> order = random_permutation(n_train, sh);
        std::vector<int> val_order;
        if (mode == SearchMode::bilevel) {
            Rng shv = shuffle_val_base.stream(static_cast<std::uint64_t>(epoch));
            val_order = random_permutation(n_val, shv);
            for (int& idx : val_order) idx += n_train;  // validation half
        }

        const bool arch_on = epoch > opts.warmup_epochs && eta_arch > 0.0;
        const double mult = cfg.schedule.at(epoch);
        const double eta_w_t = opts.eta_w * mult;
        const double eta_arch_t = eta_arch * mult;

        double loss_acc = 0.0, gw_acc = 0.0, gt_acc = 0.0;
        int batches = 0, arch_updates = 0, val_cursor = 0;

        auto arch_batch = [&](int train_begin, int train_count, Matrix& bx, Matrix& by) {
            if (mode == SearchMode::bilevel) {
                const int count = std::min(opts.batch_size, n_val);
                if (val_cursor + count > n_val) val_cursor = 0;
                bx = rows_subset(data.X, val_order, val_cursor, count);
                by = rows_subset(data.Y, val_order, val_cursor, count);
                val_cursor += count;
            } else {
                bx = rows_subset(data.X, order, train_begin, train_count);
                by = rows_subset(data.Y, order, train_begin, train_count);
            }
        };

        auto theta_step = [&](const Matrix& bx, const Matrix& by) {
            if (kind == ArchUpdateKind::score_eg) {
                Rng sr = score_base.stream(static_cast<std::uint64_t>(epoch))
                             .stream(static_cast<std::uint64_t>(arch_updates));
                auto discrete_loss = [&](const std::vector<int>& choice, Rng&) {
                    DiscreteArchitecture a{choice};
                    return mixture_loss(space, w, a.one_hot(O), bx, by, opts.lambda_reg);
                };
                Matrix ghat = score_function_gradient(theta, opts.score_samples, discrete_loss, sr);
                gt_acc += sqrt_e * linf_norm(ghat.data);
                theta = product_eg_step(theta, ghat, eta_arch_t);
            } else {
                LossGrads lg = loss_and_grads(space, w, theta, bx, by, opts.lambda_reg);
                if (kind == ArchUpdateKind::eg_direct) {
                    gt_acc += sqrt_e * linf_norm(lg.grad_theta.data);
                    theta = product_eg_step(theta, lg.grad_theta, eta_arch_t);
                } else {
                    gt_acc += l2_norm(lg.grad_theta.data);  // logits live in R^{E x O}
                    for (std::size_t i = 0; i < theta.values.data.size(); ++i)
                        theta.values.data[i] -= eta_arch_t * lg.grad_theta.data[i];
                }
            }
            ++arch_updates;
        };

        for (int begin = 0; begin < n_train; begin += opts.batch_size) {
            const int count = std::min(opts.batch_size, n_train - begin);
            Matrix bx = rows_subset(data.X, order, begin, count);
            Matrix by = rows_subset(data.Y, order, begin, count);

            LossGrads lg = loss_and_grads(space, w, theta, bx, by, opts.lambda_reg);
            if (!std::isfinite(lg.loss))
                throw std::runtime_error("search: non-finite loss at epoch " +
                                         std::to_string(epoch));
            add_scaled(w, -eta_w_t, lg.grad_w);
            loss_acc += lg.loss;
            gw_acc += l2_norm(lg.grad_w);
            ++batches;

            if (arch_on && !opts.bilevel_per_epoch) {
                Matrix ax, ay;
                arch_batch(begin, count, ax, ay);
                theta_step(ax, ay);
            }
        }
        if (arch_on && opts.bilevel_per_epoch) {
            Matrix ax, ay;
            arch_batch(0, std::min(opts.batch_size, n_train), ax, ay);
            theta_step(ax, ay);
        }

        rec.loss.push_back(loss_acc / batches);
        rec.entropy.push_back(theta.mean_edge_entropy());
        rec.step_size.push_back(eta_arch_t);
        gw_series.push_back(gw_acc / batches);
        gt_series.push_back(arch_updates > 0 ? gt_acc / arch_updates : 0.0);
        if (mode == SearchMode::bilevel) {
            std::vector<int> idx(static_cast<std::size_t>(n_val));
            for (int i = 0; i < n_val; ++i) idx[static_cast<std::size_t>(i)] = n_train + i;
            Matrix vx = rows_subset(data.X, idx, 0, n_val);
            Matrix vy = rows_subset(data.Y, idx, 0, n_val);
            val_series.push_back(
                mixture_loss(space, w, theta.mixture_weights(), vx, vy, opts.lambda_reg));
        }
        std::uint64_t h = hash_vec(w);
        h = hash_vec(theta.values.data, h);
        rec.iterate_hash.push_back(h);
    }

    rec.extra_series["grad_dual_norm_w"] = std::move(gw_series);
    rec.extra_series["grad_dual_norm_theta"] = std::move(gt_series);
    if (mode == SearchMode::bilevel) rec.extra_series["val_loss"] = std::move(val_series);

    rec.final_point = {w, theta.values.data};
    rec.output_point = rec.final_point;  // search returns the last iterate
    rec.output_index = cfg.T + 1;
    rec.wall_clock_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    rec.validate();
    return rec;
}

}  // namespace

RunRecord gaea_search(const SearchSpace& space, const DataSet& data, const RunConfig& cfg,
                      double eta_arch, SearchMode mode, const SearchOptions& opts) {
    return run_search(space, data, cfg, eta_arch, mode, opts, ArchUpdateKind::eg_direct);
}

RunRecord baseline_softmax_search(const SearchSpace& space, const DataSet& data,
                                  const RunConfig& cfg, double eta_arch, SearchMode mode,
                                  const SearchOptions& opts) {
    return run_search(space, data, cfg, eta_arch, mode, opts, ArchUpdateKind::sgd_softmax);
}

RunRecord score_function_search(const SearchSpace& space, const DataSet& data,
                                const RunConfig& cfg, double eta_arch, SearchMode mode,
                                const SearchOptions& opts) {
    return run_search(space, data, cfg, eta_arch, mode, opts, ArchUpdateKind::score_eg);
}

ArchParams arch_params_from_record(const SearchSpace& space, const RunRecord& record) {
    if (record.final_point.size() != 2)
        throw std::invalid_argument("arch_params_from_record: record has no theta block");
    ArchParams p;
    p.values = Matrix(space.num_edges(), space.num_ops());
    if (record.final_point[1].size() != p.values.data.size())
        throw std::invalid_argument("arch_params_from_record: theta size mismatch");
    p.values.data = record.final_point[1];
    p.chart = record.config.value("chart", std::string("direct_simplex")) == "softmax_logits"
                  ? ParamChart::softmax_logits
                  : ParamChart::direct_simplex;
    return p;
}

std::vector<RankedArchitecture> enumerate_oracle(const SearchSpace& space, const DataSet& data,
                                                 const OracleTrainConfig& cfg) {
    space.validate();
    const long long total = space.num_architectures();
    require(cfg.epochs >= 1 && cfg.batch_size >= 1 && cfg.eta_w > 0.0,
            "enumerate_oracle: bad training budget");
    const int E = space.num_edges(), O = space.num_ops();
    const int n = data.size();

    // Shared epoch-wise batch orders so every architecture sees the same
    // data sequence.
    Rng shuffle_base = Rng(cfg.seed).stream("oracle_shuffle");
    std::vector<std::vector<int>> orders;
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        Rng sh = shuffle_base.stream(static_cast<std::uint64_t>(epoch));
        orders.push_back(random_permutation(n, sh));
    }

    std::vector<RankedArchitecture> ranked;
    ranked.reserve(static_cast<std::size_t>(total));
    for (long long id = 0; id < total; ++id) {
        DiscreteArchitecture arch;
        long long rem = id;
        for (int e = 0; e < E; ++e) {
            arch.op_per_edge.push_back(static_cast<int>(rem % O));
            rem /= O;
        }
        const Matrix one_hot = arch.one_hot(O);
        Vec w = init_shared_weights(space, cfg.seed);
        for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
            const std::vector<int>& order = orders[static_cast<std::size_t>(epoch)];
            for (int begin = 0; begin < n; begin += cfg.batch_size) {
                const int count = std::min(cfg.batch_size, n - begin);
                Matrix bx = rows_subset(data.X, order, begin, count);
                Matrix by = rows_subset(data.Y, order, begin, count);
                LossGrads lg = mixture_loss_and_grads(space, w, one_hot, bx, by, cfg.lambda_reg);
                add_scaled(w, -cfg.eta_w, lg.grad_w);
            }
        }
        RankedArchitecture r;
        r.arch = std::move(arch);
        r.final_loss = mixture_loss(space, w, one_hot, data.X, data.Y, cfg.lambda_reg);
        ranked.push_back(std::move(r));
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedArchitecture& a, const RankedArchitecture& b) {
                         if (a.final_loss != b.final_loss) return a.final_loss < b.final_loss;
                         return a.arch.op_per_edge < b.arch.op_per_edge;
                     });
    return ranked;
}

// ---------------------------------------------------------------------------
// objective adapter
// ---------------------------------------------------------------------------

SupernetObjective::SupernetObjective(SearchSpace space, DataSet data, double lambda_reg,
                                     int batch_size)
    : space_(std::move(space)), data_(std::move(data)), lambda_reg_(lambda_reg),
      batch_size_(batch_size) {
    space_.validate();
    require(batch_size_ >= 1, "SupernetObjective: batch_size must be >= 1");
    const WeightLayout layout = WeightLayout::build(space_);
    geom_ = ProductGeometry({BlockGeometry::euclidean(layout.total),
                             BlockGeometry::simplex_product(space_.num_edges(), space_.num_ops())});
}

ArchParams SupernetObjective::theta_from(const BlockPoint& x) const {
    ArchParams p;
    p.values = Matrix(space_.num_edges(), space_.num_ops());
    p.values.data = x[1];
    p.chart = ParamChart::direct_simplex;
    return p;
}

DataSet SupernetObjective::minibatch(Rng& rng) const {
    DataSet b;
    b.X = Matrix(batch_size_, space_.feat_dim);
    b.Y = Matrix(batch_size_, space_.feat_dim);
    for (int r = 0; r < batch_size_; ++r) {
        const int src = static_cast<int>(rng.next_below(static_cast<std::size_t>(data_.size())));
        for (int c = 0; c < space_.feat_dim; ++c) {
            b.X.at(r, c) = data_.X.at(src, c);
            b.Y.at(r, c) = data_.Y.at(src, c);
        }
    }
    return b;
}

double SupernetObjective::value(const BlockPoint& x) const {
    check_dims(geom_, x, "SupernetObjective::value");
    return mixture_loss(space_, x[0], theta_from(x).mixture_weights(), data_.X, data_.Y,
                        lambda_reg_);
}

Vec SupernetObjective::block_grad(int block, const BlockPoint& x) const {
    check_dims(geom_, x, "SupernetObjective::block_grad");
    LossGrads lg =
        mixture_loss_and_grads(space_, x[0], theta_from(x).mixture_weights(), data_.X, data_.Y,
                               lambda_reg_);
    if (block == 0) return lg.grad_w;
    if (block == 1) return lg.grad_theta.data;
    throw std::invalid_argument("SupernetObjective: block index out of range");
}

Vec SupernetObjective::block_stoch_grad(int block, const BlockPoint& x, Rng& rng) const {
    check_dims(geom_, x, "SupernetObjective::block_stoch_grad");
    const DataSet b = minibatch(rng);
    LossGrads lg = mixture_loss_and_grads(space_, x[0], theta_from(x).mixture_weights(), b.X, b.Y,
                                          lambda_reg_);
    return block == 0 ? lg.grad_w : lg.grad_theta.data;
}

double SupernetObjective::loss_sample(const BlockPoint& x, Rng& rng) const {
    const DataSet b = minibatch(rng);
    return mixture_loss(space_, x[0], theta_from(x).mixture_weights(), b.X, b.Y, lambda_reg_);
}

RegularityConstants SupernetObjective::constants() const {
    // Loose placeholders: the search loops never consult them and the
    // stationarity machinery is not applied to supernet objectives.
    RegularityConstants c;
    c.gamma = 1.0;
    c.block_G = {10.0, 10.0};
    Rng dummy(0);
    c.F = value(initial_point(dummy));
    c.f_star = 0.0;
    return c;
}

BlockPoint SupernetObjective::initial_point(Rng&) const {
    const WeightLayout layout = WeightLayout::build(space_);
    Vec w = init_shared_weights(space_, 0);
    (void)layout;
    Vec theta(static_cast<std::size_t>(space_.num_edges() * space_.num_ops()),
              1.0 / space_.num_ops());
    return {std::move(w), std::move(theta)};
}

}  // namespace gaea
