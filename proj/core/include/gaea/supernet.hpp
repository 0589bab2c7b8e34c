// Desk-scale weight-sharing search. A cell is a DAG whose nodes carry
// fixed-width feature vectors; every edge holds a mixture over a small
// operation set, weighted by per-edge simplex parameters theta:
//     x^(i) = sum_{j<i} sum_o theta[(i,j), o] * o(x^(j))
// Gradients of the squared-error training loss w.r.t. both the shared
// operation weights w and theta are hand-coded reverse mode. Search
// alternates SGD steps on w with exponentiated-gradient steps on theta
// (or SGD on softmax logits for the baseline), and a full enumeration
// oracle ranks every discrete architecture for recovery tests.
#pragma once

#include "gaea/arch_params.hpp"
#include "gaea/blockmd.hpp"
#include "gaea/numerics.hpp"
#include "gaea/run_record.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace gaea {

enum class OpKind {
    zero,
    identity,
    linear,      // trainable dense feat_dim x feat_dim map
    diag_scale,  // trainable per-coordinate scaling
    softplus,    // parameter-free smooth nonlinearity
};

std::string op_kind_name(OpKind k);
OpKind op_kind_from_name(const std::string& name);

struct SearchSpace {
    int num_nodes = 0;
    int feat_dim = 0;
    std::vector<std::pair<int, int>> edges;  // (dst, src) with src < dst
    std::vector<OpKind> ops;

    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_ops() const { return static_cast<int>(ops.size()); }
    int input_node() const { return 0; }
    int output_node() const { return num_nodes - 1; }

    /// |O|^|E|; throws when it exceeds the enumeration guard of 2^16.
    long long num_architectures() const;

    void validate() const;

    nlohmann::json to_json() const;
    static SearchSpace from_json(const nlohmann::json& j);
    static SearchSpace load(const std::string& path);
    void save(const std::string& path) const;

    /// The 3-node / 3-edge toy cell over {linear, softplus, zero}; passing
    /// include_zero = false swaps the zero op for identity.
    static SearchSpace toy_three_edge(int feat_dim = 3, bool include_zero = true);
};

/// One operation choice per edge.
struct DiscreteArchitecture {
    std::vector<int> op_per_edge;

    bool operator==(const DiscreteArchitecture&) const = default;
    Matrix one_hot(int num_ops) const;
    std::string describe(const SearchSpace& space) const;
};

/// Per-edge argmax of the mixture weights; ties break to the lowest index.
DiscreteArchitecture discretize(const ArchParams& theta);

// --- shared weights -------------------------------------------------------

/// Offsets of each (edge, op) parameter slice inside the flat weight vector.
struct WeightLayout {
    std::vector<std::vector<int>> offset;  // [edge][op]
    std::vector<std::vector<int>> size;    // [edge][op]; 0 for parameter-free ops
    int total = 0;

    static WeightLayout build(const SearchSpace& space);
};

/// Deterministic init keyed by (edge, op), so any two architectures sharing
/// an (edge, op) instance see identical parameters.
Vec init_shared_weights(const SearchSpace& space, std::uint64_t seed);

// --- forward / backward ----------------------------------------------------

struct ForwardTrace {
    std::vector<Matrix> node_features;              // per node, batch x feat_dim
    std::vector<std::vector<Matrix>> op_outputs;    // [edge][op], batch x feat_dim
};

/// Mixture forward pass; mixture is the |E| x |O| weight matrix (rows on the
/// simplex, or one-hot for a discrete architecture). Throws on non-finite
/// node features, reporting the node index.
Matrix forward_mixture(const SearchSpace& space, const Vec& w, const Matrix& mixture,
                       const Matrix& X, ForwardTrace* trace = nullptr);

struct LossGrads {
    double loss = 0.0;
    Vec grad_w;
    Matrix grad_theta;  // chart-aware: simplex chart or through the softmax Jacobian
};

/// Squared-error loss (1/2n) sum ||pred - y||^2 + lambda_reg ||w||^2 with
/// hand-coded reverse-mode gradients for both blocks.
LossGrads loss_and_grads(const SearchSpace& space, const Vec& w, const ArchParams& theta,
                         const Matrix& X, const Matrix& Y, double lambda_reg);

/// Same loss and gradients taken directly w.r.t. an arbitrary mixture matrix
/// (rows need not be strictly positive; one-hot rows train a discrete
/// architecture). loss_and_grads is the chart-aware wrapper over this.
LossGrads mixture_loss_and_grads(const SearchSpace& space, const Vec& w, const Matrix& mixture,
                                 const Matrix& X, const Matrix& Y, double lambda_reg);

double mixture_loss(const SearchSpace& space, const Vec& w, const Matrix& mixture,
                    const Matrix& X, const Matrix& Y, double lambda_reg);

// --- data -------------------------------------------------------------------

struct DataSet {
    Matrix X;
    Matrix Y;

    int size() const { return X.rows; }
    static DataSet load_csv(const std::string& path, int feat_dim);
    void save_csv(const std::string& path) const;
};

/// Regression targets generated by one planted architecture plus Gaussian
/// noise, which makes "best architecture" well-defined for oracle tests.
DataSet make_planted_dataset(const SearchSpace& space, const DiscreteArchitecture& planted,
                             const Vec& planted_w, int n, double noise_std, std::uint64_t seed);

// --- search ------------------------------------------------------------------

enum class SearchMode { single_level, bilevel };

struct SearchOptions {
    double eta_w = 0.05;
    int warmup_epochs = 0;   // freeze theta for the first W epochs
    int batch_size = 16;
    double lambda_reg = 0.0;
    bool bilevel_per_epoch = false;  // default alternates per minibatch
    int score_samples = 8;           // architecture samples per score-function update
};

/// GAEA: simplex-parameterized theta updated by per-edge exponentiated
/// gradient, shared weights by SGD. cfg.T counts epochs; records per-epoch
/// mean loss, mean edge entropy, and per-block gradient dual norms.
RunRecord gaea_search(const SearchSpace& space, const DataSet& data, const RunConfig& cfg,
                      double eta_arch, SearchMode mode, const SearchOptions& opts = {});

/// Identical loop with theta = softmax(logits) and plain SGD on the logits.
RunRecord baseline_softmax_search(const SearchSpace& space, const DataSet& data,
                                  const RunConfig& cfg, double eta_arch, SearchMode mode,
                                  const SearchOptions& opts = {});

/// Stochastic-relaxation variant: theta updated by EG on REINFORCE gradient
/// estimates (opts.score_samples architecture draws per update).
RunRecord score_function_search(const SearchSpace& space, const DataSet& data,
                                const RunConfig& cfg, double eta_arch, SearchMode mode,
                                const SearchOptions& opts = {});

/// Final theta of a finished search record (block 1 of the final point).
ArchParams arch_params_from_record(const SearchSpace& space, const RunRecord& record);

// --- enumeration oracle -----------------------------------------------------

struct OracleTrainConfig {
    int epochs = 40;
    int batch_size = 16;
    double eta_w = 0.05;
    double lambda_reg = 0.0;
    std::uint64_t seed = 0;
};

struct RankedArchitecture {
    DiscreteArchitecture arch;
    double final_loss = 0.0;
};

/// Trains every discrete architecture from scratch with a fixed budget and
/// shared init mapping; returns them sorted by ascending final full-data
/// loss. Deterministic; throws when |O|^|E| exceeds 2^16.
std::vector<RankedArchitecture> enumerate_oracle(const SearchSpace& space, const DataSet& data,
                                                 const OracleTrainConfig& cfg);

// --- objective adapter -------------------------------------------------------

/// Two-block Objective view of the supernet training loss: block 0 is w
/// (Euclidean), block 1 is flattened theta (product of |E| simplices).
/// Stochastic gradients use minibatch subsampling.
class SupernetObjective final : public Objective {
  public:
    SupernetObjective(SearchSpace space, DataSet data, double lambda_reg = 0.0,
                      int batch_size = 16);

    std::string name() const override { return "supernet"; }
    const ProductGeometry& geometry() const override { return geom_; }
    double value(const BlockPoint& x) const override;
    Vec block_grad(int block, const BlockPoint& x) const override;
    Vec block_stoch_grad(int block, const BlockPoint& x, Rng& rng) const override;
    double loss_sample(const BlockPoint& x, Rng& rng) const override;
    RegularityConstants constants() const override;
    BlockPoint initial_point(Rng& rng) const override;

    const SearchSpace& space() const { return space_; }
    const DataSet& data() const { return data_; }

  private:
    ArchParams theta_from(const BlockPoint& x) const;
    DataSet minibatch(Rng& rng) const;

    SearchSpace space_;
    DataSet data_;
    double lambda_reg_;
    int batch_size_;
    ProductGeometry geom_;
};

}  // namespace gaea
