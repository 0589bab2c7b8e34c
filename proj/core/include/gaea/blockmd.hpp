// Block-stochastic mirror descent driver. Each iteration selects one block
// (uniformly at random, or cyclically in practice mode), takes a mirror step
// on it with the block's update rule, and freezes the rest. The designated
// output iterate is either drawn from {x^(1..T)} with probability
// proportional to the step size at t, or is the last iterate.
#pragma once

#include "gaea/mirror.hpp"
#include "gaea/problems.hpp"
#include "gaea/run_record.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace gaea {

enum class BlockSelection { uniform_random, cyclic };
enum class IterateOutput { weighted_random, last_iterate };

/// Per-iteration multipliers applied to each rule's base step size. An empty
/// sequence means a constant schedule (multiplier 1). Explicit sequences must
/// be positive and non-increasing.
struct StepSchedule {
    std::vector<double> multipliers;

    static StepSchedule constant() { return {}; }
    static StepSchedule sequence(std::vector<double> m) { return {std::move(m)}; }

    bool is_constant() const { return multipliers.empty(); }
    double at(int t) const {  // t is 1-based
        return multipliers.empty() ? 1.0 : multipliers[static_cast<std::size_t>(t - 1)];
    }
    void validate(int T) const;
};

struct RunConfig {
    int T = 1;
    StepSchedule schedule;
    // Defaults match the practice caveat (cyclic blocks, last iterate);
    // theory_mode() switches both to the randomized semantics.
    BlockSelection selection = BlockSelection::cyclic;
    IterateOutput output = IterateOutput::last_iterate;
    std::uint64_t seed = 0;
    bool keep_iterates = false;

    static RunConfig practice_mode(int T, std::uint64_t seed);
    static RunConfig theory_mode(int T, std::uint64_t seed);
};

struct TheorySchedule {
    long long T = 0;
    double eta = 0.0;
    double oracle_call_budget = 0.0;  // stochastic oracle calls to reach eps
};

/// T = 16 gamma F (G_w^2 + G_theta^2) / eps^2 (rounded up) and
/// eta = sqrt(4F / (gamma (G_w^2 + G_theta^2) T)), together with the
/// constant-step oracle-call budget 8 gamma b L^2 (F - f_star) / eps^2.
TheorySchedule theory_schedule(const RegularityConstants& c, double eps, int b = 2);

/// Constant step size sqrt(2 b (F - f_star) / (gamma L^2 T)) for a fixed
/// horizon T, the choice under which E Delta_(1/2gamma) decays like 1/sqrt(T).
double constant_step(const RegularityConstants& c, int b, long long T);

/// General b-block driver.
RunRecord run_multi_block(const Objective& f, BlockPoint init, const RunConfig& cfg,
                          const std::vector<UpdateRule>& rules);

/// Two-block specialization: block 0 is w, block 1 is theta. Identical seed
/// mapping to run_multi_block with b = 2.
RunRecord run_two_block(const Objective& f, BlockPoint init, const RunConfig& cfg,
                        const std::array<UpdateRule, 2>& rules);

}  // namespace gaea
