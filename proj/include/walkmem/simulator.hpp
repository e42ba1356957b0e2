#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "walkmem/report.hpp"
#include "walkmem/seeding.hpp"
#include "walkmem/stationary.hpp"
#include "walkmem/strategy.hpp"

namespace walkmem {

/// Position of a walker: current node, the node it came from (absent before
/// the first move), and the number of moves made.
struct WalkState {
    std::optional<NodeId> previous;
    NodeId current = 0;
    std::int64_t steps = 0;
};

/// One move drawn from the strategy's distribution at `state`.
WalkState step(const TransitionModel& model, const WalkState& state, Rng& rng);
WalkState step(const Graph& g, const StrategySpec& strategy, const WalkState& state, Rng& rng);

/// Draws next moves for one strategy on one graph. Below `cache_budget` states
/// the per-state cumulative distributions are tabulated once; above it they
/// are recomputed at every move.
class WalkSampler {
public:
    WalkSampler(const TransitionModel& model, std::int64_t cache_budget = 50'000);

    const TransitionModel& model() const { return *model_; }
    bool cached() const { return cached_; }

    /// Steps until the walk started at `start` first reaches `target`, counting
    /// the initial move; nullopt when `max_steps` moves did not reach it.
    std::optional<std::int64_t> first_passage(NodeId start, NodeId target, Rng& rng, std::int64_t max_steps) const;

    /// Per-node visit counts over `samples` moves after `burn_in` moves from a
    /// uniformly chosen start.
    Eigen::VectorXd visit_counts(std::int64_t burn_in, std::int64_t samples, Rng& rng) const;

private:
    // Moves one step; `arc` is the arc just traversed (-1 before the first
    // move) and is updated together with `node`.
    void advance(NodeId& node, ArcId& arc, Rng& rng, TransitionDistribution& scratch) const;

    const TransitionModel* model_;
    bool cached_ = false;
    bool memory_ = false;
    // state s occupies [offsets_[s], offsets_[s+1]) of cumulative_/slot_;
    // slot_ is the position of the chosen node in neighbors(current).
    std::vector<std::int64_t> offsets_;
    std::vector<double> cumulative_;
    std::vector<std::int32_t> slot_;
};

/// Convenience wrapper building a one-off sampler; see WalkSampler::first_passage.
std::optional<std::int64_t> first_passage_time(const Graph& g, const StrategySpec& strategy, NodeId start,
                                               NodeId target, Rng& rng, std::int64_t max_steps);

struct SimConfig {
    enum class Mode { AllPairs, SampledPairs };

    Mode mode = Mode::AllPairs;
    /// Trajectories per ordered pair (all-pairs) or per drawn pair (sampled).
    int repetitions = 10;
    /// Number of ordered pairs drawn with replacement in sampled mode.
    std::int64_t sampled_pairs = 100'000;
    /// Trajectory cap; 0 selects 1000 * N * <k>.
    std::int64_t max_steps = 0;
    std::uint64_t seed = 0;
    /// Largest tolerated fraction of censored trajectories.
    double censored_limit = 0.01;
    std::int64_t cache_budget = 50'000;

    void validate() const;
};

std::int64_t default_max_steps(const Graph& g);

/// Monte Carlo MFPT report (method = simulated). All-pairs mode fills the
/// pair matrix; sampled mode leaves it empty and reports GrMFPT as the mean
/// over drawn pairs. Results do not depend on the number of worker threads.
/// Throws CensoredTrajectories when more than `censored_limit` of the
/// trajectories hit `max_steps`; censored trajectories are counted, never
/// averaged in.
MfptReport estimate_grmfpt(const Graph& g, const StrategySpec& strategy, const SimConfig& config,
                           const std::string& network_name = {});

/// Empirical node-visit frequencies of a single long walk.
OccupationDistribution empirical_occupation(const Graph& g, const StrategySpec& strategy, std::int64_t burn_in,
                                            std::int64_t samples, Rng& rng);

}  // namespace walkmem
