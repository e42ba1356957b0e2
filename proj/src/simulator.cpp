#include "walkmem/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "walkmem/error.hpp"

namespace walkmem {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double unit(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::int32_t uniform_slot(std::int32_t count, Rng& rng) {
    return std::uniform_int_distribution<std::int32_t>(0, count - 1)(rng);
}

// Index into [first, last) by cumulative-sum inversion.
template <typename It>
std::ptrdiff_t invert(It first, It last, double u) {
    for (It it = first; it != last; ++it) {
        if (u < *it) return it - first;
    }
    return (last - first) - 1;
}

std::size_t pick(const TransitionDistribution& dist, double u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist[i].probability;
        if (u < acc) return i;
    }
    return dist.size() - 1;
}

}  // namespace

WalkState step(const TransitionModel& model, const WalkState& state, Rng& rng) {
    const auto dist = model.distribution(state.previous, state.current);
    const NodeId next = dist[pick(dist, unit(rng))].node;
    return {state.current, next, state.steps + 1};
}

WalkState step(const Graph& g, const StrategySpec& strategy, const WalkState& state, Rng& rng) {
    return step(TransitionModel(g, strategy), state, rng);
}

WalkSampler::WalkSampler(const TransitionModel& model, std::int64_t cache_budget)
    : model_(&model), memory_(model.spec().has_memory()) {
    const Graph& g = model.graph();
    const std::int64_t states = memory_ ? g.arc_count() : g.node_count();
    cached_ = states <= cache_budget;
    if (!cached_) return;

    offsets_.reserve(static_cast<std::size_t>(states) + 1);
    offsets_.push_back(0);
    TransitionDistribution dist;
    for (std::int64_t s = 0; s < states; ++s) {
        NodeId current;
        if (memory_) {
            const Arc a = g.arc(static_cast<ArcId>(s));
            current = a.head;
            model.distribution(a.tail, current, dist);
        } else {
            current = static_cast<NodeId>(s);
            model.distribution(std::nullopt, current, dist);
        }
        const auto nbrs = g.neighbors(current);
        double acc = 0.0;
        std::size_t pos = 0;
        for (const auto& t : dist) {
            while (nbrs[pos] != t.node) ++pos;
            acc += t.probability;
            cumulative_.push_back(acc);
            slot_.push_back(static_cast<std::int32_t>(pos));
        }
        offsets_.push_back(static_cast<std::int64_t>(cumulative_.size()));
    }
}

void WalkSampler::advance(NodeId& node, ArcId& arc, Rng& rng, TransitionDistribution& scratch) const {
    const Graph& g = model_->graph();
    if (memory_ && arc < 0) {
        const std::int32_t k = g.out_degree(node);
        if (k == 0) throw DeadEndError("node " + std::to_string(node) + " has no out-neighbors");
        arc = g.first_arc(node) + uniform_slot(k, rng);
        node = g.arc_head(arc);
        return;
    }
    if (cached_) {
        const std::int64_t state = memory_ ? arc : node;
        const auto first = cumulative_.begin() + offsets_[state];
        const auto last = cumulative_.begin() + offsets_[state + 1];
        if (first == last) throw DeadEndError("node " + std::to_string(node) + " has no out-neighbors");
        const auto i = offsets_[state] + invert(first, last, unit(rng));
        arc = g.first_arc(node) + slot_[i];
        node = g.arc_head(arc);
        return;
    }
    const std::optional<NodeId> previous = arc >= 0 ? std::optional<NodeId>(g.arc_tail(arc)) : std::nullopt;
    model_->distribution(previous, node, scratch);
    const NodeId next = scratch[pick(scratch, unit(rng))].node;
    arc = *g.arc_id(node, next);
    node = next;
}

std::optional<std::int64_t> WalkSampler::first_passage(NodeId start, NodeId target, Rng& rng,
                                                       std::int64_t max_steps) const {
    if (start == target) throw InvalidArgument("first passage needs distinct start and target");
    NodeId node = start;
    ArcId arc = -1;
    TransitionDistribution scratch;
    for (std::int64_t steps = 1; steps <= max_steps; ++steps) {
        advance(node, arc, rng, scratch);
        if (node == target) return steps;
    }
    return std::nullopt;
}

Eigen::VectorXd WalkSampler::visit_counts(std::int64_t burn_in, std::int64_t samples, Rng& rng) const {
    const Graph& g = model_->graph();
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(g.node_count());
    NodeId node = uniform_slot(g.node_count(), rng);
    ArcId arc = -1;
    TransitionDistribution scratch;
    for (std::int64_t i = 0; i < burn_in; ++i) advance(node, arc, rng, scratch);
    for (std::int64_t i = 0; i < samples; ++i) {
        advance(node, arc, rng, scratch);
        counts[node] += 1.0;
    }
    return counts;
}

std::optional<std::int64_t> first_passage_time(const Graph& g, const StrategySpec& strategy, NodeId start,
                                               NodeId target, Rng& rng, std::int64_t max_steps) {
    const TransitionModel model(g, strategy);
    return WalkSampler(model).first_passage(start, target, rng, max_steps);
}

void SimConfig::validate() const {
    if (repetitions < 1) throw InvalidArgument("repetitions must be >= 1");
    if (mode == Mode::SampledPairs && sampled_pairs < 1) throw InvalidArgument("sampled pair count must be >= 1");
    if (max_steps < 0) throw InvalidArgument("max_steps must be >= 1 (or 0 for the default)");
    if (!(censored_limit >= 0.0)) throw InvalidArgument("censored_limit must be >= 0");
}

std::int64_t default_max_steps(const Graph& g) {
    const double k = static_cast<double>(g.arc_count()) / g.node_count();
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(1000.0 * g.node_count() * k)));
}

namespace {

// Streaming sum of one block of trajectories.
struct Tally {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t count = 0;
    std::int64_t censored = 0;

    void add(std::optional<std::int64_t> steps) {
        if (!steps) {
            ++censored;
            return;
        }
        const auto x = static_cast<double>(*steps);
        sum += x;
        sum_sq += x * x;
        ++count;
    }
    double mean() const { return count ? sum / count : kNaN; }
    double variance() const {
        if (count < 2) return kNaN;
        return std::max(0.0, (sum_sq - sum * sum / count) / (count - 1));
    }
};

constexpr std::uint64_t kAllPairsStream = 0xA11;
constexpr std::uint64_t kSampledStream = 0x5A3;
constexpr std::int64_t kSampledChunk = 1024;

void check_censoring(std::int64_t censored, std::int64_t total, const SimConfig& config, std::int64_t max_steps) {
    if (static_cast<double>(censored) > config.censored_limit * static_cast<double>(total)) {
        throw CensoredTrajectories(std::to_string(censored) + " of " + std::to_string(total) +
                                   " trajectories exceeded max_steps=" + std::to_string(max_steps) +
                                   "; raise max_steps");
    }
}

}  // namespace

MfptReport estimate_grmfpt(const Graph& g, const StrategySpec& strategy, const SimConfig& config,
                           const std::string& network_name) {
    config.validate();
    const NodeId n = g.node_count();
    if (n < 2) throw InvalidArgument("MFPT needs at least 2 nodes");
    if (!is_connected(g)) {
        throw DisconnectedGraph(std::string("simulation requires a ") + (g.directed() ? "strongly " : "") +
                                "connected graph");
    }
    const TransitionModel model(g, strategy);
    const WalkSampler sampler(model, config.cache_budget);
    const std::int64_t max_steps = config.max_steps > 0 ? config.max_steps : default_max_steps(g);

    MfptReport report;
    report.network = network_name;
    report.strategy = strategy.label();
    report.method = Method::Simulated;
    report.nodes = n;

    if (config.mode == SimConfig::Mode::AllPairs) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, kNaN);
        Eigen::MatrixXd var = Eigen::MatrixXd::Constant(n, n, kNaN);
        std::vector<std::int64_t> censored(static_cast<std::size_t>(n), 0);
        std::vector<std::string> failures(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
        for (NodeId z = 0; z < n; ++z) {
            try {
                for (NodeId a = 0; a < n; ++a) {
                    if (a == z) continue;
                    Rng rng(derive_seed(config.seed, {kAllPairsStream, static_cast<std::uint64_t>(a),
                                                      static_cast<std::uint64_t>(z)}));
                    Tally t;
                    for (int rep = 0; rep < config.repetitions; ++rep) {
                        t.add(sampler.first_passage(a, z, rng, max_steps));
                    }
                    m(a, z) = t.mean();
                    var(a, z) = t.variance();
                    censored[z] += t.censored;
                }
            } catch (const Error& e) {
                failures[z] = e.what();
            }
        }
        for (const auto& f : failures) {
            if (!f.empty()) throw Error("simulation_failed", f);
        }
        report.pairs = static_cast<std::int64_t>(n) * (n - 1);
        report.trajectories = report.pairs * config.repetitions;
        for (auto c : censored) report.censored += c;
        check_censoring(report.censored, report.trajectories, config, max_steps);

        report.target_gmfpt.resize(n);
        for (NodeId z = 0; z < n; ++z) report.target_gmfpt[z] = gmfpt(m, z);
        report.grmfpt = grmfpt(report.target_gmfpt);
        // G is the mean of P pair means, each over `repetitions` draws.
        double var_sum = 0.0;
        for (NodeId z = 0; z < n; ++z) {
            for (NodeId a = 0; a < n; ++a) {
                if (a != z && std::isfinite(var(a, z))) var_sum += var(a, z);
            }
        }
        report.standard_error = config.repetitions > 1
                                    ? std::sqrt(var_sum / config.repetitions) / static_cast<double>(report.pairs)
                                    : kNaN;
        report.pair_mfpt = std::move(m);
        return report;
    }

    const std::int64_t total_pairs = config.sampled_pairs;
    const std::int64_t chunks = (total_pairs + kSampledChunk - 1) / kSampledChunk;
    std::vector<Tally> chunk_tally(static_cast<std::size_t>(chunks));
    std::vector<std::vector<Tally>> chunk_targets(static_cast<std::size_t>(chunks));
    std::vector<std::string> failures(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
        try {
            Rng rng(derive_seed(config.seed, {kSampledStream, static_cast<std::uint64_t>(c)}));
            auto& per_target = chunk_targets[c];
            per_target.assign(static_cast<std::size_t>(n), Tally{});
            const std::int64_t begin = c * kSampledChunk;
            const std::int64_t end = std::min(total_pairs, begin + kSampledChunk);
            for (std::int64_t i = begin; i < end; ++i) {
                const NodeId z = uniform_slot(n, rng);
                NodeId a = uniform_slot(n - 1, rng);
                if (a >= z) ++a;
                for (int rep = 0; rep < config.repetitions; ++rep) {
                    const auto steps = sampler.first_passage(a, z, rng, max_steps);
                    chunk_tally[c].add(steps);
                    per_target[z].add(steps);
                }
            }
        } catch (const Error& e) {
            failures[c] = e.what();
        }
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw Error("simulation_failed", f);
    }

    Tally all;
    std::vector<Tally> per_target(static_cast<std::size_t>(n));
    for (std::int64_t c = 0; c < chunks; ++c) {
        all.sum += chunk_tally[c].sum;
        all.sum_sq += chunk_tally[c].sum_sq;
        all.count += chunk_tally[c].count;
        all.censored += chunk_tally[c].censored;
        for (NodeId z = 0; z < n; ++z) {
            per_target[z].sum += chunk_targets[c][z].sum;
            per_target[z].count += chunk_targets[c][z].count;
        }
    }
    report.pairs = total_pairs;
    report.trajectories = total_pairs * config.repetitions;
    report.censored = all.censored;
    check_censoring(report.censored, report.trajectories, config, max_steps);
    report.target_gmfpt.resize(n);
    for (NodeId z = 0; z < n; ++z) report.target_gmfpt[z] = per_target[z].mean();
    report.grmfpt = all.mean();
    report.standard_error = std::sqrt(all.variance() / static_cast<double>(all.count));
    return report;
}

OccupationDistribution empirical_occupation(const Graph& g, const StrategySpec& strategy, std::int64_t burn_in,
                                            std::int64_t samples, Rng& rng) {
    if (samples < 1) throw InvalidArgument("samples must be >= 1");
    const TransitionModel model(g, strategy);
    const WalkSampler sampler(model);
    const Eigen::VectorXd counts = sampler.visit_counts(burn_in, samples, rng);
    return counts / static_cast<double>(samples);
}

}  // namespace walkmem
