#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walkmem/graph.hpp"
#include "walkmem/stats.hpp"

namespace walkmem {

/// The seven search strategies. The first two are memoryless; the rest choose
/// the next node from the current node s and the previous node r.
enum class StrategyKind {
    Uniform,                  // U-RW
    InverseDegree,            // ID-RW
    Forward,                  // F-RWM
    InverseDegreeMemory,      // ID-RWM
    TwoHop,                   // 2H-RWM
    Persistent,               // P-RWM
    PersistentInverseDegree,  // PID-RWM
};

inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::Uniform,          StrategyKind::InverseDegree, StrategyKind::TwoHop,
    StrategyKind::InverseDegreeMemory, StrategyKind::Forward,    StrategyKind::Persistent,
    StrategyKind::PersistentInverseDegree,
};

/// Short upper-case name, e.g. "PID-RWM".
std::string display_name(StrategyKind kind);

struct StrategySpec {
    StrategyKind kind = StrategyKind::Uniform;
    /// Weight ratio of non-common to common neighbors (P-RWM, PID-RWM).
    double alpha = 10.0;
    /// Weight ratio of backtracking to common neighbors (P-RWM).
    double beta = 0.01;
    DegreeConvention degree = DegreeConvention::Out;

    bool has_memory() const {
        return kind != StrategyKind::Uniform && kind != StrategyKind::InverseDegree;
    }

    void validate() const;

    /// Canonical grammar form, e.g. "p-rwm(alpha=10,beta=0.01)". Parameters a
    /// kind does not use are omitted.
    std::string label() const;

    /// Parses "u-rw", "pid-rwm(alpha=10)", "id-rw(degree=in)", ... Omitted
    /// parameters take the defaults above.
    static StrategySpec parse(std::string_view text);

    friend bool operator==(const StrategySpec&, const StrategySpec&) = default;
};

/// Splits a comma-separated strategy list, respecting parentheses.
std::vector<StrategySpec> parse_strategy_list(std::string_view text);

/// Default seven-strategy line-up with alpha = 10, beta = 0.01.
std::vector<StrategySpec> default_strategies();

struct Transition {
    NodeId node;
    double probability;
};

/// Next-node distribution over out-neighbors of the current node, ascending by
/// node id. Zero-probability candidates are omitted.
using TransitionDistribution = std::vector<Transition>;

double probability_of(const TransitionDistribution& dist, NodeId node);

TransitionDistribution uniform_kernel(const Graph& g, NodeId s);
TransitionDistribution inverse_degree_kernel(const Graph& g, NodeId s,
                                             DegreeConvention conv = DegreeConvention::Out);
TransitionDistribution forward_memory_kernel(const Graph& g, NodeId r, NodeId s);
TransitionDistribution inverse_degree_memory_kernel(const Graph& g, NodeId r, NodeId s,
                                                    DegreeConvention conv = DegreeConvention::Out);
TransitionDistribution two_hop_memory_kernel(const Graph& g, NodeId r, NodeId s,
                                             const CountMatrix& two_hop);
TransitionDistribution persistent_kernel(const Graph& g, NodeId r, NodeId s, double alpha,
                                         double beta);
TransitionDistribution persistent_inverse_degree_kernel(
    const Graph& g, NodeId r, NodeId s, double alpha,
    DegreeConvention conv = DegreeConvention::Out);

/// A strategy bound to a graph, with whatever precomputation the strategy needs
/// (the two-hop count matrix for 2H-RWM). Evaluation is lazy and thread-safe.
class TransitionModel {
public:
    TransitionModel(const Graph& g, StrategySpec spec);

    const Graph& graph() const { return *graph_; }
    const StrategySpec& spec() const { return spec_; }

    /// Distribution of the next node given the current node and, if the walk
    /// has moved at least once, the previous node. The very first move of a
    /// memory strategy is uniform over the neighbors; memoryless strategies
    /// ignore `previous`.
    void distribution(std::optional<NodeId> previous, NodeId current,
                      TransitionDistribution& out) const;
    TransitionDistribution distribution(std::optional<NodeId> previous, NodeId current) const;

private:
    const Graph* graph_;
    StrategySpec spec_;
    std::optional<CountMatrix> two_hop_;
};

}  // namespace walkmem
