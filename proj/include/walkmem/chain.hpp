#pragma once

#include <Eigen/SparseCore>

#include "walkmem/graph.hpp"
#include "walkmem/strategy.hpp"

namespace walkmem {

using TransitionMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

/// Markov chain of a one-step-memory walk. State i is arc i of the graph it
/// was built from (see Graph's arc numbering): "at head(i), came from tail(i)".
struct ArcChain {
    StrategySpec strategy;
    TransitionMatrix transitions;

    Eigen::Index state_count() const { return transitions.rows(); }
};

/// Markov chain of a memoryless walk over nodes.
struct NodeChain {
    StrategySpec strategy;
    TransitionMatrix transitions;

    Eigen::Index state_count() const { return transitions.rows(); }
};

/// Row (r, s) holds the strategy's kernel at (r, s). Rejects memoryless
/// strategies and dead-end states.
ArcChain build_arc_chain(const Graph& g, const StrategySpec& strategy);

/// Row s holds the memoryless kernel at s. Rejects memory strategies.
NodeChain build_node_chain(const Graph& g, const StrategySpec& strategy);

/// Re-expresses a memoryless chain on arc states, p_{rs,st} = p_{st}.
ArcChain lift_to_arcs(const Graph& g, const NodeChain& chain);

/// Largest |row sum - 1| over all states.
double stochasticity_error(const TransitionMatrix& p);

}  // namespace walkmem
