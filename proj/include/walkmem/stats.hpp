#pragma once

#include <cstdint>

#include <Eigen/SparseCore>

#include "walkmem/graph.hpp"

namespace walkmem {

/// Structural summary of a connected network.
struct NetworkStats {
    std::int64_t nodes = 0;
    std::int64_t links = 0;
    double density = 0.0;
    double mean_degree = 0.0;
    /// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
    /// Directed graphs use their undirected projection.
    double clustering = 0.0;
    double mean_path_length = 0.0;
    std::int64_t diameter = 0;
};

/// Requires a connected (strongly, if directed) graph; throws DisconnectedGraph
/// otherwise.
NetworkStats network_stats(const Graph& g);

/// Local clustering coefficient of every node of an undirected graph.
Eigen::VectorXd local_clustering(const Graph& g);

using CountMatrix = Eigen::SparseMatrix<std::int64_t, Eigen::RowMajor>;

CountMatrix adjacency_matrix(const Graph& g);

/// B = A^2: entry (u, v) counts length-2 walks u -> w -> v, diagonal included.
CountMatrix two_hop_counts(const Graph& g);

}  // namespace walkmem
