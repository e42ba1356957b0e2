#include "walkmem/stats.hpp"

#include <algorithm>
#include <vector>

#include "walkmem/error.hpp"

namespace walkmem {

Eigen::VectorXd local_clustering(const Graph& g) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(g.node_count());
    std::vector<char> mark(static_cast<std::size_t>(g.node_count()), 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto nbrs = g.neighbors(v);
        const auto k = static_cast<double>(nbrs.size());
        if (nbrs.size() < 2) continue;
        for (NodeId w : nbrs) mark[w] = 1;
        std::int64_t closed = 0;
        for (NodeId w : nbrs) {
            for (NodeId x : g.neighbors(w)) closed += mark[x];
        }
        for (NodeId w : nbrs) mark[w] = 0;
        // every triangle through v is seen twice
        c[v] = static_cast<double>(closed) / (k * (k - 1.0));
    }
    return c;
}

NetworkStats network_stats(const Graph& g) {
    if (g.node_count() < 2) throw InvalidArgument("network_stats needs at least 2 nodes");
    if (!is_connected(g)) {
        throw DisconnectedGraph(std::string("network_stats requires a ") +
                                (g.directed() ? "strongly " : "") + "connected graph");
    }
    NetworkStats s;
    const double n = g.node_count();
    s.nodes = g.node_count();
    s.links = g.link_count();
    const double pairs = g.directed() ? n * (n - 1.0) : n * (n - 1.0) / 2.0;
    s.density = static_cast<double>(s.links) / pairs;
    s.mean_degree = (g.directed() ? 1.0 : 2.0) * static_cast<double>(s.links) / n;
    s.clustering = local_clustering(g.directed() ? g.undirected_projection() : g).mean();

    std::vector<std::int32_t> dist(static_cast<std::size_t>(g.node_count()));
    std::vector<NodeId> queue;
    queue.reserve(dist.size());
    long double total = 0.0;
    std::int64_t diameter = 0;
    for (NodeId src = 0; src < g.node_count(); ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[src] = 0;
        queue.assign(1, src);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const NodeId v = queue[i];
            for (NodeId w : g.neighbors(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (auto d : dist) total += d;
        diameter = std::max<std::int64_t>(diameter, dist[queue.back()]);
    }
    s.mean_path_length = static_cast<double>(total / (n * (n - 1.0)));
    s.diameter = diameter;
    return s;
}

CountMatrix adjacency_matrix(const Graph& g) {
    std::vector<Eigen::Triplet<std::int64_t>> entries;
    entries.reserve(static_cast<std::size_t>(g.arc_count()));
    for (ArcId a = 0; a < g.arc_count(); ++a) entries.emplace_back(g.arc_tail(a), g.arc_head(a), 1);
    CountMatrix A(g.node_count(), g.node_count());
    A.setFromTriplets(entries.begin(), entries.end());
    return A;
}

CountMatrix two_hop_counts(const Graph& g) {
    const CountMatrix A = adjacency_matrix(g);
    CountMatrix B = A * A;
    B.makeCompressed();
    return B;
}

}  // namespace walkmem
