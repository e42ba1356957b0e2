#include "walkmem/generate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

#include "walkmem/error.hpp"

namespace walkmem {

std::string to_string(NetworkFamily family) {
    switch (family) {
        case NetworkFamily::BarabasiAlbert: return "ba";
        case NetworkFamily::WattsStrogatz: return "ws";
        case NetworkFamily::ErdosRenyi: return "er";
        case NetworkFamily::ErdosRenyiDirected: return "er-directed";
    }
    return "?";
}

NetworkFamily parse_family(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "ba") return NetworkFamily::BarabasiAlbert;
    if (lower == "ws") return NetworkFamily::WattsStrogatz;
    if (lower == "er") return NetworkFamily::ErdosRenyi;
    if (lower == "er-directed" || lower == "erd" || lower == "er_directed") {
        return NetworkFamily::ErdosRenyiDirected;
    }
    throw InvalidArgument("unknown network family '" + name + "' (expected ba, ws, er, er-directed)");
}

GeneratorSpec GeneratorSpec::for_mean_degree(NetworkFamily family, NodeId nodes, double k,
                                             std::uint64_t seed, double rewire) {
    GeneratorSpec spec;
    spec.family = family;
    spec.nodes = nodes;
    spec.seed = seed;
    spec.rewire = rewire;
    spec.mean_degree = k;
    spec.attachment = std::max(1, static_cast<int>(std::lround(k / 2.0)));
    spec.ring_degree = std::max(2, 2 * static_cast<int>(std::lround(k / 2.0)));
    return spec;
}

void GeneratorSpec::validate() const {
    if (nodes < 2) throw InvalidArgument("generator needs at least 2 nodes");
    if (max_retries < 1) throw InvalidArgument("max_retries must be >= 1");
    switch (family) {
        case NetworkFamily::BarabasiAlbert:
            if (attachment < 1) throw InvalidArgument("BA attachment count m must be >= 1");
            if (attachment >= nodes) throw InvalidArgument("BA attachment count m must be < N");
            break;
        case NetworkFamily::WattsStrogatz:
            if (ring_degree < 2 || ring_degree % 2 != 0) {
                throw InvalidArgument("WS ring degree k must be even and >= 2");
            }
            if (ring_degree >= nodes) throw InvalidArgument("WS ring degree k must be < N");
            if (!(rewire >= 0.0 && rewire <= 1.0)) throw InvalidArgument("WS p_rew must lie in [0, 1]");
            break;
        case NetworkFamily::ErdosRenyi:
        case NetworkFamily::ErdosRenyiDirected:
            if (!(mean_degree > 0.0)) throw InvalidArgument("ER mean degree must be > 0");
            if (mean_degree > nodes - 1) throw InvalidArgument("ER mean degree must be <= N-1");
            break;
    }
}

namespace {

using Engine = std::mt19937_64;

Graph barabasi_albert(NodeId n, int m, Engine& rng) {
    std::vector<Arc> edges;
    // Each edge contributes both endpoints, so uniform picks are degree-biased.
    std::vector<NodeId> endpoints;
    for (NodeId u = 0; u <= m; ++u) {
        for (NodeId v = u + 1; v <= m; ++v) {
            edges.push_back({u, v});
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    std::vector<NodeId> chosen;
    for (NodeId v = m + 1; v < n; ++v) {
        chosen.clear();
        while (static_cast<int>(chosen.size()) < m) {
            std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
            const NodeId t = endpoints[pick(rng)];
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
        }
        for (NodeId t : chosen) {
            edges.push_back({v, t});
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    return Graph::from_pairs(n, false, edges);
}

Graph watts_strogatz(NodeId n, int k, double p, Engine& rng) {
    std::vector<std::set<NodeId>> adj(static_cast<std::size_t>(n));
    for (NodeId u = 0; u < n; ++u) {
        for (int j = 1; j <= k / 2; ++j) {
            const NodeId v = static_cast<NodeId>((u + j) % n);
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    std::bernoulli_distribution coin(p);
    std::uniform_int_distribution<NodeId> any(0, n - 1);
    for (int j = 1; j <= k / 2; ++j) {
        for (NodeId u = 0; u < n; ++u) {
            const NodeId v = static_cast<NodeId>((u + j) % n);
            if (!coin(rng)) continue;
            if (!adj[u].contains(v)) continue;  // already rewired away
            if (static_cast<NodeId>(adj[u].size()) >= n - 1) continue;
            NodeId w;
            do {
                w = any(rng);
            } while (w == u || adj[u].contains(w));
            adj[u].erase(v);
            adj[v].erase(u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    std::vector<Arc> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : adj[u]) {
            if (u < v) edges.push_back({u, v});
        }
    }
    return Graph::from_pairs(n, false, edges);
}

Graph erdos_renyi(NodeId n, double mean_degree, bool directed, Engine& rng) {
    std::bernoulli_distribution coin(mean_degree / (n - 1));
    std::vector<Arc> arcs;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = directed ? 0 : u + 1; v < n; ++v) {
            if (u != v && coin(rng)) arcs.push_back({u, v});
        }
    }
    return Graph::from_pairs(n, directed, arcs);
}

}  // namespace

Graph generate(const GeneratorSpec& spec) {
    spec.validate();
    Engine rng(spec.seed);
    for (int attempt = 0; attempt < spec.max_retries; ++attempt) {
        Graph g;
        switch (spec.family) {
            case NetworkFamily::BarabasiAlbert:
                g = barabasi_albert(spec.nodes, spec.attachment, rng);
                break;
            case NetworkFamily::WattsStrogatz:
                g = watts_strogatz(spec.nodes, spec.ring_degree, spec.rewire, rng);
                break;
            case NetworkFamily::ErdosRenyi:
                g = erdos_renyi(spec.nodes, spec.mean_degree, false, rng);
                break;
            case NetworkFamily::ErdosRenyiDirected:
                g = erdos_renyi(spec.nodes, spec.mean_degree, true, rng);
                break;
        }
        if (is_connected(g)) return g;
    }
    throw GenerationError(to_string(spec.family) + " generator did not produce a connected graph within " +
                          std::to_string(spec.max_retries) + " attempts (seed " +
                          std::to_string(spec.seed) + ")");
}

}  // namespace walkmem
