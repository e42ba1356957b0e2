#pragma once

#include <cstdint>
#include <string>

#include "walkmem/graph.hpp"

namespace walkmem {

enum class NetworkFamily { BarabasiAlbert, WattsStrogatz, ErdosRenyi, ErdosRenyiDirected };

std::string to_string(NetworkFamily family);
/// Accepts "ba", "ws", "er", "er-directed" (case-insensitive).
NetworkFamily parse_family(const std::string& name);

struct GeneratorSpec {
    NetworkFamily family = NetworkFamily::ErdosRenyi;
    NodeId nodes = 100;
    /// BA: edges added per new node.
    int attachment = 2;
    /// WS: ring degree (even).
    int ring_degree = 4;
    /// WS: rewiring probability.
    double rewire = 0.2;
    /// ER: target mean degree (per direction for the directed variant).
    double mean_degree = 4.0;
    std::uint64_t seed = 0;
    /// Attempts allowed to obtain a connected sample.
    int max_retries = 100;

    /// Spec whose expected mean degree is `k`: BA uses m = round(k/2), WS the
    /// nearest even ring degree, ER p = k/(N-1).
    static GeneratorSpec for_mean_degree(NetworkFamily family, NodeId nodes, double k,
                                         std::uint64_t seed, double rewire = 0.2);

    void validate() const;
};

/// Samples a connected (strongly connected for ER-directed) graph. The same
/// spec always yields the same graph.
Graph generate(const GeneratorSpec& spec);

}  // namespace walkmem
