#include "walkmem/chain.hpp"

#include <cmath>

#include "walkmem/error.hpp"

namespace walkmem {

namespace {

using Entry = Eigen::Triplet<double, int>;

TransitionMatrix from_entries(Eigen::Index states, const std::vector<Entry>& entries) {
    TransitionMatrix p(states, states);
    p.setFromTriplets(entries.begin(), entries.end());
    p.makeCompressed();
    return p;
}

}  // namespace

ArcChain build_arc_chain(const Graph& g, const StrategySpec& strategy) {
    if (!strategy.has_memory()) {
        throw InvalidArgument("arc chains need a memory strategy; " + strategy.label() +
                              " is memoryless (use build_node_chain)");
    }
    const TransitionModel model(g, strategy);
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(g.arc_count()) * 4);
    TransitionDistribution dist;
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        const auto [r, s] = g.arc(a);
        try {
            model.distribution(r, s, dist);
        } catch (const DeadEndError&) {
            throw DeadEndError("arc state (" + std::to_string(r) + ", " + std::to_string(s) +
                               ") has no outgoing transition");
        }
        const ArcId base = g.first_arc(s);
        auto nbrs = g.neighbors(s);
        std::size_t pos = 0;
        // dist and nbrs are both ascending, so a merge finds each arc (s, t)
        for (const auto& t : dist) {
            while (nbrs[pos] != t.node) ++pos;
            entries.emplace_back(a, base + static_cast<ArcId>(pos), t.probability);
        }
    }
    return {strategy, from_entries(g.arc_count(), entries)};
}

NodeChain build_node_chain(const Graph& g, const StrategySpec& strategy) {
    if (strategy.has_memory()) {
        throw InvalidArgument("node chains need a memoryless strategy; " + strategy.label() +
                              " has memory (use build_arc_chain)");
    }
    const TransitionModel model(g, strategy);
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(g.arc_count()));
    TransitionDistribution dist;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        model.distribution(std::nullopt, s, dist);
        for (const auto& t : dist) entries.emplace_back(s, t.node, t.probability);
    }
    return {strategy, from_entries(g.node_count(), entries)};
}

ArcChain lift_to_arcs(const Graph& g, const NodeChain& chain) {
    std::vector<Entry> entries;
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        const NodeId s = g.arc_head(a);
        for (TransitionMatrix::InnerIterator it(chain.transitions, s); it; ++it) {
            entries.emplace_back(a, *g.arc_id(s, static_cast<NodeId>(it.col())), it.value());
        }
    }
    return {chain.strategy, from_entries(g.arc_count(), entries)};
}

double stochasticity_error(const TransitionMatrix& p) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < p.outerSize(); ++r) {
        double sum = 0.0;
        for (TransitionMatrix::InnerIterator it(p, r); it; ++it) sum += it.value();
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

}  // namespace walkmem
