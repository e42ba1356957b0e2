#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace walkmem {

using NodeId = std::int32_t;
using ArcId = std::int32_t;

/// Which degree a strategy means by k_t on directed graphs. Undirected graphs
/// ignore the convention.
enum class DegreeConvention { Out, In, Total };

struct Arc {
    NodeId tail;
    NodeId head;

    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Immutable simple graph in compressed sparse row form.
///
/// Every graph is stored as a set of arcs. An undirected edge {u, v} is counted
/// once by `link_count()` but appears as both arcs (u, v) and (v, u). Arcs are
/// numbered densely by their position in the CSR array, so the arcs leaving `u`
/// occupy `[first_arc(u), first_arc(u) + out_degree(u))` with heads sorted
/// ascending. This numbering is the state space of one-step-memory walks.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from node pairs. Self-loops and repeated pairs are
    /// dropped; for undirected graphs (u, v) and (v, u) name the same edge.
    static Graph from_pairs(NodeId node_count, bool directed, std::span<const Arc> pairs);

    NodeId node_count() const noexcept { return node_count_; }
    bool directed() const noexcept { return directed_; }

    /// Number of edges (undirected) or arcs (directed).
    std::int64_t link_count() const noexcept {
        return directed_ ? arc_count() : arc_count() / 2;
    }
    ArcId arc_count() const noexcept { return static_cast<ArcId>(heads_.size()); }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {heads_.data() + offsets_[u], heads_.data() + offsets_[u + 1]};
    }

    std::int32_t out_degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
    std::int32_t in_degree(NodeId u) const { return in_degree_[u]; }
    double degree(NodeId u, DegreeConvention convention) const;

    ArcId first_arc(NodeId u) const { return offsets_[u]; }
    NodeId arc_tail(ArcId a) const { return tails_[a]; }
    NodeId arc_head(ArcId a) const { return heads_[a]; }
    Arc arc(ArcId a) const { return {tails_[a], heads_[a]}; }

    bool has_arc(NodeId u, NodeId v) const { return arc_id(u, v).has_value(); }
    std::optional<ArcId> arc_id(NodeId u, NodeId v) const;

    /// Each link once: all arcs for directed graphs, pairs with u < v otherwise.
    std::vector<Arc> links() const;

    /// Subgraph induced by `nodes`; node i of the result is `nodes[i]`.
    Graph induced(std::span<const NodeId> nodes) const;

    /// Same nodes, arcs made symmetric.
    Graph undirected_projection() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    NodeId node_count_ = 0;
    bool directed_ = false;
    std::vector<ArcId> offsets_{0};
    std::vector<NodeId> heads_;
    std::vector<NodeId> tails_;
    std::vector<std::int32_t> in_degree_;
};

/// True when every node reaches every other (strongly, for directed graphs).
bool is_connected(const Graph& g);

/// Node ids of the largest (strongly) connected component, ascending. Ties go
/// to the component holding the smallest node id.
std::vector<NodeId> largest_component_nodes(const Graph& g);

/// Induced subgraph on `largest_component_nodes(g)`, relabeled densely.
Graph largest_component(const Graph& g);

}  // namespace walkmem
