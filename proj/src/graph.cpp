#include "walkmem/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stack>

#include "walkmem/error.hpp"

namespace walkmem {

Graph Graph::from_pairs(NodeId node_count, bool directed, std::span<const Arc> pairs) {
    if (node_count < 0) throw InvalidArgument("negative node count");

    std::vector<Arc> arcs;
    arcs.reserve(directed ? pairs.size() : 2 * pairs.size());
    for (const Arc& p : pairs) {
        if (p.tail < 0 || p.head < 0 || p.tail >= node_count || p.head >= node_count) {
            throw InvalidArgument("node id out of range");
        }
        if (p.tail == p.head) continue;
        arcs.push_back(p);
        if (!directed) arcs.push_back({p.head, p.tail});
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    Graph g;
    g.node_count_ = node_count;
    g.directed_ = directed;
    g.offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
    g.in_degree_.assign(static_cast<std::size_t>(node_count), 0);
    g.heads_.reserve(arcs.size());
    g.tails_.reserve(arcs.size());
    for (const Arc& a : arcs) {
        ++g.offsets_[a.tail + 1];
        ++g.in_degree_[a.head];
        g.tails_.push_back(a.tail);
        g.heads_.push_back(a.head);
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    return g;
}

double Graph::degree(NodeId u, DegreeConvention convention) const {
    if (!directed_) return out_degree(u);
    switch (convention) {
        case DegreeConvention::Out: return out_degree(u);
        case DegreeConvention::In: return in_degree(u);
        case DegreeConvention::Total: return out_degree(u) + in_degree(u);
    }
    return out_degree(u);
}

std::optional<ArcId> Graph::arc_id(NodeId u, NodeId v) const {
    const auto nbrs = neighbors(u);
    const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
    if (it == nbrs.end() || *it != v) return std::nullopt;
    return static_cast<ArcId>(offsets_[u] + (it - nbrs.begin()));
}

std::vector<Arc> Graph::links() const {
    std::vector<Arc> out;
    out.reserve(static_cast<std::size_t>(link_count()));
    for (ArcId a = 0; a < arc_count(); ++a) {
        if (directed_ || tails_[a] < heads_[a]) out.push_back(arc(a));
    }
    return out;
}

Graph Graph::induced(std::span<const NodeId> nodes) const {
    std::vector<NodeId> relabel(static_cast<std::size_t>(node_count_), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) relabel[nodes[i]] = static_cast<NodeId>(i);
    std::vector<Arc> kept;
    for (ArcId a = 0; a < arc_count(); ++a) {
        const NodeId u = relabel[tails_[a]];
        const NodeId v = relabel[heads_[a]];
        if (u >= 0 && v >= 0) kept.push_back({u, v});
    }
    return from_pairs(static_cast<NodeId>(nodes.size()), directed_, kept);
}

Graph Graph::undirected_projection() const {
    std::vector<Arc> arcs;
    arcs.reserve(heads_.size());
    for (ArcId a = 0; a < arc_count(); ++a) arcs.push_back(arc(a));
    return from_pairs(node_count_, false, arcs);
}

namespace {

// Component label per node; labels are assigned in order of the smallest node
// in each component.
std::vector<NodeId> weak_components(const Graph& g) {
    std::vector<NodeId> label(static_cast<std::size_t>(g.node_count()), -1);
    NodeId next = 0;
    std::vector<NodeId> queue;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (label[s] >= 0) continue;
        label[s] = next;
        queue.assign(1, s);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            for (NodeId v : g.neighbors(queue[i])) {
                if (label[v] < 0) {
                    label[v] = next;
                    queue.push_back(v);
                }
            }
        }
        ++next;
    }
    return label;
}

// Iterative Tarjan. Labels are arbitrary component ids.
std::vector<NodeId> strong_components(const Graph& g) {
    const NodeId n = g.node_count();
    std::vector<NodeId> index(static_cast<std::size_t>(n), -1);
    std::vector<NodeId> low(static_cast<std::size_t>(n), 0);
    std::vector<NodeId> label(static_cast<std::size_t>(n), -1);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<NodeId> stack;
    struct Frame {
        NodeId node;
        std::int32_t next_child;
    };
    std::vector<Frame> calls;
    NodeId counter = 0;
    NodeId components = 0;

    for (NodeId root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        calls.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!calls.empty()) {
            Frame& f = calls.back();
            const auto nbrs = g.neighbors(f.node);
            if (f.next_child < static_cast<std::int32_t>(nbrs.size())) {
                const NodeId w = nbrs[f.next_child++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    calls.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            const NodeId v = f.node;
            calls.pop_back();
            if (!calls.empty()) low[calls.back().node] = std::min(low[calls.back().node], low[v]);
            if (low[v] == index[v]) {
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    label[w] = components;
                } while (w != v);
                ++components;
            }
        }
    }
    return label;
}

std::vector<NodeId> component_labels(const Graph& g) {
    return g.directed() ? strong_components(g) : weak_components(g);
}

}  // namespace

bool is_connected(const Graph& g) {
    if (g.node_count() == 0) return false;
    const auto label = component_labels(g);
    return std::all_of(label.begin(), label.end(), [&](NodeId l) { return l == label[0]; });
}

std::vector<NodeId> largest_component_nodes(const Graph& g) {
    if (g.node_count() == 0) throw InvalidArgument("largest_component of an empty graph");
    const auto label = component_labels(g);
    const auto count = static_cast<std::size_t>(*std::max_element(label.begin(), label.end()) + 1);
    std::vector<NodeId> size(count, 0);
    std::vector<NodeId> smallest(count, g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        ++size[label[u]];
        smallest[label[u]] = std::min(smallest[label[u]], u);
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < count; ++c) {
        if (size[c] > size[best] || (size[c] == size[best] && smallest[c] < smallest[best])) best = c;
    }
    std::vector<NodeId> nodes;
    nodes.reserve(static_cast<std::size_t>(size[best]));
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (static_cast<std::size_t>(label[u]) == best) nodes.push_back(u);
    }
    return nodes;
}

Graph largest_component(const Graph& g) {
    const auto nodes = largest_component_nodes(g);
    return g.induced(nodes);
}

}  // namespace walkmem
