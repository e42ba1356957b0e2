#include "walkmem/edge_list.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "walkmem/error.hpp"

namespace walkmem {

namespace {

std::string_view trim_left(std::string_view s) {
    const auto pos = s.find_first_not_of(" \t\r");
    return pos == std::string_view::npos ? std::string_view{} : s.substr(pos);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > start) tokens.push_back(s.substr(start, i - start));
    }
    return tokens;
}

}  // namespace

LoadedGraph load_edge_list(std::string_view text, bool directed) {
    LoadedGraph out;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<Arc> pairs;
    const bool matrix_market = text.starts_with("%%MatrixMarket");
    bool header_pending = matrix_market;

    const auto intern = [&](std::string_view token) {
        auto [it, inserted] = ids.try_emplace(std::string(token), static_cast<NodeId>(ids.size()));
        if (inserted) out.labels.emplace_back(token);
        return it->second;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = trim_left(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#' || line.front() == '%') continue;
        const auto tokens = split_ws(line);
        if (header_pending) {
            header_pending = false;
            continue;
        }
        if (tokens.size() != 2) {
            throw ParseError(line_no, "expected two node tokens, found " + std::to_string(tokens.size()));
        }
        const NodeId u = intern(tokens[0]);
        const NodeId v = intern(tokens[1]);
        if (u == v) {
            ++out.self_loops;
            continue;
        }
        pairs.push_back({u, v});
    }

    if (pairs.empty()) throw ParseError(line_no, "edge list holds no edges");

    out.graph = Graph::from_pairs(static_cast<NodeId>(ids.size()), directed, pairs);
    out.duplicate_lines = pairs.size() - static_cast<std::size_t>(out.graph.link_count());
    return out;
}

LoadedGraph load_edge_list_file(const std::filesystem::path& path, bool directed) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError("cannot open edge list '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_edge_list(buffer.str(), directed);
}

LoadedGraph largest_component(const LoadedGraph& loaded) {
    const auto nodes = largest_component_nodes(loaded.graph);
    LoadedGraph out;
    out.graph = loaded.graph.induced(nodes);
    out.labels.reserve(nodes.size());
    for (NodeId u : nodes) out.labels.push_back(loaded.labels[u]);
    out.duplicate_lines = loaded.duplicate_lines;
    out.self_loops = loaded.self_loops;
    return out;
}

}  // namespace walkmem
