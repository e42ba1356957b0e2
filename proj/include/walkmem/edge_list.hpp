#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "walkmem/graph.hpp"

namespace walkmem {

struct LoadedGraph {
    Graph graph;
    /// Original token of each node, indexed by dense id.
    std::vector<std::string> labels;
    std::size_t duplicate_lines = 0;
    std::size_t self_loops = 0;

    std::size_t dropped() const { return duplicate_lines + self_loops; }
};

/// Parses whitespace-separated node pairs, one per line. Lines starting with
/// '#' or '%' are comments. Node tokens are arbitrary strings numbered in
/// first-seen order. A Matrix Market banner ("%%MatrixMarket") marks the first
/// non-comment line as a size header, which is skipped.
LoadedGraph load_edge_list(std::string_view text, bool directed);

LoadedGraph load_edge_list_file(const std::filesystem::path& path, bool directed);

/// Restricts a loaded graph to its largest (strongly) connected component and
/// carries the labels along.
LoadedGraph largest_component(const LoadedGraph& loaded);

}  // namespace walkmem
