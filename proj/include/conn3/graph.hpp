#pragma once

#include <istream>
#include <utility>

#include "conn3/common.hpp"

namespace conn3 {

/// Simple undirected graph on vertices 1..n. Edges keep input order; adjacency
/// lists enumerate incident edges in input order (both endpoints).
struct Graph {
    Vertex n = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;

    // CSR adjacency: for vertex v, neighbor j and edge id are
    // adjVertex[adjHead[v] + k], adjEdge[adjHead[v] + k].
    std::vector<std::int64_t> adjHead;
    std::vector<Vertex> adjVertex;
    std::vector<std::int32_t> adjEdge;

    std::int64_t m() const { return static_cast<std::int64_t>(edges.size()); }
    void build_adjacency();
};

struct LoadStats {
    std::int64_t droppedSelfLoops = 0;
    std::int64_t droppedParallel = 0;
};

/// Normalizes (drops self-loops and duplicate edges, keeping first occurrences)
/// and verifies connectivity. Throws InputError on an empty or disconnected input,
/// naming two unreachable vertices.
Graph load_graph(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& rawEdges,
                 LoadStats* stats = nullptr);

/// Text format: optional comment lines starting with 'c', a "n m" header (or
/// DIMACS-like "p <word> n m"), then edges as "u v" or "e u v".
Graph read_graph(std::istream& in, LoadStats* stats = nullptr);
Graph read_graph_file(const std::string& path, LoadStats* stats = nullptr);

}  // namespace conn3
