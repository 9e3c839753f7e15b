#pragma once

#include "conn3/dfs.hpp"
#include "conn3/graph.hpp"

namespace conn3 {

enum class VertexKind : std::uint8_t {
    Real,          // an original vertex
    AuxRoot,       // artificial root above the DFS start
    AuxTreeSplit,  // splits an original tree edge
    AuxBackSplit,  // splits an original back-edge; leaf child of its higher endpoint
};

/// The edge-split image of a graph: the artificial root is attached above the
/// DFS start, every original tree edge (v, p(v)) with v not the start vertex is
/// split, and every back-edge is split with the new vertex made a trailing
/// child of the higher endpoint. Removing any set of original vertices leaves
/// original vertices connected exactly as in the base graph, the root and all
/// back-edge higher endpoints are auxiliary, and no two original vertices are
/// parent and child.
struct TransformedGraph {
    DfsTree tree;                  // base DFS tree of the transformed graph
    std::vector<VertexKind> kind;  // by tree id
    std::vector<Vertex> realId;    // tree id -> original vertex (0 for aux)
    std::vector<Vertex> toTree;    // original vertex -> tree id

    Vertex n() const { return tree.n; }
    bool is_real(Vertex v) const { return kind[static_cast<size_t>(v)] == VertexKind::Real; }
};

/// DFS start = lowest-id vertex; adjacency iterated in input order.
TransformedGraph split_transform(const Graph& g);

}  // namespace conn3
