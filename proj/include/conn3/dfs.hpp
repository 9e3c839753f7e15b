#pragma once

#include "conn3/common.hpp"
#include "conn3/graph.hpp"

namespace conn3 {

/// Rooted DFS tree with vertices identified by visit order (root = 1), plus the
/// non-tree edges, which always join an ancestor-descendant pair.
struct DfsTree {
    Vertex n = 0;
    std::vector<Vertex> parent;   // parent[1] = 0
    std::vector<Vertex> nd;       // subtree size; T(v) = [v, v+nd[v])
    std::vector<Vertex> depth;    // depth[1] = 0
    std::vector<Vertex> childHead, childList;  // children in visit order (ascending ids)
    std::vector<BackEdge> edges;               // hi > lo

    // in-edges grouped by lower endpoint, higher endpoints ascending
    std::vector<std::int64_t> inHead;
    std::vector<Vertex> inList;

    bool is_ancestor(Vertex a, Vertex b) const {  // a ancestor of b (reflexive)
        return a <= b && b < a + nd[static_cast<size_t>(a)];
    }
    Vertex child_begin(Vertex v) const { return childHead[static_cast<size_t>(v)]; }
    Vertex child_end(Vertex v) const { return childHead[static_cast<size_t>(v) + 1]; }
    Vertex child_count(Vertex v) const { return child_end(v) - child_begin(v); }

    /// Child c of v with u in T(c); pre: v proper ancestor of u. Binary search
    /// over the (ascending) children list.
    Vertex child_toward(Vertex v, Vertex u) const;

    void finalize();  // nd/depth/childCsr/inCsr from parent[] + edges
};

/// DFS from `start` over the input adjacency order; numbers vertices by visit
/// order and returns the order maps. Iterative (safe on path graphs).
struct DfsResult {
    DfsTree tree;
    std::vector<Vertex> toOrig;  // dfs number -> original vertex
    std::vector<Vertex> toDfs;   // original vertex -> dfs number
};
DfsResult run_dfs(const Graph& g, Vertex start);

/// Builds a DfsTree directly from parent links (vertices already in DFS order)
/// and back-edge pairs. Used by tests and the splitting transform.
DfsTree make_tree(const std::vector<Vertex>& parent, std::vector<BackEdge> edges);

/// One permutation of the base tree: same ancestry, renumbered by a preorder
/// that visits children lists in a key-sorted order.
struct TreeView {
    Vertex n = 0;
    std::vector<Vertex> toBase, toView;        // numbering translation
    std::vector<Vertex> parent, nd, depth;     // in view numbering
    std::vector<Vertex> childHead, childList;  // children in sorted order (ascending view ids)
    std::vector<BackEdge> edges;               // view numbers, sorted by hi ascending

    bool is_ancestor(Vertex a, Vertex b) const {
        return a <= b && b < a + nd[static_cast<size_t>(a)];
    }
    Vertex child_toward(Vertex v, Vertex u) const;
    Vertex first_child(Vertex v) const {
        return childHead[static_cast<size_t>(v)] < childHead[static_cast<size_t>(v) + 1]
                   ? childList[static_cast<size_t>(childHead[v])]
                   : kNone;
    }
};

/// The base tree plus its two key-sorted permutations. Children in `lowInc` are
/// sorted by increasing low1 (none-keys last), in `highDec` by decreasing high1
/// (none-keys last); ties keep base order.
struct DfsForestViews {
    const DfsTree* base = nullptr;
    TreeView lowInc, highDec;
};

/// Keys are base vertex ids (key chains per children list are comparable in any
/// view, so base numbers are canonical). keyNoneLast: none sorts after all keys.
TreeView build_view(const DfsTree& t, const std::vector<Vertex>& key, bool increasing);

DfsForestViews build_views(const DfsTree& t, const std::vector<Vertex>& low1,
                           const std::vector<Vertex>& high1);

}  // namespace conn3
