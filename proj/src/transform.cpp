#include "conn3/transform.hpp"

#include <algorithm>
#include <cassert>

namespace conn3 {

// Two passes: DFS the original graph from vertex 1, then lay out the split
// image directly as a tree (its structure is forced: root - start - alternating
// split/real vertices, back-split leaves after tree-split children).
TransformedGraph split_transform(const Graph& g) {
    DfsResult d0 = run_dfs(g, 1);
    const DfsTree& t0 = d0.tree;

    Vertex n0 = g.n;
    std::int64_t mBack = static_cast<std::int64_t>(t0.edges.size());
    Vertex total = static_cast<Vertex>(n0 + 1 + (n0 - 1) + mBack);

    TransformedGraph tg;
    tg.kind.assign(static_cast<size_t>(total) + 1, VertexKind::Real);
    tg.realId.assign(static_cast<size_t>(total) + 1, 0);
    tg.toTree.assign(static_cast<size_t>(n0) + 1, 0);

    std::vector<Vertex> parent(static_cast<size_t>(total) + 1, 0);
    std::vector<BackEdge> edges;
    edges.reserve(static_cast<size_t>(mBack));

    // back-edges grouped by higher endpoint (t0 numbers), lows ascending
    std::vector<std::vector<Vertex>> stems(static_cast<size_t>(n0) + 1);
    for (const BackEdge& e : t0.edges) stems[static_cast<size_t>(e.hi)].push_back(e.lo);
    for (auto& s : stems) std::sort(s.begin(), s.end());

    // Preorder walk of t0; every real vertex v != start gets a tree-split
    // between p(v) and v, then its back-split leaves. Numbers are assigned in
    // final DFS order, so the result is already a valid DFS tree.
    Vertex next = 0;
    Vertex root = ++next;
    tg.kind[static_cast<size_t>(root)] = VertexKind::AuxRoot;

    struct Frame {
        Vertex v0;        // original vertex (t0 number)
        Vertex attachTo;  // tree id the subtree hangs from
        Vertex childIdx;  // next child index in t0
        Vertex self = 0;  // tree id of v0 once emitted
        bool emitted = false;
    };
    std::vector<Frame> stack;
    stack.push_back({1, root, t0.child_begin(1), 0, false});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (!f.emitted) {
            Vertex at = f.attachTo;
            if (f.v0 != 1) {  // split the incoming tree edge (start keeps a direct edge to root)
                Vertex split = ++next;
                tg.kind[static_cast<size_t>(split)] = VertexKind::AuxTreeSplit;
                parent[static_cast<size_t>(split)] = at;
                at = split;
            }
            f.self = ++next;
            parent[static_cast<size_t>(f.self)] = at;
            tg.kind[static_cast<size_t>(f.self)] = VertexKind::Real;
            Vertex orig = d0.toOrig[static_cast<size_t>(f.v0)];
            tg.realId[static_cast<size_t>(f.self)] = orig;
            tg.toTree[static_cast<size_t>(orig)] = f.self;
            f.emitted = true;
        }
        if (f.childIdx < t0.child_end(f.v0)) {
            Vertex c0 = t0.childList[static_cast<size_t>(f.childIdx++)];
            stack.push_back({c0, f.self, t0.child_begin(c0), 0, false});
            continue;
        }
        // trailing back-split leaves; lower endpoints resolved after numbering
        for (Vertex lo0 : stems[static_cast<size_t>(f.v0)]) {
            Vertex leaf = ++next;
            tg.kind[static_cast<size_t>(leaf)] = VertexKind::AuxBackSplit;
            parent[static_cast<size_t>(leaf)] = f.self;
            edges.push_back({leaf, lo0});  // lo0 still a t0 number
        }
        stack.pop_back();
    }
    assert(next == total);
    for (BackEdge& e : edges)
        e.lo = tg.toTree[static_cast<size_t>(d0.toOrig[static_cast<size_t>(e.lo)])];

    tg.tree = make_tree(parent, std::move(edges));
    return tg;
}

}  // namespace conn3
