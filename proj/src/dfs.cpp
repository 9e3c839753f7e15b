#include "conn3/dfs.hpp"

#include <algorithm>
#include <cassert>

namespace conn3 {

namespace {

Vertex csr_child_toward(const std::vector<Vertex>& head, const std::vector<Vertex>& list,
                        const std::vector<Vertex>& nd, Vertex v, Vertex u) {
    // children ascend; the wanted child is the last one with id <= u.
    std::int64_t lo = head[static_cast<size_t>(v)], hi = head[static_cast<size_t>(v) + 1];
    if (lo >= hi || u <= v) throw QueryError("child_toward: not a proper ancestor");
    std::int64_t l = lo, r = hi - 1;
    while (l < r) {
        std::int64_t mid = (l + r + 1) / 2;
        if (list[static_cast<size_t>(mid)] <= u)
            l = mid;
        else
            r = mid - 1;
    }
    Vertex c = list[static_cast<size_t>(l)];
    if (!(c <= u && u < c + nd[static_cast<size_t>(c)]))
        throw QueryError("child_toward: not a proper ancestor");
    return c;
}

}  // namespace

Vertex DfsTree::child_toward(Vertex v, Vertex u) const {
    return csr_child_toward(childHead, childList, nd, v, u);
}

Vertex TreeView::child_toward(Vertex v, Vertex u) const {
    return csr_child_toward(childHead, childList, nd, v, u);
}

void DfsTree::finalize() {
    size_t sz = static_cast<size_t>(n) + 1;
    nd.assign(sz, 1);
    depth.assign(sz, 0);
    for (Vertex v = 2; v <= n; ++v) depth[static_cast<size_t>(v)] = depth[parent[v]] + 1;
    for (Vertex v = n; v >= 2; --v) nd[parent[v]] += nd[static_cast<size_t>(v)];

    childHead.assign(sz + 1, 0);
    for (Vertex v = 2; v <= n; ++v) ++childHead[static_cast<size_t>(parent[v]) + 1];
    for (size_t v = 1; v <= static_cast<size_t>(n); ++v) childHead[v + 1] += childHead[v];
    childList.assign(static_cast<size_t>(n) - (n > 0 ? 1 : 0), 0);
    std::vector<Vertex> cur(childHead.begin(), childHead.end());
    for (Vertex v = 2; v <= n; ++v) childList[static_cast<size_t>(cur[parent[v]]++)] = v;

    std::sort(edges.begin(), edges.end(), [](const BackEdge& a, const BackEdge& b) {
        return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
    });
    inHead.assign(sz + 1, 0);
    for (const BackEdge& e : edges) ++inHead[static_cast<size_t>(e.lo) + 1];
    for (size_t v = 1; v <= static_cast<size_t>(n); ++v) inHead[v + 1] += inHead[v];
    inList.assign(edges.size(), 0);
    std::vector<std::int64_t> icur(inHead.begin(), inHead.end());
    for (const BackEdge& e : edges) inList[static_cast<size_t>(icur[e.lo]++)] = e.hi;
    // his within one lo ascend because edges are sorted by hi.
    for (Vertex v = 1; v <= n; ++v)
        std::sort(inList.begin() + inHead[v], inList.begin() + inHead[static_cast<size_t>(v) + 1]);
}

DfsResult run_dfs(const Graph& g, Vertex start) {
    DfsResult res;
    res.toOrig.assign(static_cast<size_t>(g.n) + 1, 0);
    res.toDfs.assign(static_cast<size_t>(g.n) + 1, 0);
    std::vector<Vertex> parentDfs(static_cast<size_t>(g.n) + 1, 0);
    std::vector<std::int64_t> it(static_cast<size_t>(g.n) + 1, 0);
    std::vector<std::int32_t> parentEdge(static_cast<size_t>(g.n) + 1, -1);
    std::vector<BackEdge> backs;

    Vertex next = 0;
    std::vector<Vertex> stack;
    stack.push_back(start);
    it[static_cast<size_t>(start)] = g.adjHead[start];
    res.toDfs[static_cast<size_t>(start)] = ++next;
    res.toOrig[static_cast<size_t>(next)] = start;
    while (!stack.empty()) {
        Vertex v = stack.back();
        if (it[static_cast<size_t>(v)] == g.adjHead[static_cast<size_t>(v) + 1]) {
            stack.pop_back();
            continue;
        }
        std::int64_t pos = it[static_cast<size_t>(v)]++;
        Vertex w = g.adjVertex[static_cast<size_t>(pos)];
        std::int32_t e = g.adjEdge[static_cast<size_t>(pos)];
        if (e == parentEdge[static_cast<size_t>(v)]) continue;
        if (res.toDfs[static_cast<size_t>(w)] == 0) {
            res.toDfs[static_cast<size_t>(w)] = ++next;
            res.toOrig[static_cast<size_t>(next)] = w;
            parentDfs[static_cast<size_t>(next)] = res.toDfs[static_cast<size_t>(v)];
            parentEdge[static_cast<size_t>(w)] = e;
            it[static_cast<size_t>(w)] = g.adjHead[w];
            stack.push_back(w);
        } else if (res.toDfs[static_cast<size_t>(w)] < res.toDfs[static_cast<size_t>(v)]) {
            backs.push_back({res.toDfs[static_cast<size_t>(v)], res.toDfs[static_cast<size_t>(w)]});
        }
    }
    assert(next == g.n);  // caller guarantees connectivity

    std::vector<Vertex> parent(static_cast<size_t>(g.n) + 1, 0);
    for (Vertex d = 1; d <= g.n; ++d) parent[static_cast<size_t>(d)] = parentDfs[d];
    res.tree = make_tree(parent, std::move(backs));
    return res;
}

DfsTree make_tree(const std::vector<Vertex>& parent, std::vector<BackEdge> edges) {
    DfsTree t;
    t.n = static_cast<Vertex>(parent.size()) - 1;
    t.parent = parent;
    t.edges = std::move(edges);
    t.finalize();
    return t;
}

TreeView build_view(const DfsTree& t, const std::vector<Vertex>& key, bool increasing) {
    size_t sz = static_cast<size_t>(t.n) + 1;
    // per-parent stable sort of children by key; none-keys always last
    std::vector<Vertex> order(t.childList);
    for (Vertex v = 1; v <= t.n; ++v) {
        auto b = order.begin() + t.childHead[static_cast<size_t>(v)];
        auto e = order.begin() + t.childHead[static_cast<size_t>(v) + 1];
        std::stable_sort(b, e, [&](Vertex a, Vertex c) {
            Vertex ka = key[static_cast<size_t>(a)], kc = key[static_cast<size_t>(c)];
            if (ka == kNone || kc == kNone) return kc == kNone && ka != kNone;
            return increasing ? ka < kc : ka > kc;
        });
    }
    // preorder over the sorted lists
    TreeView view;
    view.n = t.n;
    view.toBase.assign(sz, 0);
    view.toView.assign(sz, 0);
    std::vector<Vertex> head(t.childHead.begin(), t.childHead.end());
    std::vector<Vertex> stack;
    Vertex next = 0;
    stack.push_back(1);
    view.toView[1] = ++next;
    view.toBase[1] = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        if (head[static_cast<size_t>(v)] == t.childHead[static_cast<size_t>(v) + 1]) {
            stack.pop_back();
            continue;
        }
        Vertex c = order[static_cast<size_t>(head[static_cast<size_t>(v)]++)];
        view.toView[static_cast<size_t>(c)] = ++next;
        view.toBase[static_cast<size_t>(next)] = c;
        stack.push_back(c);
    }

    view.parent.assign(sz, 0);
    view.nd.assign(sz, 0);
    view.depth.assign(sz, 0);
    for (Vertex x = 1; x <= t.n; ++x) {
        Vertex b = view.toBase[static_cast<size_t>(x)];
        view.nd[static_cast<size_t>(x)] = t.nd[static_cast<size_t>(b)];
        view.depth[static_cast<size_t>(x)] = t.depth[static_cast<size_t>(b)];
        view.parent[static_cast<size_t>(x)] =
            t.parent[static_cast<size_t>(b)] == 0 ? 0 : view.toView[t.parent[static_cast<size_t>(b)]];
    }
    view.childHead.assign(sz + 1, 0);
    for (Vertex x = 2; x <= t.n; ++x) ++view.childHead[static_cast<size_t>(view.parent[x]) + 1];
    for (size_t v = 1; v <= static_cast<size_t>(t.n); ++v) view.childHead[v + 1] += view.childHead[v];
    view.childList.assign(t.childList.size(), 0);
    std::vector<Vertex> cur(view.childHead.begin(), view.childHead.end());
    for (Vertex x = 2; x <= t.n; ++x)  // ascending x keeps lists sorted
        view.childList[static_cast<size_t>(cur[view.parent[x]]++)] = x;

    view.edges.reserve(t.edges.size());
    for (const BackEdge& e : t.edges)
        view.edges.push_back({view.toView[static_cast<size_t>(e.hi)],
                              view.toView[static_cast<size_t>(e.lo)]});
    std::sort(view.edges.begin(), view.edges.end(), [](const BackEdge& a, const BackEdge& b) {
        return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
    });
    return view;
}

DfsForestViews build_views(const DfsTree& t, const std::vector<Vertex>& low1,
                           const std::vector<Vertex>& high1) {
    DfsForestViews views;
    views.base = &t;
    views.lowInc = build_view(t, low1, /*increasing=*/true);
    views.highDec = build_view(t, high1, /*increasing=*/false);
    return views;
}

}  // namespace conn3
