#include "conn3/batch_solvers.hpp"

#include <algorithm>
#include <numeric>

#include "conn3/dsu.hpp"

namespace conn3 {

namespace {

// position DSU for "next/prev unskipped index": parent pointers with halving
struct IndexJumper {
    std::vector<Vertex> next;
    explicit IndexJumper(Vertex n) : next(static_cast<size_t>(n) + 2) {
        for (size_t i = 0; i < next.size(); ++i) next[i] = static_cast<Vertex>(i);
    }
    Vertex find(Vertex i) {
        while (next[static_cast<size_t>(i)] != i) {
            next[static_cast<size_t>(i)] = next[static_cast<size_t>(next[static_cast<size_t>(i)])];
            i = next[static_cast<size_t>(i)];
        }
        return i;
    }
    void skip_to(Vertex i, Vertex j) { next[static_cast<size_t>(i)] = j; }
};

}  // namespace

std::vector<Vertex> batch_subtree_extremes(const TreeView& view, const std::vector<Vertex>& l1v,
                                           const std::vector<SubtreeExtremeQuery>& queries,
                                           std::int64_t* opsOut) {
    Vertex n = view.n;
    std::vector<Vertex> answers(queries.size(), kNone);
    // queries bucketed by threshold parent(v), answered in decreasing order;
    // a vertex x stops qualifying once the threshold drops to l1(x) or below
    std::vector<std::int32_t> order(queries.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Vertex> threshold(queries.size());
    for (size_t i = 0; i < queries.size(); ++i) {
        const auto& q = queries[i];
        if (!view.is_ancestor(q.v, q.d)) throw QueryError("subtree extreme: d not in T(v)");
        threshold[i] = view.parent[static_cast<size_t>(q.v)];
    }
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        return threshold[static_cast<size_t>(a)] > threshold[static_cast<size_t>(b)];
    });
    // vertices by l1 descending; l1 = 0 never qualifies
    std::vector<std::int32_t> byL1(static_cast<size_t>(n));
    std::iota(byL1.begin(), byL1.end(), 1);
    std::sort(byL1.begin(), byL1.end(), [&](std::int32_t a, std::int32_t b) {
        return l1v[static_cast<size_t>(a)] > l1v[static_cast<size_t>(b)];
    });

    IndexJumper up(n), down(n);
    std::int64_t ops = 0;
    auto skip = [&](Vertex x) {
        up.skip_to(x, up.find(x + 1));
        down.skip_to(x, down.find(x - 1));
        ++ops;
    };
    for (Vertex x = 1; x <= n; ++x)
        if (l1v[static_cast<size_t>(x)] == kNone) skip(x);

    size_t ptr = 0;
    for (std::int32_t qi : order) {
        Vertex t = threshold[static_cast<size_t>(qi)];
        while (ptr < byL1.size()) {
            Vertex x = byL1[ptr];
            Vertex k = l1v[static_cast<size_t>(x)];
            if (k == kNone || k < t) break;
            skip(x);
            ++ptr;
        }
        const auto& q = queries[static_cast<size_t>(qi)];
        Vertex last = q.d + view.nd[static_cast<size_t>(q.d)] - 1;
        if (q.leftmost) {
            Vertex j = up.find(q.d);
            answers[static_cast<size_t>(qi)] = (j <= last) ? j : kNone;
        } else {
            Vertex j = down.find(last);
            answers[static_cast<size_t>(qi)] = (j >= q.d) ? j : kNone;
        }
        ++ops;
    }
    if (opsOut) *opsOut = ops;
    return answers;
}

std::vector<Vertex> batch_skip_points(const TreeView& view, const std::vector<Vertex>& z,
                                      bool leftmost, std::int64_t* opsOut) {
    Vertex n = view.n;
    std::vector<Vertex> ans(static_cast<size_t>(n) + 1, kNone);
    std::vector<char> marked(static_cast<size_t>(n) + 1, 0);
    RootedDsu dsu(n);
    auto process = [&](const BackEdge& e) {
        Vertex x = e.hi, y = e.lo;
        Vertex v = dsu.representative(x);
        // climb pending ancestors; stop at (or past) the child of y. The walk
        // can start past it when the whole segment below is already answered.
        while (v != kNone && view.parent[static_cast<size_t>(v)] > y) {
            if (z[static_cast<size_t>(v)] != y) {
                ans[static_cast<size_t>(v)] = x;
                Vertex par = view.parent[static_cast<size_t>(v)];
                Vertex next = dsu.representative(par);
                dsu.unite(v, par);
                dsu.set_representative(v, next);
                v = next;
            } else if (!marked[static_cast<size_t>(v)]) {
                marked[static_cast<size_t>(v)] = 1;
                v = dsu.representative(view.parent[static_cast<size_t>(v)]);
            } else {
                break;
            }
        }
    };
    if (leftmost)
        for (const BackEdge& e : view.edges) process(e);
    else
        for (auto it = view.edges.rbegin(); it != view.edges.rend(); ++it) process(*it);
    if (opsOut) *opsOut = dsu.operations();
    return ans;
}

QueryForest build_query_forest(const TreeView& view, const std::vector<SegmentQuery>& queries) {
    Vertex n = view.n;
    std::int32_t numQ = static_cast<std::int32_t>(queries.size());
    QueryForest forest;
    forest.parentQuery.assign(static_cast<size_t>(numQ), -1);
    forest.vertexQuery.assign(static_cast<size_t>(n) + 1, -1);

    std::vector<std::int32_t> order(static_cast<size_t>(numQ));
    std::iota(order.begin(), order.end(), 0);
    auto segSize = [&](std::int32_t q) {
        return view.depth[static_cast<size_t>(queries[static_cast<size_t>(q)].u)] -
               view.depth[static_cast<size_t>(queries[static_cast<size_t>(q)].v)];
    };
    std::sort(order.begin(), order.end(),
              [&](std::int32_t a, std::int32_t b) { return segSize(a) < segSize(b); });

    std::vector<std::int32_t> latest(static_cast<size_t>(n) + 1, -1);
    std::vector<char> isRoot(static_cast<size_t>(numQ), 0);
    for (std::int32_t qi : order) {
        const SegmentQuery& q = queries[static_cast<size_t>(qi)];
        Vertex stop = view.parent[static_cast<size_t>(q.v)];
        Vertex w = q.u;
        while (w != stop) {
            if (forest.vertexQuery[static_cast<size_t>(w)] < 0) {
                forest.vertexQuery[static_cast<size_t>(w)] = qi;
                latest[static_cast<size_t>(w)] = qi;
                w = view.parent[static_cast<size_t>(w)];
            } else {
                std::int32_t pq = latest[static_cast<size_t>(w)];
                const SegmentQuery& prev = queries[static_cast<size_t>(pq)];
                if (view.is_ancestor(prev.z, q.z))
                    forest.parentQuery[static_cast<size_t>(pq)] = qi;
                else
                    isRoot[static_cast<size_t>(pq)] = 1;
                latest[static_cast<size_t>(w)] = qi;
                w = view.parent[static_cast<size_t>(prev.v)];
            }
        }
    }
    (void)isRoot;  // roots are exactly parentQuery == -1
    return forest;
}

SegmentAnswers batch_segment_points(const TreeView& view, const std::vector<SegmentQuery>& queries,
                                    std::int64_t* opsOut) {
    for (const SegmentQuery& q : queries)
        if (!view.is_ancestor(q.v, q.u) || !view.is_ancestor(q.u, q.z))
            throw QueryError("segment query: z/u/v not an ancestry chain");
    QueryForest forest = build_query_forest(view, queries);
    std::int32_t numQ = static_cast<std::int32_t>(queries.size());
    SegmentAnswers out;
    out.left.assign(static_cast<size_t>(numQ), kNone);
    out.right.assign(static_cast<size_t>(numQ), kNone);
    std::int64_t ops = 0;

    auto run = [&](std::vector<Vertex>& ans, bool increasing) {
        // queries shifted by +1 inside the DSU; payload 0 = "no pending ancestor query"
        RootedDsu dsu(numQ);
        auto pending = [&](std::int32_t q) -> std::int32_t {
            if (q < 0) return -1;
            return static_cast<std::int32_t>(dsu.representative(q + 1)) - 1;
        };
        auto settle = [&](std::int32_t q) {  // q answered; fold into its parent's chain
            std::int32_t par = forest.parentQuery[static_cast<size_t>(q)];
            Vertex next = par < 0 ? kNone : static_cast<Vertex>(pending(par) + 1);
            if (par >= 0) dsu.unite(q + 1, par + 1);
            dsu.set_representative(q + 1, next);
        };
        auto process = [&](const BackEdge& e) {
            std::int32_t q = forest.vertexQuery[static_cast<size_t>(e.lo)];
            if (q < 0) return;
            if (ans[static_cast<size_t>(q)] != kNone) q = pending(q);
            while (q >= 0 && view.is_ancestor(queries[static_cast<size_t>(q)].z, e.hi)) {
                ans[static_cast<size_t>(q)] = e.hi;
                std::int32_t par = forest.parentQuery[static_cast<size_t>(q)];
                settle(q);
                q = pending(par);
            }
        };
        if (increasing)
            for (const BackEdge& e : view.edges) process(e);
        else
            for (auto it = view.edges.rbegin(); it != view.edges.rend(); ++it) process(*it);
        ops += dsu.operations();
    };
    run(out.left, true);
    run(out.right, false);
    if (opsOut) *opsOut = ops;
    return out;
}

void validate_nested(const TreeView& view, const std::vector<SegmentQuery>& queries) {
    auto onSegment = [&](Vertex y, const SegmentQuery& q) {
        return view.is_ancestor(q.v, y) && view.is_ancestor(y, q.u);
    };
    size_t numQ = queries.size();
    for (size_t i = 0; i < numQ; ++i) {
        for (size_t j = 0; j < numQ; ++j) {
            if (i == j) continue;
            const SegmentQuery &a = queries[i], &b = queries[j];
            bool aInB = onSegment(a.u, b) && onSegment(a.v, b);
            bool bInA = onSegment(b.u, a) && onSegment(b.v, a);
            bool intersect = false;
            for (Vertex w = a.u;; w = view.parent[static_cast<size_t>(w)]) {
                if (onSegment(w, b)) intersect = true;
                if (w == a.v) break;
            }
            if (intersect && !(aInB || bInA))
                throw QueryError("nested property (1) violated by queries " + std::to_string(i) +
                                 " and " + std::to_string(j));
            if (aInB && bInA && i < j)
                throw QueryError("duplicate segments in queries " + std::to_string(i) + " and " +
                                 std::to_string(j));
            if (aInB && !bInA && !view.is_ancestor(a.z, b.z)) {
                // every enclosing query of b must be unable to reach a's segment
                for (size_t k = 0; k < numQ; ++k) {
                    const SegmentQuery& c = queries[k];
                    bool bInC = (k == j) || (onSegment(b.u, c) && onSegment(b.v, c) &&
                                             !(onSegment(c.u, b) && onSegment(c.v, b)));
                    if (!bInC) continue;
                    for (const BackEdge& e : view.edges)
                        if (view.is_ancestor(c.z, e.hi) && onSegment(e.lo, a))
                            throw QueryError("nested property (2) violated by queries " +
                                             std::to_string(i) + " and " + std::to_string(j));
                }
            }
        }
    }
}

}  // namespace conn3
