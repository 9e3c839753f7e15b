#include "conn3/dfs_params.hpp"

#include <algorithm>
#include <cassert>

#include "conn3/batch_solvers.hpp"
#include "conn3/dsu.hpp"
#include "conn3/tree_oracles.hpp"

namespace conn3 {

namespace {

// keep the k smallest distinct values (ascending, 0-terminated)
template <int K>
void insert_distinct_min(Vertex (&slot)[K], Vertex value) {
    for (int i = 0; i < K; ++i) {
        if (slot[i] == value) return;
        if (slot[i] == kNone || value < slot[i]) {
            for (int j = K - 1; j > i; --j) slot[j] = slot[j - 1];
            slot[i] = value;
            return;
        }
    }
}

void compute_high_points(const DfsTree& t, std::vector<Vertex>& high1, std::vector<Vertex>& high2) {
    RootedDsu dsu(t.n);
    for (Vertex y = t.n; y >= 1; --y) {
        for (std::int64_t it = t.inHead[static_cast<size_t>(y)];
             it < t.inHead[static_cast<size_t>(y) + 1]; ++it) {
            Vertex x = t.inList[static_cast<size_t>(it)];
            Vertex z = dsu.representative(x);
            while (t.parent[static_cast<size_t>(z)] != y) {
                assert(t.parent[static_cast<size_t>(z)] > y);
                if (high1[static_cast<size_t>(z)] == kNone) {
                    high1[static_cast<size_t>(z)] = y;
                    z = dsu.representative(t.parent[static_cast<size_t>(z)]);
                    continue;
                }
                if (high1[static_cast<size_t>(z)] == y) break;
                high2[static_cast<size_t>(z)] = y;
                Vertex par = t.parent[static_cast<size_t>(z)];
                Vertex next = dsu.representative(par);
                dsu.unite(z, par);
                dsu.set_representative(z, next);
                z = next;
            }
        }
    }
}

void compute_num_high(const DfsTree& t, const std::vector<Vertex>& high1,
                      std::vector<std::int64_t>& numHigh) {
    // every edge landing on high1(v) from inside T(v) leaps over parent(v), so
    // the counter is an interval count over the sorted in-list of high1(v)
    for (Vertex v = 1; v <= t.n; ++v) {
        Vertex z = high1[static_cast<size_t>(v)];
        if (z == kNone) continue;
        auto first = t.inList.begin() + t.inHead[static_cast<size_t>(z)];
        auto last = t.inList.begin() + t.inHead[static_cast<size_t>(z) + 1];
        numHigh[static_cast<size_t>(v)] =
            std::lower_bound(first, last, v + t.nd[static_cast<size_t>(v)]) -
            std::lower_bound(first, last, v);
    }
}

}  // namespace

ScalarParams compute_scalar_params(const DfsTree& t) {
    size_t sz = static_cast<size_t>(t.n) + 1;
    ScalarParams sp;
    sp.l1.assign(sz, kNone);
    sp.l2.assign(sz, kNone);
    sp.low1.assign(sz, kNone);
    sp.low2.assign(sz, kNone);
    sp.low3.assign(sz, kNone);
    sp.high1.assign(sz, kNone);
    sp.high2.assign(sz, kNone);
    sp.bpCount.assign(sz, 0);
    sp.sumY.assign(sz, 0);
    sp.numLow.assign(sz, 0);
    sp.numHigh.assign(sz, 0);

    // edges are sorted by (hi, lo): stems of a vertex are contiguous, lows ascending
    std::vector<std::int64_t> stemHead(sz + 1, 0);
    for (const BackEdge& e : t.edges) ++stemHead[static_cast<size_t>(e.hi) + 1];
    for (size_t v = 1; v <= static_cast<size_t>(t.n); ++v) stemHead[v + 1] += stemHead[v];
    for (Vertex v = 1; v <= t.n; ++v) {
        for (std::int64_t it = stemHead[static_cast<size_t>(v)];
             it < stemHead[static_cast<size_t>(v) + 1]; ++it) {
            Vertex y = t.edges[static_cast<size_t>(it)].lo;
            if (sp.l1[static_cast<size_t>(v)] == kNone)
                sp.l1[static_cast<size_t>(v)] = y;
            else if (y != sp.l1[static_cast<size_t>(v)] && sp.l2[static_cast<size_t>(v)] == kNone)
                sp.l2[static_cast<size_t>(v)] = y;
        }
    }

    // low1..low3 bottom-up; candidates from own stems and children, each
    // filtered below parent(v) (qualifying values are a prefix of the
    // candidate's own distinct-sorted endpoints)
    for (Vertex v = t.n; v >= 2; --v) {
        Vertex par = t.parent[static_cast<size_t>(v)];
        Vertex slot[3] = {kNone, kNone, kNone};
        for (std::int64_t it = stemHead[static_cast<size_t>(v)];
             it < stemHead[static_cast<size_t>(v) + 1]; ++it) {
            Vertex y = t.edges[static_cast<size_t>(it)].lo;
            if (y < par) insert_distinct_min(slot, y);
        }
        for (Vertex ci = t.child_begin(v); ci < t.child_end(v); ++ci) {
            Vertex c = t.childList[static_cast<size_t>(ci)];
            for (Vertex k : {sp.low1[static_cast<size_t>(c)], sp.low2[static_cast<size_t>(c)],
                             sp.low3[static_cast<size_t>(c)]})
                if (k != kNone && k < par) insert_distinct_min(slot, k);
        }
        sp.low1[static_cast<size_t>(v)] = slot[0];
        sp.low2[static_cast<size_t>(v)] = slot[1];
        sp.low3[static_cast<size_t>(v)] = slot[2];
    }

    compute_high_points(t, sp.high1, sp.high2);

    // leap-set size and endpoint sum: every child contribution loses exactly
    // the edges landing on parent(v), which are charged to the child of their
    // lower endpoint in the stem's direction
    std::vector<std::int64_t> cntAt(sz, 0), sumAt(sz, 0);
    for (const BackEdge& e : t.edges) {
        if (e.lo == kNone) continue;
        Vertex c = t.child_toward(e.lo, e.hi);
        ++cntAt[static_cast<size_t>(c)];
        sumAt[static_cast<size_t>(c)] += e.lo;
    }
    for (Vertex v = t.n; v >= 2; --v) {
        Vertex par = t.parent[static_cast<size_t>(v)];
        std::int64_t cnt = 0, sum = 0;
        for (std::int64_t it = stemHead[static_cast<size_t>(v)];
             it < stemHead[static_cast<size_t>(v) + 1]; ++it) {
            Vertex y = t.edges[static_cast<size_t>(it)].lo;
            if (y < par) {
                ++cnt;
                sum += y;
            }
        }
        for (Vertex ci = t.child_begin(v); ci < t.child_end(v); ++ci) {
            Vertex c = t.childList[static_cast<size_t>(ci)];
            cnt += sp.bpCount[static_cast<size_t>(c)];
            sum += sp.sumY[static_cast<size_t>(c)];
        }
        sp.bpCount[static_cast<size_t>(v)] = cnt - cntAt[static_cast<size_t>(v)];
        sp.sumY[static_cast<size_t>(v)] = sum - sumAt[static_cast<size_t>(v)];
    }

    // numLow: children sharing the low point contribute their counters
    for (Vertex v = t.n; v >= 2; --v) {
        Vertex low = sp.low1[static_cast<size_t>(v)];
        if (low == kNone) continue;
        std::int64_t cnt = 0;
        for (std::int64_t it = stemHead[static_cast<size_t>(v)];
             it < stemHead[static_cast<size_t>(v) + 1]; ++it)
            if (t.edges[static_cast<size_t>(it)].lo == low) ++cnt;
        for (Vertex ci = t.child_begin(v); ci < t.child_end(v); ++ci) {
            Vertex c = t.childList[static_cast<size_t>(ci)];
            if (sp.low1[static_cast<size_t>(c)] == low) cnt += sp.numLow[static_cast<size_t>(c)];
        }
        sp.numLow[static_cast<size_t>(v)] = cnt;
    }

    compute_num_high(t, sp.high1, sp.numHigh);
    return sp;
}

std::vector<Vertex> l1_in_view(const TreeView& view, const std::vector<Vertex>& l1Base) {
    std::vector<Vertex> l1v(static_cast<size_t>(view.n) + 1, kNone);
    for (Vertex x = 1; x <= view.n; ++x) {
        Vertex b = view.toBase[static_cast<size_t>(x)];
        Vertex k = l1Base[static_cast<size_t>(b)];
        l1v[static_cast<size_t>(x)] = k == kNone ? kNone : view.toView[static_cast<size_t>(k)];
    }
    return l1v;
}

namespace {

void view_extremes(const TreeView& view, const std::vector<Vertex>& l1Base,
                   std::vector<Vertex>& left, std::vector<Vertex>& right) {
    std::vector<Vertex> l1v = l1_in_view(view, l1Base);
    std::vector<SubtreeExtremeQuery> qs;
    qs.reserve(static_cast<size_t>(view.n) * 2);
    for (Vertex x = 2; x <= view.n; ++x) {
        qs.push_back({x, x, true});
        qs.push_back({x, x, false});
    }
    std::vector<Vertex> ans = batch_subtree_extremes(view, l1v, qs);
    size_t sz = static_cast<size_t>(view.n) + 1;
    left.assign(sz, kNone);
    right.assign(sz, kNone);
    for (Vertex x = 2; x <= view.n; ++x) {
        Vertex b = view.toBase[static_cast<size_t>(x)];
        Vertex l = ans[static_cast<size_t>(x - 2) * 2];
        Vertex r = ans[static_cast<size_t>(x - 2) * 2 + 1];
        left[static_cast<size_t>(b)] = l == kNone ? kNone : view.toBase[static_cast<size_t>(l)];
        right[static_cast<size_t>(b)] = r == kNone ? kNone : view.toBase[static_cast<size_t>(r)];
    }
}

}  // namespace

ExtremePoints compute_extreme_points(const DfsForestViews& views, const ScalarParams& sp) {
    const DfsTree& t = *views.base;
    ExtremePoints ep;

    TreeView baseView = build_view(t, std::vector<Vertex>(static_cast<size_t>(t.n) + 1, kNone), true);
    view_extremes(baseView, sp.l1, ep.leftBase, ep.rightBase);
    view_extremes(views.lowInc, sp.l1, ep.leftLow, ep.rightLow);
    view_extremes(views.highDec, sp.l1, ep.leftHigh, ep.rightHigh);

    size_t sz = static_cast<size_t>(t.n) + 1;
    ep.apex.assign(sz, kNone);
    ep.apexParent.assign(sz, kNone);
    LevelAncestorIndex la(t);
    for (Vertex v = 2; v <= t.n; ++v) {
        Vertex l = ep.leftBase[static_cast<size_t>(v)], r = ep.rightBase[static_cast<size_t>(v)];
        if (l != kNone) ep.apex[static_cast<size_t>(v)] = la.nca(l, r);
    }
    // vertices sharing an apex form an ancestor chain; link each to the next one up
    std::vector<Vertex> lastSeen(sz, kNone);
    for (Vertex v = 1; v <= t.n; ++v) {
        Vertex a = ep.apex[static_cast<size_t>(v)];
        if (a == kNone) continue;
        ep.apexParent[static_cast<size_t>(v)] = lastSeen[static_cast<size_t>(a)];
        lastSeen[static_cast<size_t>(a)] = v;
    }
    return ep;
}

}  // namespace conn3
