#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conn3/batch_solvers.hpp"
#include "conn3/dfs_params.hpp"
#include "conn3/verify.hpp"

using namespace conn3;

namespace {

DfsTree graph_a() { return make_tree({0, 0, 1, 2, 3, 3}, {{4, 1}, {5, 1}, {5, 2}}); }

TreeView identity_view(const DfsTree& t) {
    return build_view(t, std::vector<Vertex>(t.n + 1, kNone), true);
}

Vertex brute_subtree_extreme(const TreeView& vw, const std::vector<Vertex>& l1v, Vertex v,
                             Vertex d, bool leftmost) {
    Vertex best = kNone;
    Vertex thr = vw.parent[v];
    for (Vertex x = d; x < d + vw.nd[d]; ++x) {
        if (l1v[x] == kNone || l1v[x] >= thr) continue;
        if (best == kNone || (leftmost ? x < best : x > best)) best = x;
    }
    return best;
}

Vertex brute_skip(const TreeView& vw, const std::vector<Vertex>& z, Vertex v, bool leftmost) {
    Vertex best = kNone;
    for (const BackEdge& e : vw.edges) {
        if (!vw.is_ancestor(v, e.hi)) continue;
        if (e.lo >= vw.parent[v] || vw.parent[v] == 0) continue;
        if (e.lo == z[v]) continue;
        if (best == kNone || (leftmost ? e.hi < best : e.hi > best)) best = e.hi;
    }
    return best;
}

}  // namespace

TEST_CASE("subtree extremes on the worked example") {
    DfsTree t = graph_a();
    ScalarParams sp = compute_scalar_params(t);
    TreeView vw = identity_view(t);
    std::vector<Vertex> l1v = l1_in_view(vw, sp.l1);
    std::vector<SubtreeExtremeQuery> qs = {
        {3, 5, true}, {3, 3, true}, {5, 5, true}, {2, 2, true}};
    std::vector<Vertex> ans = batch_subtree_extremes(vw, l1v, qs);
    CHECK(ans[0] == 5);
    CHECK(ans[1] == 4);
    CHECK(ans[2] == 5);
    CHECK(ans[3] == kNone);
    CHECK_THROWS_AS(batch_subtree_extremes(vw, l1v, {{5, 3, true}}), QueryError);
}

TEST_CASE("skipping points on the worked example") {
    DfsTree t = graph_a();
    TreeView vw = identity_view(t);
    std::vector<Vertex> z(t.n + 1, kNone);
    z[5] = 1;
    z[4] = 1;
    std::vector<Vertex> left = batch_skip_points(vw, z, true);
    CHECK(left[5] == 5);  // the edge into 2 survives the skip
    CHECK(left[4] == kNone);
    // with no skip assignment the answers coincide with the leap extremes
    std::vector<Vertex> noskip(t.n + 1, kNone);
    ScalarParams sp = compute_scalar_params(t);
    DfsForestViews views = build_views(t, sp.low1, sp.high1);
    ExtremePoints ep = compute_extreme_points(views, sp);
    std::vector<Vertex> l = batch_skip_points(vw, noskip, true);
    std::vector<Vertex> r = batch_skip_points(vw, noskip, false);
    for (Vertex v = 2; v <= t.n; ++v) {
        CHECK(l[v] == ep.leftBase[v]);
        CHECK(r[v] == ep.rightBase[v]);
    }
}

TEST_CASE("skipping walk does not overshoot an already answered chain") {
    // chain 1-2-3-4-5 with back-edges (4,2) and (5,3): vertex 3 has no
    // qualifying edge at all, and must stay unanswered
    DfsTree t = make_tree({0, 0, 1, 2, 3, 4}, {{4, 2}, {5, 3}});
    TreeView vw = identity_view(t);
    std::vector<Vertex> z(t.n + 1, kNone);
    std::vector<Vertex> left = batch_skip_points(vw, z, true);
    CHECK(left[3] == kNone);
    CHECK(left[4] == 4);
    CHECK(left[5] == 5);
}

TEST_CASE("segment points on the worked example") {
    DfsTree t = graph_a();
    TreeView vw = identity_view(t);
    // the three examples are not one nested family; run them separately
    {
        std::vector<SegmentQuery> qs = {{3, 2, 1}};
        validate_nested(vw, qs);
        SegmentAnswers ans = batch_segment_points(vw, qs);
        CHECK(ans.left[0] == 4);
        CHECK(ans.right[0] == 5);
    }
    {
        std::vector<SegmentQuery> qs = {{5, 2, 2}};
        SegmentAnswers ans = batch_segment_points(vw, qs);
        CHECK(ans.left[0] == 5);
        CHECK(ans.right[0] == 5);
    }
    {
        std::vector<SegmentQuery> qs = {{5, 3, 3}};  // no edge from T(5) lands on vertex 3
        SegmentAnswers ans = batch_segment_points(vw, qs);
        CHECK(ans.left[0] == kNone);
        CHECK(ans.right[0] == kNone);
    }
}

TEST_CASE("query forest structure on simple families") {
    DfsTree t = make_tree({0, 0, 1, 2, 3, 4, 5}, {});
    TreeView vw = identity_view(t);
    // two disjoint segments: both roots
    {
        std::vector<SegmentQuery> qs = {{3, 2, 1}, {6, 5, 4}};
        QueryForest f = build_query_forest(vw, qs);
        CHECK(f.parentQuery[0] == -1);
        CHECK(f.parentQuery[1] == -1);
    }
    // nested with the inner z an ancestor: parent link
    {
        std::vector<SegmentQuery> qs = {{4, 2, 2}, {5, 3, 1}};
        QueryForest f = build_query_forest(vw, qs);
        CHECK(f.parentQuery[0] == 1);
        CHECK(f.parentQuery[1] == -1);
    }
    // nested but the inner z not an ancestor of the outer z: inner is a root
    {
        std::vector<SegmentQuery> qs = {{6, 2, 2}, {5, 3, 1}};
        QueryForest f = build_query_forest(vw, qs);
        CHECK(f.parentQuery[0] == -1);
        CHECK(f.parentQuery[1] == -1);
    }
}

TEST_CASE("batch answers equal brute scans on random graphs and random batches") {
    std::mt19937_64 rng(13);
    std::int64_t totalQueries = 0;
    for (int it = 0; it < 220; ++it) {
        Vertex n = 4 + static_cast<Vertex>(rng() % 11);
        Graph g = verify::gen_random(rng(), n, n - 1 + static_cast<std::int64_t>(rng() % 10));
        Oracle o{std::move(g)};
        const DfsTree& t = o.transformed().tree;
        const TreeView& vw = (it % 2) ? o.views().lowInc : o.views().highDec;
        std::vector<Vertex> l1v = l1_in_view(vw, o.scalars().l1);

        std::vector<SubtreeExtremeQuery> qs;
        for (Vertex v = 2; v <= t.n; ++v) {
            Vertex vv = vw.toView[v];
            // a random descendant
            Vertex d = vv + static_cast<Vertex>(rng() % static_cast<std::uint64_t>(vw.nd[vv]));
            qs.push_back({vv, d, (rng() & 1) != 0});
        }
        std::int64_t ops = 0;
        std::vector<Vertex> ans = batch_subtree_extremes(vw, l1v, qs, &ops);
        totalQueries += static_cast<std::int64_t>(qs.size());
        for (size_t i = 0; i < qs.size(); ++i)
            CHECK(ans[i] == brute_subtree_extreme(vw, l1v, qs[i].v, qs[i].d, qs[i].leftmost));
        // amortized work stays linear in n + m + queries
        CHECK(ops <= 8 * (static_cast<std::int64_t>(t.n) + static_cast<std::int64_t>(t.edges.size()) +
                          static_cast<std::int64_t>(qs.size())) + 64);

        std::vector<Vertex> z(vw.n + 1, kNone);
        for (Vertex x = 2; x <= vw.n; ++x)
            if (rng() & 1) {
                // a random strict ancestor
                Vertex a = x;
                int up = 1 + static_cast<int>(rng() % 3);
                while (up-- && vw.parent[a]) a = vw.parent[a];
                if (a != x) z[x] = a;
            }
        std::int64_t ops2 = 0;
        std::vector<Vertex> l = batch_skip_points(vw, z, true, &ops2);
        std::vector<Vertex> r = batch_skip_points(vw, z, false);
        totalQueries += 2 * (vw.n - 1);
        for (Vertex x = 2; x <= vw.n; ++x) {
            CHECK(l[x] == brute_skip(vw, z, x, true));
            CHECK(r[x] == brute_skip(vw, z, x, false));
        }
        CHECK(ops2 <= 8 * (static_cast<std::int64_t>(t.n) +
                           static_cast<std::int64_t>(t.edges.size())) + 64);
    }
    CHECK(totalQueries >= 10000);
}

TEST_CASE("nestedness validator flags offending pairs") {
    DfsTree t = make_tree({0, 0, 1, 2, 3, 4, 5}, {});
    TreeView vw = identity_view(t);
    // crossing segments [2..4] and [3..5] (as paths [4,2] and [5,3])
    std::vector<SegmentQuery> bad = {{4, 4, 2}, {5, 5, 3}};
    CHECK_THROWS_AS(validate_nested(vw, bad), QueryError);
}
