#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "conn3/dfs_params.hpp"
#include "conn3/verify.hpp"

using namespace conn3;

namespace {

// tree edges (1,2),(2,3),(3,4),(3,5); back-edges (4,1),(5,1),(5,2)
DfsTree graph_a() { return make_tree({0, 0, 1, 2, 3, 3}, {{4, 1}, {5, 1}, {5, 2}}); }

// chain 1-2-3-4, children of 4: 5 and 6; back-edges (5,1),(6,1)
DfsTree graph_b() { return make_tree({0, 0, 1, 2, 3, 4, 4}, {{5, 1}, {6, 1}}); }

// chain 1-2-3-4, children of 4: 5 and 6; back-edges (5,3),(5,1),(6,1)
DfsTree graph_c() { return make_tree({0, 0, 1, 2, 3, 4, 4}, {{5, 3}, {5, 1}, {6, 1}}); }

}  // namespace

TEST_CASE("scalar parameters on the worked example") {
    DfsTree t = graph_a();
    ScalarParams sp = compute_scalar_params(t);

    CHECK(sp.low1[5] == 1);
    CHECK(sp.low2[5] == 2);
    CHECK(sp.low3[5] == kNone);
    CHECK(sp.high1[5] == 2);
    CHECK(sp.high2[5] == 1);
    CHECK(sp.bpCount[5] == 2);
    CHECK(sp.sumY[5] == 3);
    CHECK(sp.numLow[5] == 1);
    CHECK(sp.numHigh[5] == 1);
    CHECK(sp.l1[5] == 1);
    CHECK(sp.l2[5] == 2);

    CHECK(sp.low1[3] == 1);
    CHECK(sp.low2[3] == kNone);
    CHECK(sp.high1[3] == 1);
    CHECK(sp.high2[3] == kNone);
    CHECK(sp.bpCount[3] == 2);
    CHECK(sp.sumY[3] == 2);
    CHECK(sp.numLow[3] == 2);
    CHECK(sp.numHigh[3] == 2);

    CHECK(sp.low1[2] == kNone);
    CHECK(sp.bpCount[2] == 0);
    CHECK(sp.numLow[2] == 0);
}

TEST_CASE("view construction sorts children by key with none last") {
    // one root with three children carrying lows (3, none, 1)
    DfsTree t = make_tree({0, 0, 1, 1, 1}, {});
    std::vector<Vertex> lows = {0, 0, 3, kNone, 1};
    TreeView view = build_view(t, lows, true);
    Vertex r = view.toView[1];
    std::vector<Vertex> kids;
    for (Vertex ci = view.childHead[r]; ci < view.childHead[r + 1]; ++ci)
        kids.push_back(view.toBase[view.childList[ci]]);
    CHECK(kids == std::vector<Vertex>{4, 2, 3});

    std::vector<Vertex> highs = {0, 0, 2, kNone, 5};
    TreeView hv = build_view(t, highs, false);
    kids.clear();
    for (Vertex ci = hv.childHead[r]; ci < hv.childHead[r + 1]; ++ci)
        kids.push_back(hv.toBase[hv.childList[ci]]);
    CHECK(kids == std::vector<Vertex>{4, 2, 3});
}

TEST_CASE("extreme points on the worked examples") {
    {
        DfsTree t = graph_a();
        ScalarParams sp = compute_scalar_params(t);
        DfsForestViews views = build_views(t, sp.low1, sp.high1);
        ExtremePoints ep = compute_extreme_points(views, sp);
        CHECK(ep.leftBase[3] == 4);
        CHECK(ep.rightBase[3] == 5);
        CHECK(ep.apex[3] == 3);
        // ties on low keep base order: children 4,5 of vertex 3 both have low 1
        Vertex v3 = views.lowInc.toView[3];
        CHECK(views.lowInc.toBase[views.lowInc.childList[views.lowInc.childHead[v3]]] == 4);
        CHECK(views.lowInc.toBase[views.lowInc.childList[views.lowInc.childHead[v3] + 1]] == 5);
    }
    {
        DfsTree t = graph_b();
        ScalarParams sp = compute_scalar_params(t);
        DfsForestViews views = build_views(t, sp.low1, sp.high1);
        ExtremePoints ep = compute_extreme_points(views, sp);
        CHECK(ep.apex[3] == 4);
        CHECK(ep.apex[4] == 4);
        CHECK(ep.apexParent[4] == 3);
        CHECK(ep.apexParent[3] == kNone);
    }
    {
        DfsTree t = graph_a();
        ScalarParams sp = compute_scalar_params(t);
        DfsForestViews views = build_views(t, sp.low1, sp.high1);
        ExtremePoints ep = compute_extreme_points(views, sp);
        CHECK(ep.leftBase[2] == kNone);
        CHECK(ep.rightBase[2] == kNone);
        CHECK(ep.apex[2] == kNone);
    }
}

TEST_CASE("parameters match explicit leap sets on random graphs") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 60; ++it) {
        Vertex n = 4 + static_cast<Vertex>(rng() % 11);
        Graph g = verify::gen_random(rng(), n, n - 1 + static_cast<std::int64_t>(rng() % 10));
        Oracle o{std::move(g)};
        std::string bad = verify::check_tables(o);
        INFO(bad);
        CHECK(bad.empty());
    }
}

TEST_CASE("apex chain properties hold (ancestor links, unique sibling, lowest l1)") {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 40; ++it) {
        Vertex n = 4 + static_cast<Vertex>(rng() % 11);
        Graph g = verify::gen_random(rng(), n, n - 1 + static_cast<std::int64_t>(rng() % 8));
        Oracle o{std::move(g)};
        const DfsTree& t = o.transformed().tree;
        const ScalarParams& sp = o.scalars();
        const ExtremePoints& ep = o.extremes();
        for (Vertex c = 2; c <= t.n; ++c) {
            for (Vertex d = c + 1; d <= t.n; ++d) {
                if (!t.is_ancestor(c, d)) continue;
                Vertex mc = ep.apex[c];
                if (mc == kNone || !t.is_ancestor(d, mc)) continue;
                // the deeper vertex's apex must sit above the shallower one's
                REQUIRE(ep.apex[d] != kNone);
                CHECK(t.is_ancestor(ep.apex[d], mc));
            }
            // at most one child per parent continues an apex chain
            int continuing = 0;
            for (Vertex ci = t.child_begin(c); ci < t.child_end(c); ++ci)
                if (ep.apexParent[t.childList[ci]] != kNone) ++continuing;
            CHECK(continuing <= 1);
        }
        // on the low-sorted view the leftmost provider has the lowest l1 in the subtree
        const TreeView& li = o.views().lowInc;
        for (Vertex v = 2; v <= t.n; ++v) {
            if (sp.low1[v] == kNone) continue;
            Vertex lp = ep.leftLow[v];
            Vertex best = kNone;
            Vertex vv = li.toView[v];
            for (Vertex x = vv; x < vv + li.nd[vv]; ++x) {
                Vertex b = li.toBase[x];
                Vertex l1 = sp.l1[b];
                if (l1 != kNone && (best == kNone || l1 < best)) best = l1;
            }
            CHECK(sp.l1[lp] == best);
        }
    }
}
