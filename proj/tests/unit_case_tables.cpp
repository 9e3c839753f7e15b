#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conn3/verify.hpp"

using namespace conn3;

namespace {

Graph chain_with(std::vector<std::pair<Vertex, Vertex>> extra, Vertex n,
                 std::vector<std::pair<Vertex, Vertex>> tree) {
    for (auto e : extra) tree.push_back(e);
    return load_graph(n, tree);
}

}  // namespace

TEST_CASE("low triples on the worked chain example") {
    // chain 1-2-3-4 with two leaves 5,6 under 4; back-edges (5,3),(5,1),(6,1)
    DfsTree t = make_tree({0, 0, 1, 2, 3, 4, 4}, {{5, 3}, {5, 1}, {6, 1}});
    ScalarParams sp = compute_scalar_params(t);
    DfsForestViews views = build_views(t, sp.low1, sp.high1);
    ExtremePoints ep = compute_extreme_points(views, sp);
    CaseTables ct = build_case_tables(views, sp, ep);

    CHECK(ep.apex[3] == 4);
    // children of 4 whose high reaches the path above 3: only vertex 5
    CHECK(ct.tlFirst[3] == 1);
    CHECK(ct.tlSecond[3] == kNone);
    CHECK(ct.tlThird[3] == 3);
    CHECK(ct.tlFirstChild[3] == 5);

    // survivors of 5 are (1, 3, none)
    CHECK(sp.low1[5] == 1);
    CHECK(sp.low2[5] == 3);
    CHECK(sp.low3[5] == kNone);
}

TEST_CASE("apex chain oracle rejects invalid pairs and answers short chains") {
    DfsTree t = make_tree({0, 0, 1, 2, 3, 4, 4}, {{5, 1}, {6, 1}});
    ScalarParams sp = compute_scalar_params(t);
    DfsForestViews views = build_views(t, sp.low1, sp.high1);
    ExtremePoints ep = compute_extreme_points(views, sp);
    CaseTables ct = build_case_tables(views, sp, ep);
    REQUIRE(ep.apex[3] == 4);
    REQUIRE(ep.apex[4] == 4);
    // c = 3 equals parent(4): rejected
    CHECK_THROWS_AS(chain_query(ct, true, 3, 4, ep, t), QueryError);
    // unrelated apexes: rejected
    CHECK_THROWS_AS(chain_query(ct, true, 2, 4, ep, t), QueryError);
}

TEST_CASE("apex chain oracle matches brute scans over a long same-apex chain") {
    // chain 1..7 with a leaf bundle under 7; vertices 4..7 share the apex 7
    DfsTree t = make_tree({0, 0, 1, 2, 3, 4, 5, 6, 7, 7, 7, 7},
                          {{8, 1}, {9, 2}, {10, 2}, {11, 4}});
    ScalarParams sp = compute_scalar_params(t);
    DfsForestViews views = build_views(t, sp.low1, sp.high1);
    ExtremePoints ep = compute_extreme_points(views, sp);
    CaseTables ct = build_case_tables(views, sp, ep);
    for (Vertex v : {4, 5, 6, 7}) REQUIRE(ep.apex[v] == 7);
    REQUIRE(ep.apexParent[7] == 6);
    REQUIRE(ep.apexParent[4] == kNone);
    // d=7, c=4: the segment is the path {4,5}; only (11,4) lands there
    auto [l, r] = chain_query(ct, true, 4, 7, ep, t);
    CHECK(l == 11);
    CHECK(r == 11);
    auto [l2, r2] = chain_query(ct, false, 4, 6, ep, t);
    CHECK(l2 == 11);
    CHECK(r2 == 11);
    // d=7, c=5: the segment is {5}; nothing lands there
    auto [l3, r3] = chain_query(ct, true, 5, 7, ep, t);
    CHECK(l3 == kNone);
    CHECK(r3 == kNone);
}

TEST_CASE("every table entry equals its definition on random corpora") {
    std::mt19937_64 rng(101);
    int graphs = 0;
    for (int it = 0; it < 110; ++it) {
        Vertex n = 4 + static_cast<Vertex>(rng() % 11);
        Graph g;
        switch (it % 4) {
            case 0:
                g = verify::gen_random(rng(), n, n - 1 + static_cast<std::int64_t>(rng() % 12));
                break;
            case 1:
                g = verify::gen_cycle_chords(rng(), std::max<Vertex>(n, 5),
                                             static_cast<int>(rng() % 4));
                break;
            case 2:
                g = verify::gen_adversarial(rng());
                break;
            default:
                g = verify::gen_tree_matching(rng(), n, static_cast<int>(rng() % 4));
                break;
        }
        if (g.n > 14) continue;  // keep the definitional scan cheap
        ++graphs;
        Oracle o{std::move(g)};
        std::string bad = verify::check_tables(o);
        INFO(bad);
        REQUIRE(bad.empty());
    }
    CHECK(graphs >= 60);
}

TEST_CASE("tables stay linear in the graph size") {
    std::mt19937_64 rng(3);
    double wordsPerVertex[3] = {0, 0, 0};
    Vertex sizes[3] = {1000, 10000, 100000};
    for (int i = 0; i < 3; ++i) {
        Graph g = verify::gen_random(rng(), sizes[i], 3LL * sizes[i]);
        Oracle o{std::move(g)};
        wordsPerVertex[i] =
            static_cast<double>(o.table_words()) / static_cast<double>(o.transformed().n());
    }
    for (int i = 1; i < 3; ++i) {
        CHECK(wordsPerVertex[i] < wordsPerVertex[0] * 1.5);
        CHECK(wordsPerVertex[i] > wordsPerVertex[0] / 1.5);
    }
}
