#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "conn3/transform.hpp"
#include "conn3/verify.hpp"

using namespace conn3;

namespace {

Graph make(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges) {
    return load_graph(n, edges);
}

}  // namespace

TEST_CASE("load normalizes and keeps simple edges") {
    Graph g = make(3, {{1, 2}, {2, 3}, {3, 1}});
    CHECK(g.n == 3);
    CHECK(g.m() == 3);

    LoadStats stats;
    Graph h = load_graph(3, {{1, 2}, {1, 2}, {2, 2}, {2, 3}}, &stats);
    CHECK(h.m() == 2);
    CHECK(stats.droppedParallel == 1);
    CHECK(stats.droppedSelfLoops == 1);
}

TEST_CASE("disconnected input is rejected with two unreachable vertices named") {
    CHECK_THROWS_WITH_AS(load_graph(4, {{1, 2}, {3, 4}}),
                         doctest::Contains("disconnected"), InputError);
    CHECK_THROWS_AS(load_graph(0, {}), InputError);
}

TEST_CASE("graph file parsing: plain and DIMACS-ish") {
    std::istringstream plain("3 3\n1 2\n2 3\n3 1\n");
    Graph g = read_graph(plain);
    CHECK(g.n == 3);
    CHECK(g.m() == 3);

    std::istringstream dimacs("c comment\np edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    Graph h = read_graph(dimacs);
    CHECK(h.n == 4);
    CHECK(h.m() == 3);
}

TEST_CASE("dfs on a path and a cycle") {
    Graph path = make(3, {{1, 2}, {2, 3}});
    DfsResult r = run_dfs(path, 1);
    CHECK(r.tree.parent[2] == 1);
    CHECK(r.tree.parent[3] == 2);
    CHECK(r.tree.nd[1] == 3);
    CHECK(r.tree.edges.empty());

    Graph c4 = make(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    DfsResult rc = run_dfs(c4, 1);
    REQUIRE(rc.tree.edges.size() == 1);
    CHECK(rc.tree.edges[0].hi == 4);
    CHECK(rc.tree.edges[0].lo == 1);
    // interval property
    for (Vertex v = 1; v <= 4; ++v)
        for (Vertex u = 1; u <= 4; ++u) {
            bool byWalk = false;
            for (Vertex a = u; a != 0; a = rc.tree.parent[a]) byWalk |= a == v;
            CHECK(byWalk == rc.tree.is_ancestor(v, u));
        }
}

TEST_CASE("split transform: counts and structure") {
    auto checkInvariants = [](const Graph& g) {
        TransformedGraph tg = split_transform(g);
        const DfsTree& t = tg.tree;
        std::int64_t backs = 0;
        // n' = n + 1 + (#tree edges with child outside {root, start}) + (#back-edges)
        CHECK(t.n == g.n + g.m() + 1);
        CHECK(tg.kind[1] == VertexKind::AuxRoot);
        for (const BackEdge& e : t.edges) {
            ++backs;
            CHECK(tg.kind[e.hi] == VertexKind::AuxBackSplit);
            CHECK(t.child_begin(e.hi) == t.child_end(e.hi));  // leaf
            CHECK(tg.kind[e.lo] == VertexKind::Real);
        }
        CHECK(backs == g.m() - (g.n - 1));
        for (Vertex v = 2; v <= t.n; ++v) {
            if (tg.kind[v] != VertexKind::Real) continue;
            // no two real vertices are parent and child
            CHECK(tg.kind[t.parent[v]] != VertexKind::Real);
            for (Vertex ci = t.child_begin(v); ci < t.child_end(v); ++ci)
                CHECK(tg.kind[t.childList[ci]] != VertexKind::Real);
        }
        // split leaves come after split-edge children in every children list
        for (Vertex v = 1; v <= t.n; ++v) {
            bool seenLeaf = false;
            for (Vertex ci = t.child_begin(v); ci < t.child_end(v); ++ci) {
                bool leaf = tg.kind[t.childList[ci]] == VertexKind::AuxBackSplit;
                if (seenLeaf) CHECK(leaf);
                seenLeaf |= leaf;
            }
        }
        return tg;
    };

    checkInvariants(make(3, {{1, 2}, {2, 3}, {3, 1}}));
    checkInvariants(make(4, {{1, 2}, {1, 3}, {1, 4}}));  // star
    TransformedGraph single = checkInvariants(make(2, {{1, 2}}));
    CHECK(single.n() == 4);  // root, both endpoints, one split vertex

    std::mt19937_64 rng(7);
    for (int it = 0; it < 30; ++it) {
        Vertex n = 4 + static_cast<Vertex>(rng() % 10);
        checkInvariants(verify::gen_random(rng(), n, n - 1 + static_cast<std::int64_t>(rng() % 8)));
    }
}

TEST_CASE("transform transparency: real-vertex connectivity is preserved") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 25; ++it) {
        Vertex n = 4 + static_cast<Vertex>(rng() % 8);
        Graph g = verify::gen_random(rng(), n, n - 1 + static_cast<std::int64_t>(rng() % 6));
        TransformedGraph tg = split_transform(g);
        const DfsTree& t = tg.tree;
        // BFS over the transformed structure with a failed real set
        auto transformedConnected = [&](const std::vector<Vertex>& fails, Vertex x, Vertex y) {
            std::vector<char> dead(t.n + 1, 0);
            for (Vertex f : fails) dead[tg.toTree[f]] = 1;
            std::vector<std::vector<Vertex>> adj(t.n + 1);
            for (Vertex v = 2; v <= t.n; ++v) {
                adj[v].push_back(t.parent[v]);
                adj[t.parent[v]].push_back(v);
            }
            for (const BackEdge& e : t.edges) {
                adj[e.hi].push_back(e.lo);
                adj[e.lo].push_back(e.hi);
            }
            Vertex sx = tg.toTree[x];
            std::vector<char> vis(t.n + 1, 0);
            std::vector<Vertex> q{sx};
            vis[sx] = 1;
            for (size_t i = 0; i < q.size(); ++i)
                for (Vertex wv : adj[q[i]])
                    if (!vis[wv] && !dead[wv]) {
                        vis[wv] = 1;
                        q.push_back(wv);
                    }
            return vis[tg.toTree[y]] != 0;
        };
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<Vertex> fails;
            std::set<Vertex> fs;
            int k = static_cast<int>(rng() % 3) + 1;
            while (static_cast<int>(fs.size()) < k) fs.insert(1 + static_cast<Vertex>(rng() % n));
            fails.assign(fs.begin(), fs.end());
            Vertex x = 1 + static_cast<Vertex>(rng() % n), y = 1 + static_cast<Vertex>(rng() % n);
            if (fs.count(x) || fs.count(y)) continue;
            CHECK(transformedConnected(fails, x, y) == verify::brute_connected(g, fails, x, y));
        }
    }
}
