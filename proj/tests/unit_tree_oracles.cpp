#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conn3/tree_oracles.hpp"
#include "conn3/verify.hpp"

using namespace conn3;

namespace {

DfsTree random_tree(std::mt19937_64& rng, Vertex n) {
    // random attachment, then renumbered in preorder (vertex ids must follow
    // the visit order for the interval ancestry tests to hold)
    std::vector<Vertex> rawParent(n + 1, 0);
    std::vector<std::vector<Vertex>> kids(n + 1);
    for (Vertex v = 2; v <= n; ++v) {
        rawParent[v] = 1 + static_cast<Vertex>(rng() % static_cast<std::uint64_t>(v - 1));
        kids[rawParent[v]].push_back(v);
    }
    std::vector<Vertex> renum(n + 1, 0), parent(n + 1, 0);
    Vertex next = 0;
    std::vector<Vertex> stack{1};
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        renum[v] = ++next;
        if (renum[rawParent[v]] != 0 || v == 1)
            parent[renum[v]] = v == 1 ? 0 : renum[rawParent[v]];
        for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
    }
    return make_tree(parent, {});
}

Vertex naive_la(const DfsTree& t, Vertex v, Vertex d) {
    while (t.depth[v] > d) v = t.parent[v];
    return v;
}

Vertex naive_nca(const DfsTree& t, Vertex u, Vertex v) {
    while (!t.is_ancestor(u, v)) u = t.parent[u];
    return u;
}

}  // namespace

TEST_CASE("child_toward on a path") {
    DfsTree t = make_tree({0, 0, 1, 2, 3}, {});
    CHECK(t.child_toward(1, 4) == 2);
    CHECK(t.child_toward(3, 4) == 4);
    CHECK_THROWS_AS(t.child_toward(4, 3), QueryError);
}

TEST_CASE("level ancestors and nca match naive walks on random trees") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 12; ++it) {
        Vertex n = 2 + static_cast<Vertex>(rng() % 199);
        DfsTree t = random_tree(rng, n);
        LevelAncestorIndex la(t);
        NcaIndex nca(t);
        for (int q = 0; q < 300; ++q) {
            Vertex v = 1 + static_cast<Vertex>(rng() % n);
            Vertex d = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(t.depth[v] + 1));
            CHECK(la.query(v, d) == naive_la(t, v, d));
            Vertex u = 1 + static_cast<Vertex>(rng() % n);
            Vertex w = 1 + static_cast<Vertex>(rng() % n);
            CHECK(la.nca(u, w) == naive_nca(t, u, w));
            CHECK(nca.query(u, w) == naive_nca(t, u, w));
            CHECK(nca.query(u, u) == u);
            if (t.parent[v] != 0) {
                Vertex anc = naive_la(t, v, static_cast<Vertex>(rng() % (t.depth[v])));
                if (anc != v) CHECK(t.child_toward(anc, v) == naive_la(t, v, t.depth[anc] + 1));
            }
        }
    }
}

TEST_CASE("rmq ties break to the smallest index and match scans") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 20; ++it) {
        std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 500);
        std::vector<Vertex> vals(n);
        for (auto& v : vals) v = static_cast<Vertex>(rng() % 20);
        RmqIndex mn(vals, false), mx(vals, true);
        for (int q = 0; q < 200; ++q) {
            std::int64_t i = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
            std::int64_t j = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n));
            if (i > j) std::swap(i, j);
            std::int64_t bestMin = i, bestMax = i;
            for (std::int64_t k = i; k <= j; ++k) {
                if (vals[k] < vals[bestMin]) bestMin = k;
                if (vals[k] > vals[bestMax]) bestMax = k;
            }
            CHECK(mn.query(i, j) == bestMin);
            CHECK(mx.query(i, j) == bestMax);
        }
    }
}
