#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conn3/verify.hpp"

using namespace conn3;

namespace {

Graph cycle(Vertex n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 1; v <= n; ++v) e.emplace_back(v, v % n + 1);
    return load_graph(n, e);
}

Graph path(Vertex n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 1; v < n; ++v) e.emplace_back(v, v + 1);
    return load_graph(n, e);
}

}  // namespace

TEST_CASE("six-cycle answers") {
    Oracle o{cycle(6)};
    CHECK(o.connected({2, 5}, 3, 4));
    CHECK_FALSE(o.connected({2, 5}, 1, 3));
    CHECK(o.connected({2, 5}, 1, 6));
    CHECK(o.count_components({2, 5}) == 2);
    CHECK(o.count_components({2, 4, 6}) == 3);
    CHECK(o.is_cut({2, 5}));
    CHECK_FALSE(o.is_cut({2}));
}

TEST_CASE("seven-cycle failures split as expected") {
    Oracle o{cycle(7)};
    CHECK(o.connected({2, 4, 6}, 1, 7));
    CHECK_FALSE(o.connected({2, 4, 6}, 1, 3));
    CHECK_FALSE(o.connected({2, 4, 6}, 3, 5));
    CHECK(o.count_components({2, 4, 6}) == 3);

    // adding the chord (5,1) merges the outer parts
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 1; v <= 7; ++v) e.emplace_back(v, v % 7 + 1);
    e.emplace_back(5, 1);
    Oracle o2{load_graph(7, e)};
    CHECK(o2.connected({2, 4, 6}, 1, 5));
    CHECK(o2.connected({2, 4, 6}, 5, 7));
    CHECK_FALSE(o2.connected({2, 4, 6}, 1, 3));
    CHECK(o2.count_components({2, 4, 6}) == 2);
}

TEST_CASE("clique stays connected under any failures") {
    Oracle o{verify::gen_clique(4)};
    CHECK(o.connected({2, 3}, 1, 4));
    CHECK(o.count_components({2, 3, 4}) == 1);
    CHECK_FALSE(o.is_cut({1}));
}

TEST_CASE("path: articulation behavior and isolated hanging subtrees") {
    Oracle o{path(5)};
    CHECK(o.is_cut({2}));
    CHECK(o.count_components({2, 4}) == 3);
    CHECK_FALSE(o.connected({2, 4}, 1, 3));
    CHECK_FALSE(o.connected({2, 4}, 3, 5));
    FailureContext fc = o.resolve({2, 4});
    ComponentRef r3 = o.locate(fc, 3);
    ComponentRef r5 = o.locate(fc, 5);
    CHECK(r3.internal);
    CHECK_FALSE(r5.internal);
    Oracle p3{path(3)};
    CHECK(p3.is_cut({2}));
}

TEST_CASE("single edge graph handles every failure set") {
    Oracle o{load_graph(2, {{1, 2}})};
    CHECK(o.count_components({1}) == 1);
    CHECK(o.count_components({2}) == 1);
    CHECK(o.count_components({1, 2}) == 0);
    CHECK_FALSE(o.is_cut({1}));
}

TEST_CASE("query validation errors") {
    Oracle o{cycle(5)};
    CHECK_THROWS_AS(o.connected({}, 1, 2), QueryError);
    CHECK_THROWS_AS(o.connected({1, 2, 3, 4}, 5, 5), QueryError);
    CHECK_THROWS_AS(o.connected({1, 1}, 2, 3), QueryError);
    CHECK_THROWS_AS(o.connected({1}, 1, 3), QueryError);
    CHECK_THROWS_AS(o.connected({1}, 0, 3), QueryError);
    CHECK(o.connected({1}, 3, 3));
}

TEST_CASE("statelessness: repeated and interleaved queries agree") {
    std::mt19937_64 rng(4);
    Graph g = verify::gen_adversarial(17);
    Oracle o{std::move(g)};
    Vertex n = o.graph().n;
    std::vector<std::tuple<std::vector<Vertex>, Vertex, Vertex, bool>> trace;
    for (int i = 0; i < 200; ++i) {
        std::set<Vertex> fs;
        int k = static_cast<int>(rng() % 3) + 1;
        while (static_cast<int>(fs.size()) < k)
            fs.insert(1 + static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)));
        Vertex x = 1 + static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
        Vertex y = 1 + static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
        if (fs.count(x) || fs.count(y)) continue;
        std::vector<Vertex> f(fs.begin(), fs.end());
        trace.emplace_back(f, x, y, o.connected(f, x, y));
    }
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
        auto& [f, x, y, expect] = *it;
        CHECK(o.connected(f, x, y) == expect);
    }
}

TEST_CASE("hanging-subtree survivors suffice whenever three exist") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 25; ++it) {
        Graph g = verify::gen_adversarial(rng());
        Oracle o{std::move(g)};
        const DfsTree& t = o.transformed().tree;
        const ScalarParams& sp = o.scalars();
        for (Vertex c = 2; c <= t.n; ++c) {
            if (sp.low3[c] == kNone) continue;
            // any two proper ancestors leave a survivor
            std::vector<Vertex> lows = {sp.low1[c], sp.low2[c], sp.low3[c]};
            for (Vertex a : lows)
                for (Vertex b : lows) {
                    int alive = 0;
                    for (Vertex s : lows) alive += (s != a && s != b) ? 1 : 0;
                    CHECK(alive >= 1);
                }
        }
    }
}

TEST_CASE("exhaustive differential on small mixed graphs") {
    std::vector<Graph> corpus = verify::corpus_small(2024, 40, 4, 12);
    verify::DiffOptions opt;
    opt.exhaustive = true;
    verify::DiffResult res = verify::run_differential(corpus, opt);
    INFO(res.firstCase);
    CHECK(res.mismatches == 0);
    CHECK(res.connectivityChecks > 0);
}
