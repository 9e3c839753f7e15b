// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "conn3/batch_solvers.hpp"
#include "conn3/verify.hpp"

using namespace conn3;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::cout << "criterion " << id << " [" << name << "]: " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// hand-built graphs that force the deep chain sub-cases
std::vector<Graph> gadget_graphs() {
    std::vector<Graph> out;
    auto add = [&](Vertex n, std::vector<std::pair<Vertex, Vertex>> e) {
        out.push_back(load_graph(n, std::move(e)));
    };
    // long path with one far chord (isolated middle parts, apex cases)
    add(8, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 1}});
    // path plus two nested chords
    add(9, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}, {9, 1}, {7, 3}});
    // bundle below a deep vertex reaching several ancestors
    add(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 1}, {7, 3}, {6, 8},
             {8, 2}, {6, 9}, {9, 1}, {6, 10}, {10, 4}});
    // two-level comb: twigs on a spine with chords from twigs
    add(12, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}, {7, 1}, {4, 8}, {8, 2},
             {5, 9}, {9, 1}, {6, 10}, {10, 2}, {6, 11}, {11, 3}, {6, 12}, {12, 1}});
    // dense middle: several subtrees sharing an apex with mixed reach
    add(11, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 2}, {6, 8}, {8, 1},
             {6, 9}, {9, 5}, {5, 10}, {10, 1}, {4, 11}, {11, 1}});
    return out;
}

}  // namespace

int main() {
    std::cout << "acceptance suite" << std::endl;
    auto total0 = Clock::now();

    // ----- criteria 1 + 2: differential correctness and counting ------------
    {
        auto t0 = Clock::now();
        std::vector<Graph> small = verify::corpus_small(42, 140, 4, 16);
        std::vector<Graph> adv = verify::corpus_adversarial(43, 80);
        for (Graph& g : adv) small.push_back(std::move(g));
        for (Graph& g : gadget_graphs()) small.push_back(std::move(g));
        verify::DiffOptions opt;
        opt.exhaustive = true;
        opt.seed = 42;
        verify::DiffResult sres = verify::run_differential(small, opt, 2);

        std::vector<Graph> large;
        std::mt19937_64 rng(4242);
        for (int i = 0; i < 50; ++i) {
            Vertex n = 200 + static_cast<Vertex>(rng() % 1801);
            large.push_back(verify::gen_random(rng(), n, 2 * n + static_cast<std::int64_t>(
                                                                      rng() % (2 * n))));
        }
        verify::DiffOptions lopt;
        lopt.exhaustive = false;
        lopt.sampleTriples = 500;
        lopt.seed = 747;
        verify::DiffResult lres = verify::run_differential(large, lopt, 2);

        std::ostringstream d1;
        d1 << small.size() << " small graphs exhaustive + " << large.size()
           << " large graphs sampled; " << (sres.connectivityChecks + lres.connectivityChecks)
           << " connectivity checks; " << ms_since(t0) << " ms";
        bool pass1 = sres.connectivityMismatches == 0 && lres.connectivityMismatches == 0 &&
                     small.size() >= 200 && large.size() >= 50;
        report(1, "differential connectivity", pass1,
               d1.str() + (sres.firstCase.empty() ? lres.firstCase : sres.firstCase));

        std::ostringstream d2;
        d2 << (sres.countChecks + lres.countChecks) << " count checks";
        report(2, "component counting", sres.countMismatches == 0 && lres.countMismatches == 0,
               d2.str());
    }

    // ----- criterion 3: parameter and table oracles --------------------------
    {
        auto t0 = Clock::now();
        std::mt19937_64 rng(10);
        int graphs = 0;
        std::string bad;
        while (graphs < 110 && bad.empty()) {
            Vertex n = 4 + static_cast<Vertex>(rng() % 11);
            Graph g;
            switch (graphs % 5) {
                case 0: g = verify::gen_random(rng(), n, n - 1 + static_cast<std::int64_t>(rng() % 12)); break;
                case 1: g = verify::gen_cycle_chords(rng(), std::max<Vertex>(n, 5), static_cast<int>(rng() % 4)); break;
                case 2: g = verify::gen_adversarial(rng()); break;
                case 3: g = verify::gen_tree_matching(rng(), n, static_cast<int>(rng() % 5)); break;
                default: g = verify::gen_theta(rng(), std::max<Vertex>(n, 5)); break;
            }
            if (g.n > 14) continue;
            ++graphs;
            Oracle o{std::move(g)};
            bad = verify::check_tables(o);
        }
        std::ostringstream d;
        d << graphs << " graphs, all tables definitional; " << ms_since(t0) << " ms "
          << bad;
        report(3, "parameter oracles", bad.empty() && graphs >= 100, d.str());
    }

    // ----- criterion 4: batch solver equivalence -----------------------------
    {
        std::mt19937_64 rng(77);
        std::int64_t queries = 0, bad = 0;
        for (int it = 0; it < 120; ++it) {
            Vertex n = 5 + static_cast<Vertex>(rng() % 10);
            Graph g = verify::gen_random(rng(), n, n - 1 + static_cast<std::int64_t>(rng() % 10));
            Oracle o{std::move(g)};
            const TreeView& vw = (it & 1) ? o.views().lowInc : o.views().highDec;
            std::vector<Vertex> l1v = l1_in_view(vw, o.scalars().l1);
            std::vector<SubtreeExtremeQuery> qs;
            for (Vertex v = 2; v <= vw.n; ++v) {
                Vertex d = v + static_cast<Vertex>(rng() % static_cast<std::uint64_t>(vw.nd[v]));
                qs.push_back({v, d, (rng() & 1) != 0});
            }
            std::vector<Vertex> ans = batch_subtree_extremes(vw, l1v, qs);
            for (size_t i = 0; i < qs.size(); ++i) {
                ++queries;
                Vertex best = kNone;
                Vertex thr = vw.parent[qs[i].v];
                for (Vertex x = qs[i].d; x < qs[i].d + vw.nd[qs[i].d]; ++x) {
                    if (l1v[x] == kNone || l1v[x] >= thr) continue;
                    if (best == kNone || (qs[i].leftmost ? x < best : x > best)) best = x;
                }
                bad += ans[i] != best;
            }
            std::vector<Vertex> z(vw.n + 1, kNone);
            for (Vertex x = 2; x <= vw.n; ++x)
                if (rng() & 1) {
                    Vertex a = x;
                    int up = 1 + static_cast<int>(rng() % 3);
                    while (up-- && vw.parent[a]) a = vw.parent[a];
                    if (a != x) z[x] = a;
                }
            for (bool leftmost : {true, false}) {
                std::vector<Vertex> got = batch_skip_points(vw, z, leftmost);
                for (Vertex v = 2; v <= vw.n; ++v) {
                    ++queries;
                    Vertex best = kNone;
                    for (const BackEdge& e : vw.edges) {
                        if (!vw.is_ancestor(v, e.hi) || e.lo >= vw.parent[v] || e.lo == z[v])
                            continue;
                        if (best == kNone || (leftmost ? e.hi < best : e.hi > best)) best = e.hi;
                    }
                    bad += got[v] != best;
                }
            }
            // nested segment batch drawn from the apex chains (a valid family)
            const ExtremePoints& ep = o.extremes();
            std::vector<SegmentQuery> segs;
            for (Vertex dv = 2; dv <= o.transformed().tree.n; ++dv) {
                Vertex up = ep.apexParent[dv];
                Vertex p = o.transformed().tree.parent[dv];
                if (up == kNone || up >= p) continue;
                Vertex pp = o.transformed().tree.parent[p];
                segs.push_back({vw.toView[dv], vw.toView[pp], vw.toView[up]});
            }
            if (!segs.empty()) {
                validate_nested(vw, segs);
                SegmentAnswers sa = batch_segment_points(vw, segs);
                for (size_t i = 0; i < segs.size(); ++i) {
                    ++queries;
                    Vertex bl = kNone, br = kNone;
                    for (const BackEdge& e : vw.edges) {
                        if (!vw.is_ancestor(segs[i].z, e.hi)) continue;
                        if (!(vw.is_ancestor(segs[i].v, e.lo) && vw.is_ancestor(e.lo, segs[i].u)))
                            continue;
                        if (bl == kNone || e.hi < bl) bl = e.hi;
                        if (e.hi > br) br = e.hi;
                    }
                    bad += sa.left[i] != bl;
                    bad += sa.right[i] != br;
                }
            }
        }
        std::ostringstream d;
        d << queries << " batch queries";
        report(4, "batch solver equivalence", bad == 0 && queries >= 10000, d.str());
    }

    // ----- criterion 5: case coverage ----------------------------------------
    {
        std::vector<Graph> corpus = verify::corpus_adversarial(5150, 400);
        for (Graph& g : gadget_graphs()) corpus.push_back(std::move(g));
        std::vector<std::uint64_t> agg(CNT_TOTAL, 0);
        for (const Graph& g : corpus) {
            Oracle o{Graph(g)};
            Vertex n = g.n;
            for (Vertex a = 1; a <= n; ++a)
                for (Vertex b = a + 1; b <= n; ++b)
                    for (Vertex c = b + 1; c <= n; ++c) o.resolve({a, b, c});
            std::vector<std::uint64_t> snap = o.counter_snapshot();
            for (int i = 0; i < CNT_TOTAL; ++i) agg[i] += snap[i];
        }
        std::vector<int> required;
        for (int i = 0; i < CNT_TOTAL; ++i) required.push_back(i);
        std::ostringstream missing;
        bool pass = true;
        for (int id : required)
            if (agg[id] == 0) {
                pass = false;
                missing << " " << counter_name(id);
            }
        report(5, "case coverage", pass,
               pass ? "every dispatch branch fired" : ("missing:" + missing.str()));
    }

    // ----- criterion 6: scaling sanity ----------------------------------------
    {
        std::mt19937_64 rng(31337);
        double build[3] = {0, 0, 0};
        double wordsPer[3] = {0, 0, 0};
        Vertex sizes[3] = {100000, 200000, 400000};
        double medianSmall = 0, medianBig = 0;
        auto measureQueries = [&](const Oracle& o, Vertex n) {
            std::mt19937_64 qrng(99);
            std::vector<double> lat;
            const int runs = 20000;
            lat.reserve(runs);
            for (int i = 0; i < runs; ++i) {
                std::set<Vertex> fs;
                int k = static_cast<int>(qrng() % 3) + 1;
                while (static_cast<int>(fs.size()) < k)
                    fs.insert(1 + static_cast<Vertex>(qrng() % static_cast<std::uint64_t>(n)));
                Vertex x, y;
                do {
                    x = 1 + static_cast<Vertex>(qrng() % static_cast<std::uint64_t>(n));
                } while (fs.count(x));
                do {
                    y = 1 + static_cast<Vertex>(qrng() % static_cast<std::uint64_t>(n));
                } while (fs.count(y) || y == x);
                std::vector<Vertex> f(fs.begin(), fs.end());
                auto q0 = Clock::now();
                volatile bool r = o.connected(f, x, y);
                (void)r;
                lat.push_back(std::chrono::duration<double, std::nano>(Clock::now() - q0).count());
            }
            std::sort(lat.begin(), lat.end());
            return lat[lat.size() / 2];
        };
        {
            Graph g = verify::gen_random(rng(), 1000, 3000);
            Oracle o{std::move(g)};
            medianSmall = measureQueries(o, 1000);
        }
        for (int i = 0; i < 3; ++i) {
            Graph g = verify::gen_random(rng(), sizes[i], 3LL * sizes[i]);
            auto t0 = Clock::now();
            Oracle o{std::move(g)};
            build[i] = ms_since(t0);
            wordsPer[i] = static_cast<double>(o.table_words()) /
                          static_cast<double>(o.transformed().n());
            if (i == 2) medianBig = measureQueries(o, sizes[i]);
        }
        bool timeOk = build[1] <= 2.8 * build[0] && build[2] <= 2.8 * build[1];
        bool queryOk = medianBig <= 3.0 * medianSmall;
        bool wordsOk = std::abs(wordsPer[1] - wordsPer[0]) <= 0.2 * wordsPer[0] &&
                       std::abs(wordsPer[2] - wordsPer[0]) <= 0.2 * wordsPer[0];
        std::ostringstream d;
        d << "build ms {" << build[0] << ", " << build[1] << ", " << build[2] << "}; "
          << "query median ns {" << medianSmall << " @1k, " << medianBig << " @400k}; "
          << "words/vertex {" << wordsPer[0] << ", " << wordsPer[1] << ", " << wordsPer[2] << "}";
        report(6, "scaling sanity", timeOk && queryOk && wordsOk, d.str());
    }

    // ----- criterion 7: mutation sensitivity ----------------------------------
    {
        std::vector<Graph> corpus = verify::corpus_small(2718, 60, 4, 14);
        for (Graph& g : gadget_graphs()) corpus.push_back(std::move(g));
        std::vector<Graph> adv = verify::corpus_adversarial(281, 60);
        for (Graph& g : adv) corpus.push_back(std::move(g));
        int caught = 0, tried = 0;
        std::ostringstream escaped;
        for (int m = 1; m < testing::kMutationCount; ++m) {
            ++tried;
            if (verify::mutation_caught(m, corpus))
                ++caught;
            else
                escaped << " mutation#" << m;
        }
        std::ostringstream d;
        d << caught << "/" << tried << " mutations caught" << escaped.str();
        report(7, "mutation sensitivity", caught == tried && tried >= 10, d.str());
    }

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED")
              << " (total " << ms_since(total0) / 1000.0 << " s)" << std::endl;
    return failures == 0 ? 0 : 1;
}
