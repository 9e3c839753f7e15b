#include "conn3/verify.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "conn3/batch_solvers.hpp"

namespace conn3::verify {

namespace {

std::vector<char> reach_from(const Graph& g, const std::vector<char>& dead, Vertex s) {
    std::vector<char> vis(static_cast<size_t>(g.n) + 1, 0);
    if (dead[static_cast<size_t>(s)]) return vis;
    std::vector<Vertex> queue{s};
    vis[static_cast<size_t>(s)] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        Vertex v = queue[qi];
        for (std::int64_t it = g.adjHead[static_cast<size_t>(v)];
             it < g.adjHead[static_cast<size_t>(v) + 1]; ++it) {
            Vertex w = g.adjVertex[static_cast<size_t>(it)];
            if (!vis[static_cast<size_t>(w)] && !dead[static_cast<size_t>(w)]) {
                vis[static_cast<size_t>(w)] = 1;
                queue.push_back(w);
            }
        }
    }
    return vis;
}

std::vector<char> dead_mask(const Graph& g, const std::vector<Vertex>& failures) {
    std::vector<char> dead(static_cast<size_t>(g.n) + 1, 0);
    for (Vertex f : failures) dead[static_cast<size_t>(f)] = 1;
    return dead;
}

}  // namespace

bool brute_connected(const Graph& g, const std::vector<Vertex>& failures, Vertex x, Vertex y) {
    std::vector<char> vis = reach_from(g, dead_mask(g, failures), x);
    return vis[static_cast<size_t>(y)] != 0;
}

std::int64_t brute_count(const Graph& g, const std::vector<Vertex>& failures) {
    std::vector<char> dead = dead_mask(g, failures);
    std::vector<char> seen(static_cast<size_t>(g.n) + 1, 0);
    std::int64_t comps = 0;
    for (Vertex s = 1; s <= g.n; ++s) {
        if (dead[static_cast<size_t>(s)] || seen[static_cast<size_t>(s)]) continue;
        ++comps;
        std::vector<char> vis = reach_from(g, dead, s);
        for (Vertex v = 1; v <= g.n; ++v)
            if (vis[static_cast<size_t>(v)]) seen[static_cast<size_t>(v)] = 1;
    }
    return comps;
}

// ---------------------------------------------------------------------------
// definitional table check
// ---------------------------------------------------------------------------

namespace {

struct Expect {
    std::string fail;
    template <typename A, typename B>
    bool eq(const A& a, const B& b, const std::string& what) {
        if (!fail.empty()) return false;
        if (!(a == static_cast<A>(b))) {
            std::ostringstream os;
            os << what << ": got " << a << ", expected " << b;
            fail = os.str();
            return false;
        }
        return true;
    }
    void note(const std::string& what) {
        if (fail.empty()) fail = what;
    }
};

struct LeapSets {
    // per vertex: the explicit leap set, as (x, y) pairs in base ids
    std::vector<std::vector<BackEdge>> bp;
    explicit LeapSets(const DfsTree& t) : bp(static_cast<size_t>(t.n) + 1) {
        for (Vertex v = 2; v <= t.n; ++v)
            for (const BackEdge& e : t.edges)
                if (t.is_ancestor(v, e.hi) && e.lo < t.parent[static_cast<size_t>(v)])
                    bp[static_cast<size_t>(v)].push_back(e);
    }
};

Vertex brute_nca(const DfsTree& t, Vertex a, Vertex b) {
    while (!t.is_ancestor(a, b)) a = t.parent[static_cast<size_t>(a)];
    return a;
}

std::pair<Vertex, Vertex> brute_view_extremes(const DfsTree& t, const TreeView& vw, Vertex v,
                                              const std::vector<BackEdge>& leap) {
    Vertex l = kNone, r = kNone;
    for (const BackEdge& e : leap) {
        Vertex xv = vw.toView[static_cast<size_t>(e.hi)];
        if (l == kNone || xv < l) l = xv;
        if (xv > r) r = xv;
    }
    (void)t;
    (void)v;
    if (l == kNone) return {kNone, kNone};
    return {vw.toBase[static_cast<size_t>(l)], vw.toBase[static_cast<size_t>(r)]};
}

// extreme descendants of z (view) with an edge landing on the path [u..v]
std::pair<Vertex, Vertex> brute_segment(const TreeView& vw, Vertex z, Vertex u, Vertex v) {
    Vertex l = kNone, r = kNone;
    for (const BackEdge& e : vw.edges) {
        if (!vw.is_ancestor(z, e.hi)) continue;
        if (!(vw.is_ancestor(v, e.lo) && vw.is_ancestor(e.lo, u))) continue;
        if (l == kNone || e.hi < l) l = e.hi;
        if (e.hi > r) r = e.hi;
    }
    return {l, r};
}

}  // namespace

std::string check_tables(const Oracle& o) {
    const DfsTree& t = o.transformed().tree;
    const TreeView& li = o.views().lowInc;
    const TreeView& hd = o.views().highDec;
    const ScalarParams& sp = o.scalars();
    const ExtremePoints& ep = o.extremes();
    const CaseTables& ct = o.tables();
    Expect ex;
    LeapSets ls(t);

    auto vtx = [](Vertex v) { return std::to_string(v); };

    for (Vertex v = 1; v <= t.n && ex.fail.empty(); ++v) {
        const auto& leap = ls.bp[static_cast<size_t>(v)];
        // distinct endpoint orders
        std::set<Vertex> lows, highs;
        std::int64_t sum = 0, numLow = 0, numHigh = 0;
        for (const BackEdge& e : leap) {
            lows.insert(e.lo);
            highs.insert(e.lo);
            sum += e.lo;
        }
        std::vector<Vertex> asc(lows.begin(), lows.end());
        auto nth = [&](size_t i) { return i < asc.size() ? asc[i] : kNone; };
        ex.eq(sp.low1[static_cast<size_t>(v)], nth(0), "low1(" + vtx(v) + ")");
        ex.eq(sp.low2[static_cast<size_t>(v)], nth(1), "low2(" + vtx(v) + ")");
        ex.eq(sp.low3[static_cast<size_t>(v)], nth(2), "low3(" + vtx(v) + ")");
        auto nthHigh = [&](size_t i) {
            return i < asc.size() ? asc[asc.size() - 1 - i] : kNone;
        };
        ex.eq(sp.high1[static_cast<size_t>(v)], nthHigh(0), "high1(" + vtx(v) + ")");
        ex.eq(sp.high2[static_cast<size_t>(v)], nthHigh(1), "high2(" + vtx(v) + ")");
        ex.eq(sp.bpCount[static_cast<size_t>(v)], static_cast<std::int64_t>(leap.size()),
              "leap count(" + vtx(v) + ")");
        ex.eq(sp.sumY[static_cast<size_t>(v)], sum, "leap sum(" + vtx(v) + ")");
        for (const BackEdge& e : leap) {
            if (e.lo == nth(0)) ++numLow;
            if (e.lo == nthHigh(0)) ++numHigh;
        }
        ex.eq(sp.numLow[static_cast<size_t>(v)], numLow, "numLow(" + vtx(v) + ")");
        ex.eq(sp.numHigh[static_cast<size_t>(v)], numHigh, "numHigh(" + vtx(v) + ")");

        std::set<Vertex> stems;
        for (const BackEdge& e : t.edges)
            if (e.hi == v) stems.insert(e.lo);
        std::vector<Vertex> sasc(stems.begin(), stems.end());
        ex.eq(sp.l1[static_cast<size_t>(v)], sasc.empty() ? kNone : sasc[0], "l1(" + vtx(v) + ")");
        ex.eq(sp.l2[static_cast<size_t>(v)], sasc.size() > 1 ? sasc[1] : kNone,
              "l2(" + vtx(v) + ")");

        // extreme providers per view and apex
        Vertex bl = kNone, br = kNone;
        for (const BackEdge& e : leap) {
            if (bl == kNone || e.hi < bl) bl = e.hi;
            if (e.hi > br) br = e.hi;
        }
        ex.eq(ep.leftBase[static_cast<size_t>(v)], bl, "leftBase(" + vtx(v) + ")");
        ex.eq(ep.rightBase[static_cast<size_t>(v)], br, "rightBase(" + vtx(v) + ")");
        auto [ll, lr] = brute_view_extremes(t, li, v, leap);
        ex.eq(ep.leftLow[static_cast<size_t>(v)], ll, "leftLow(" + vtx(v) + ")");
        ex.eq(ep.rightLow[static_cast<size_t>(v)], lr, "rightLow(" + vtx(v) + ")");
        auto [hl, hr] = brute_view_extremes(t, hd, v, leap);
        ex.eq(ep.leftHigh[static_cast<size_t>(v)], hl, "leftHigh(" + vtx(v) + ")");
        ex.eq(ep.rightHigh[static_cast<size_t>(v)], hr, "rightHigh(" + vtx(v) + ")");
        ex.eq(ep.apex[static_cast<size_t>(v)], bl == kNone ? kNone : brute_nca(t, bl, br),
              "apex(" + vtx(v) + ")");
        if (ep.apex[static_cast<size_t>(v)] != kNone) {
            Vertex expect = kNone;
            for (Vertex a = t.parent[static_cast<size_t>(v)]; a != kNone;
                 a = t.parent[static_cast<size_t>(a)])
                if (ep.apex[static_cast<size_t>(a)] == ep.apex[static_cast<size_t>(v)]) {
                    expect = a;
                    break;
                }
            ex.eq(ep.apexParent[static_cast<size_t>(v)], expect, "apexParent(" + vtx(v) + ")");
        }
        // contract invariants
        if (sp.low1[static_cast<size_t>(v)] != kNone) {
            if (sp.bpCount[static_cast<size_t>(v)] < 1 || sp.numLow[static_cast<size_t>(v)] < 1 ||
                sp.numHigh[static_cast<size_t>(v)] < 1)
                ex.note("counter invariants violated at " + vtx(v));
            if (sp.low1[static_cast<size_t>(v)] > sp.high1[static_cast<size_t>(v)])
                ex.note("low1 > high1 at " + vtx(v));
        } else if (sp.bpCount[static_cast<size_t>(v)] != 0 ||
                   sp.high1[static_cast<size_t>(v)] != kNone) {
            ex.note("empty leap set but nonzero parameters at " + vtx(v));
        }
    }
    if (!ex.fail.empty()) return ex.fail;

    // three-lows, pairs, high triples, unique child, items
    for (Vertex d = 2; d <= t.n && ex.fail.empty(); ++d) {
        Vertex w = ep.apex[static_cast<size_t>(d)];
        if (w == kNone || w == d) continue;
        std::vector<Vertex> qual;  // children of w with high1 in T[parent(w), d]
        for (Vertex ci = t.child_begin(w); ci < t.child_end(w); ++ci) {
            Vertex ch = t.childList[static_cast<size_t>(ci)];
            Vertex h = sp.high1[static_cast<size_t>(ch)];
            if (h != kNone && h >= d) qual.push_back(ch);
        }
        // lowest / second-lowest distinct low1 (+ children), lowest low2
        Vertex f = kNone, s = kNone, fc = kNone, sc = kNone, th = kNone;
        for (Vertex ch : qual) {
            Vertex k1 = sp.low1[static_cast<size_t>(ch)];
            if (f == kNone || k1 < f) {
                s = f;
                sc = fc;
                f = k1;
                fc = ch;
            } else if (k1 != f && (s == kNone || k1 < s)) {
                s = k1;
                sc = ch;
            }
            Vertex k2 = sp.low2[static_cast<size_t>(ch)];
            if (k2 != kNone && (th == kNone || k2 < th)) th = k2;
        }
        ex.eq(ct.tlFirst[static_cast<size_t>(d)], f, "tlFirst(" + vtx(d) + ")");
        ex.eq(ct.tlSecond[static_cast<size_t>(d)], s, "tlSecond(" + vtx(d) + ")");
        ex.eq(ct.tlThird[static_cast<size_t>(d)], th, "tlThird(" + vtx(d) + ")");
        ex.eq(ct.tlFirstChild[static_cast<size_t>(d)], fc, "tlFirstChild(" + vtx(d) + ")");
        ex.eq(ct.tlSecondChild[static_cast<size_t>(d)], sc, "tlSecondChild(" + vtx(d) + ")");
        // pair = two smallest by low1 (multiset, scan order = highDec order)
        {
            Vertex pa = kNone, pb = kNone;
            std::vector<Vertex> byHd;
            const TreeView& vw = hd;
            Vertex wv = vw.toView[static_cast<size_t>(w)];
            for (Vertex ci = vw.childHead[static_cast<size_t>(wv)];
                 ci < vw.childHead[static_cast<size_t>(wv) + 1]; ++ci) {
                Vertex ch = vw.toBase[static_cast<size_t>(vw.childList[static_cast<size_t>(ci)])];
                Vertex h = sp.high1[static_cast<size_t>(ch)];
                if (h != kNone && h >= d) byHd.push_back(ch);
            }
            for (Vertex ch : byHd) {
                Vertex k1 = sp.low1[static_cast<size_t>(ch)];
                if (pa == kNone)
                    pa = ch;
                else if (k1 < sp.low1[static_cast<size_t>(pa)]) {
                    pb = pa;
                    pa = ch;
                } else if (pb == kNone || k1 < sp.low1[static_cast<size_t>(pb)])
                    pb = ch;
            }
            ex.eq(ct.pairChildA[static_cast<size_t>(d)], pa, "pairChildA(" + vtx(d) + ")");
            ex.eq(ct.pairChildB[static_cast<size_t>(d)], pb, "pairChildB(" + vtx(d) + ")");
        }
        // primed triple
        Vertex ulc = ct.uniqueLowChild[static_cast<size_t>(w)];
        Vertex xf = kNone, xs = kNone, xt = kNone;
        for (Vertex ch : qual) {
            if (ch == ulc) continue;
            Vertex k1 = sp.low1[static_cast<size_t>(ch)];
            if (xf == kNone || k1 < xf) {
                xs = xf;
                xf = k1;
            } else if (k1 != xf && (xs == kNone || k1 < xs))
                xs = k1;
            Vertex k2 = sp.low2[static_cast<size_t>(ch)];
            if (k2 != kNone && (xt == kNone || k2 < xt)) xt = k2;
        }
        ex.eq(ct.tlxFirst[static_cast<size_t>(d)], xf, "tlxFirst(" + vtx(d) + ")");
        ex.eq(ct.tlxSecond[static_cast<size_t>(d)], xs, "tlxSecond(" + vtx(d) + ")");
        ex.eq(ct.tlxThird[static_cast<size_t>(d)], xt, "tlxThird(" + vtx(d) + ")");

        // counting items
        std::int64_t i74a = 0, i74b = 0, i74c = 0, i74d = 0;
        for (Vertex ci = t.child_begin(w); ci < t.child_end(w); ++ci) {
            Vertex ch = t.childList[static_cast<size_t>(ci)];
            Vertex h = sp.high1[static_cast<size_t>(ch)];
            if (h <= t.parent[static_cast<size_t>(d)]) {
                i74a += sp.bpCount[static_cast<size_t>(ch)];
                i74b += sp.sumY[static_cast<size_t>(ch)];
            }
            if (h != kNone && h >= d && ch != ulc) i74d += sp.numLow[static_cast<size_t>(ch)];
        }
        for (const BackEdge& e : t.edges)
            if (e.lo == t.parent[static_cast<size_t>(d)] && t.is_ancestor(d, e.hi) && e.hi != w &&
                t.is_ancestor(w, e.hi) && (ulc == kNone || !t.is_ancestor(ulc, e.hi)))
                ++i74c;
        ex.eq(ct.it74a[static_cast<size_t>(d)], i74a, "item1a/74(" + vtx(d) + ")");
        ex.eq(ct.it74b[static_cast<size_t>(d)], i74b, "item1b/74(" + vtx(d) + ")");
        ex.eq(ct.it74c[static_cast<size_t>(d)], i74c, "item2/74(" + vtx(d) + ")");
        ex.eq(ct.it74d[static_cast<size_t>(d)], i74d, "item3/74(" + vtx(d) + ")");
    }
    if (!ex.fail.empty()) return ex.fail;

    // high triples keyed by the lower vertex
    for (Vertex c = 2; c <= t.n && ex.fail.empty(); ++c) {
        Vertex w = ep.apex[static_cast<size_t>(c)];
        if (w == kNone || w == c) continue;
        Vertex f = kNone, s = kNone, th = kNone;
        for (Vertex ci = t.child_begin(w); ci < t.child_end(w); ++ci) {
            Vertex ch = t.childList[static_cast<size_t>(ci)];
            Vertex lo = sp.low1[static_cast<size_t>(ch)];
            if (lo == kNone || lo >= t.parent[static_cast<size_t>(c)]) continue;
            Vertex h1 = sp.high1[static_cast<size_t>(ch)];
            if (f == kNone || h1 > f) {
                s = f;
                f = h1;
            } else if (h1 != f && (s == kNone || h1 > s))
                s = h1;
            Vertex h2 = sp.high2[static_cast<size_t>(ch)];
            if (h2 != kNone && h2 > th) th = h2;
        }
        ex.eq(ct.hmFirst[static_cast<size_t>(c)], f, "hmFirst(" + vtx(c) + ")");
        ex.eq(ct.hmSecond[static_cast<size_t>(c)], s, "hmSecond(" + vtx(c) + ")");
        ex.eq(ct.hmThird[static_cast<size_t>(c)], th, "hmThird(" + vtx(c) + ")");

        // unique qualifying child + its extreme tables
        std::vector<Vertex> quals;
        for (Vertex ci = t.child_begin(w); ci < t.child_end(w); ++ci) {
            Vertex ch = t.childList[static_cast<size_t>(ci)];
            Vertex h = sp.high1[static_cast<size_t>(ch)], lo = sp.low1[static_cast<size_t>(ch)];
            if (h != kNone && h >= c && lo != kNone && lo < t.parent[static_cast<size_t>(c)])
                quals.push_back(ch);
        }
        Vertex expectDhat = quals.size() == 1 ? quals[0] : kNone;
        ex.eq(ct.dHat[static_cast<size_t>(c)], expectDhat, "dHat(" + vtx(c) + ")");
        if (expectDhat != kNone) {
            for (const TreeView* vw : {&hd, &li}) {
                auto [lseg, rseg] = brute_segment(
                    *vw, vw->toView[static_cast<size_t>(expectDhat)],
                    vw->toView[static_cast<size_t>(t.parent[static_cast<size_t>(w)])],
                    vw->toView[static_cast<size_t>(c)]);
                Vertex lv = lseg == kNone ? kNone : vw->toBase[static_cast<size_t>(lseg)];
                Vertex rv = rseg == kNone ? kNone : vw->toBase[static_cast<size_t>(rseg)];
                const bool isHd = vw == &hd;
                ex.eq(isHd ? ct.segDhatL_hd[static_cast<size_t>(c)]
                           : ct.segDhatL_li[static_cast<size_t>(c)],
                      lv, "segDhatL(" + vtx(c) + ")");
                ex.eq(isHd ? ct.segDhatR_hd[static_cast<size_t>(c)]
                           : ct.segDhatR_li[static_cast<size_t>(c)],
                      rv, "segDhatR(" + vtx(c) + ")");
                // leap extremes of c inside T(dHat)
                Vertex lvx = kNone, rvx = kNone;
                for (const BackEdge& e : ls.bp[static_cast<size_t>(c)]) {
                    if (!t.is_ancestor(expectDhat, e.hi)) continue;
                    Vertex xv = vw->toView[static_cast<size_t>(e.hi)];
                    if (lvx == kNone || xv < lvx) lvx = xv;
                    if (xv > rvx) rvx = xv;
                }
                Vertex lb2 = lvx == kNone ? kNone : vw->toBase[static_cast<size_t>(lvx)];
                Vertex rb2 = rvx == kNone ? kNone : vw->toBase[static_cast<size_t>(rvx)];
                ex.eq(isHd ? ct.subDhatL_hd[static_cast<size_t>(c)]
                           : ct.subDhatL_li[static_cast<size_t>(c)],
                      lb2, "subDhatL(" + vtx(c) + ")");
                ex.eq(isHd ? ct.subDhatR_hd[static_cast<size_t>(c)]
                           : ct.subDhatR_li[static_cast<size_t>(c)],
                      rb2, "subDhatR(" + vtx(c) + ")");
                if (!isHd && lb2 != kNone) {
                    // cross-check: subtree extremes equal the top-anchored segment extremes
                    Vertex pc = t.parent[static_cast<size_t>(c)];
                    if (t.parent[static_cast<size_t>(pc)] != kNone) {
                        auto [l3, r3] = brute_segment(
                            *vw, vw->toView[static_cast<size_t>(expectDhat)],
                            vw->toView[static_cast<size_t>(t.parent[static_cast<size_t>(pc)])],
                            vw->toView[1]);
                        ex.eq(lb2, l3 == kNone ? kNone : vw->toBase[static_cast<size_t>(l3)],
                              "subtree-vs-segment identity at " + vtx(c));
                        (void)r3;
                    }
                }
            }
            // high triple over children of the anchor of the lowInc extremes
            Vertex lpt = ct.subDhatL_li[static_cast<size_t>(c)];
            Vertex rpt = ct.subDhatR_li[static_cast<size_t>(c)];
            if (lpt != kNone) {
                Vertex wa = brute_nca(t, lpt, rpt);
                Vertex af = kNone, as = kNone, at = kNone;
                for (Vertex ci = t.child_begin(wa); ci < t.child_end(wa); ++ci) {
                    Vertex ch = t.childList[static_cast<size_t>(ci)];
                    Vertex lo = sp.low1[static_cast<size_t>(ch)];
                    if (lo == kNone || lo >= t.parent[static_cast<size_t>(c)]) continue;
                    Vertex h1 = sp.high1[static_cast<size_t>(ch)];
                    if (af == kNone || h1 > af) {
                        as = af;
                        af = h1;
                    } else if (h1 != af && (as == kNone || h1 > as))
                        as = h1;
                    Vertex h2 = sp.high2[static_cast<size_t>(ch)];
                    if (h2 != kNone && h2 > at) at = h2;
                }
                ex.eq(ct.haFirst[static_cast<size_t>(c)], af, "haFirst(" + vtx(c) + ")");
                ex.eq(ct.haSecond[static_cast<size_t>(c)], as, "haSecond(" + vtx(c) + ")");
                ex.eq(ct.haThird[static_cast<size_t>(c)], at, "haThird(" + vtx(c) + ")");
            }
        }
    }
    if (!ex.fail.empty()) return ex.fail;

    // anchored segment families + skipping points + second-child tables
    for (Vertex d = 2; d <= t.n && ex.fail.empty(); ++d) {
        Vertex pd = t.parent[static_cast<size_t>(d)];
        Vertex pp = pd == kNone ? kNone : t.parent[static_cast<size_t>(pd)];
        auto checkFamily = [&](Vertex extreme, const std::vector<Vertex>& outLhd,
                               const std::vector<Vertex>& outRhd,
                               const std::vector<Vertex>& outLli,
                               const std::vector<Vertex>& outRli, Vertex need,
                               const std::string& tag) {
            Vertex z = kNone;
            if (extreme != kNone) z = sp.l1[static_cast<size_t>(extreme)];
            bool member = z != kNone && pp != kNone && z < pp;
            Vertex cd = kNone;
            if (member) {
                cd = t.child_toward(z, d);
                Vertex a = ep.apex[static_cast<size_t>(cd)];
                member = a != kNone && need != kNone && t.is_ancestor(need, a);
            }
            if (!member) {
                if (outLhd[static_cast<size_t>(d)] != kNone ||
                    outLli[static_cast<size_t>(d)] != kNone)
                    ex.note(tag + " populated for non-member " + vtx(d));
                return;
            }
            for (const TreeView* vw : {&hd, &li}) {
                auto [lseg, rseg] =
                    brute_segment(*vw, vw->toView[static_cast<size_t>(d)],
                                  vw->toView[static_cast<size_t>(pp)],
                                  vw->toView[static_cast<size_t>(cd)]);
                Vertex lv = lseg == kNone ? kNone : vw->toBase[static_cast<size_t>(lseg)];
                Vertex rv = rseg == kNone ? kNone : vw->toBase[static_cast<size_t>(rseg)];
                const bool isHd = vw == &hd;
                ex.eq(isHd ? outLhd[static_cast<size_t>(d)] : outLli[static_cast<size_t>(d)], lv,
                      tag + "-L(" + vtx(d) + ")");
                ex.eq(isHd ? outRhd[static_cast<size_t>(d)] : outRli[static_cast<size_t>(d)], rv,
                      tag + "-R(" + vtx(d) + ")");
            }
        };
        checkFamily(ep.leftHigh[static_cast<size_t>(d)], ct.segLhd_L_hd, ct.segLhd_R_hd,
                    ct.segLhd_L_li, ct.segLhd_R_li, d, "segLhd");
        checkFamily(ep.rightHigh[static_cast<size_t>(d)], ct.segRhd_L_hd, ct.segRhd_R_hd,
                    ct.segRhd_L_li, ct.segRhd_R_li, d, "segRhd");
        checkFamily(ep.rightLow[static_cast<size_t>(d)], ct.segRli_L_hd, ct.segRli_R_hd,
                    ct.segRli_L_li, ct.segRli_R_li, d, "segRli");
        {
            Vertex w = ep.apex[static_cast<size_t>(d)];
            Vertex c1 = w == kNone || w == d ? kNone : ct.uniqueLowChild[static_cast<size_t>(w)];
            Vertex c2 = w == kNone || w == d ? kNone : ct.lowChild2[static_cast<size_t>(w)];
            Vertex anchor = (c1 != kNone && c2 != kNone) ? sp.low1[static_cast<size_t>(c2)] : kNone;
            // reuse checkFamily by faking an "extreme" whose l1 equals the anchor:
            // instead check directly
            bool member = anchor != kNone && pp != kNone && anchor < pp;
            Vertex cd = kNone;
            if (member) {
                cd = t.child_toward(anchor, d);
                Vertex a = ep.apex[static_cast<size_t>(cd)];
                member = a != kNone && t.is_ancestor(c1, a);
            }
            if (!member) {
                if (ct.segC2_L_hd[static_cast<size_t>(d)] != kNone ||
                    ct.segC2_L_li[static_cast<size_t>(d)] != kNone)
                    ex.note("segC2 populated for non-member " + vtx(d));
            } else {
                for (const TreeView* vw : {&hd, &li}) {
                    auto [lseg, rseg] =
                        brute_segment(*vw, vw->toView[static_cast<size_t>(d)],
                                      vw->toView[static_cast<size_t>(pp)],
                                      vw->toView[static_cast<size_t>(cd)]);
                    Vertex lv = lseg == kNone ? kNone : vw->toBase[static_cast<size_t>(lseg)];
                    Vertex rv = rseg == kNone ? kNone : vw->toBase[static_cast<size_t>(rseg)];
                    const bool isHd = vw == &hd;
                    ex.eq(isHd ? ct.segC2_L_hd[static_cast<size_t>(d)]
                               : ct.segC2_L_li[static_cast<size_t>(d)],
                          lv, "segC2-L(" + vtx(d) + ")");
                    ex.eq(isHd ? ct.segC2_R_hd[static_cast<size_t>(d)]
                               : ct.segC2_R_li[static_cast<size_t>(d)],
                          rv, "segC2-R(" + vtx(d) + ")");
                }
            }
        }
        // skipping points on highDec
        auto checkSkip = [&](Vertex extreme, const std::vector<Vertex>& outL,
                             const std::vector<Vertex>& outR, const std::string& tag) {
            Vertex z = extreme == kNone ? kNone : sp.l1[static_cast<size_t>(extreme)];
            Vertex lv = kNone, rv = kNone;
            for (const BackEdge& e : ls.bp[static_cast<size_t>(d)]) {
                if (e.lo == z) continue;
                Vertex xv = hd.toView[static_cast<size_t>(e.hi)];
                if (lv == kNone || xv < lv) lv = xv;
                if (xv > rv) rv = xv;
            }
            ex.eq(outL[static_cast<size_t>(d)],
                  lv == kNone ? kNone : hd.toBase[static_cast<size_t>(lv)], tag + "L(" + vtx(d) + ")");
            ex.eq(outR[static_cast<size_t>(d)],
                  rv == kNone ? kNone : hd.toBase[static_cast<size_t>(rv)], tag + "R(" + vtx(d) + ")");
        };
        checkSkip(ep.leftHigh[static_cast<size_t>(d)], ct.skipL_L, ct.skipL_R, "skipL");
        checkSkip(ep.rightHigh[static_cast<size_t>(d)], ct.skipR_L, ct.skipR_R, "skipR");

        // second-child leap extremes + items76
        Vertex w = ep.apex[static_cast<size_t>(d)];
        if (w != kNone && w != d && ct.lowChild2[static_cast<size_t>(w)] != kNone) {
            Vertex c2 = ct.lowChild2[static_cast<size_t>(w)];
            Vertex lv = kNone, rv = kNone;
            for (const BackEdge& e : ls.bp[static_cast<size_t>(d)]) {
                if (!t.is_ancestor(c2, e.hi)) continue;
                Vertex xv = hd.toView[static_cast<size_t>(e.hi)];
                if (lv == kNone || xv < lv) lv = xv;
                if (xv > rv) rv = xv;
            }
            Vertex lb2 = lv == kNone ? kNone : hd.toBase[static_cast<size_t>(lv)];
            Vertex rb2 = rv == kNone ? kNone : hd.toBase[static_cast<size_t>(rv)];
            ex.eq(ct.sub2L_hd[static_cast<size_t>(d)], lb2, "sub2L(" + vtx(d) + ")");
            ex.eq(ct.sub2R_hd[static_cast<size_t>(d)], rb2, "sub2R(" + vtx(d) + ")");
            if (lb2 != kNone) {
                Vertex wexp = brute_nca(t, lb2, rb2);
                ex.eq(ct.w76[static_cast<size_t>(d)], wexp, "w76(" + vtx(d) + ")");
                std::int64_t a = 0, b = 0, cnt = 0;
                for (Vertex ci = t.child_begin(wexp); ci < t.child_end(wexp); ++ci) {
                    Vertex ch = t.childList[static_cast<size_t>(ci)];
                    if (sp.high1[static_cast<size_t>(ch)] <= pd) {
                        a += sp.bpCount[static_cast<size_t>(ch)];
                        b += sp.sumY[static_cast<size_t>(ch)];
                    }
                }
                for (const BackEdge& e : t.edges)
                    if (e.lo == pd && t.is_ancestor(d, e.hi) && e.hi != wexp &&
                        t.is_ancestor(wexp, e.hi) &&
                        sp.high1[static_cast<size_t>(t.child_toward(wexp, e.hi))] <= pd)
                        ++cnt;
                ex.eq(ct.it76a[static_cast<size_t>(d)], a, "item1a/76(" + vtx(d) + ")");
                ex.eq(ct.it76b[static_cast<size_t>(d)], b, "item1b/76(" + vtx(d) + ")");
                ex.eq(ct.it76c[static_cast<size_t>(d)], cnt, "item2/76(" + vtx(d) + ")");
            }
        }
    }
    if (!ex.fail.empty()) return ex.fail;

    // first-two-children tables
    for (Vertex c = 2; c <= t.n && ex.fail.empty(); ++c) {
        Vertex w = ep.apex[static_cast<size_t>(c)];
        bool valid = w != kNone && w != c;
        Vertex c2 = valid ? ct.lowChild2[static_cast<size_t>(w)] : kNone;
        valid = valid && c2 != kNone && sp.low1[static_cast<size_t>(c2)] != kNone &&
                sp.low1[static_cast<size_t>(c2)] < t.parent[static_cast<size_t>(c)];
        ex.eq(static_cast<int>(ct.ftValid[static_cast<size_t>(c)]), valid ? 1 : 0,
              "ftValid(" + vtx(c) + ")");
        if (!valid) continue;
        auto extInside = [&](Vertex sub, Vertex& lOut, Vertex& rOut) {
            Vertex lv = kNone, rv = kNone;
            for (const BackEdge& e : ls.bp[static_cast<size_t>(c)]) {
                if (!t.is_ancestor(sub, e.hi)) continue;
                Vertex xv = hd.toView[static_cast<size_t>(e.hi)];
                if (lv == kNone || xv < lv) lv = xv;
                if (xv > rv) rv = xv;
            }
            lOut = lv == kNone ? kNone : hd.toBase[static_cast<size_t>(lv)];
            rOut = rv == kNone ? kNone : hd.toBase[static_cast<size_t>(rv)];
        };
        Vertex l1v, r1v, l2v, r2v;
        extInside(ct.lowChild1[static_cast<size_t>(w)], l1v, r1v);
        extInside(c2, l2v, r2v);
        ex.eq(ct.ftL1[static_cast<size_t>(c)], l1v, "ftL1(" + vtx(c) + ")");
        ex.eq(ct.ftR1[static_cast<size_t>(c)], r1v, "ftR1(" + vtx(c) + ")");
        ex.eq(ct.ftL2[static_cast<size_t>(c)], l2v, "ftL2(" + vtx(c) + ")");
        ex.eq(ct.ftR2[static_cast<size_t>(c)], r2v, "ftR2(" + vtx(c) + ")");
    }
    if (!ex.fail.empty()) return ex.fail;

    // sorted children lists
    {
        const Vertex inf = t.n + 2;
        auto keyOf = [&](Vertex child, int slot) {
            Vertex k = slot == 0 ? sp.low1[static_cast<size_t>(child)]
                       : slot == 1 ? sp.low2[static_cast<size_t>(child)]
                                   : sp.low3[static_cast<size_t>(child)];
            return k == kNone ? inf : k;
        };
        for (Vertex v = 1; v <= t.n && ex.fail.empty(); ++v) {
            std::int64_t beg = ct.sortHead[static_cast<size_t>(v)];
            std::int64_t realEnd = beg + ct.realChildCount[static_cast<size_t>(v)];
            std::int64_t end = ct.sortHead[static_cast<size_t>(v) + 1];
            for (std::int64_t i = beg; i < end; ++i) {
                Vertex ch = ct.sortList[static_cast<size_t>(i)];
                if (t.parent[static_cast<size_t>(ch)] != v)
                    ex.note("sorted list parent mismatch at " + vtx(v));
                if (ct.posInParent[static_cast<size_t>(ch)] != i - beg)
                    ex.note("posInParent mismatch at " + vtx(ch));
                bool isSplitLeaf = o.transformed().kind[static_cast<size_t>(ch)] ==
                                   VertexKind::AuxBackSplit;
                if (isSplitLeaf != (i >= realEnd))
                    ex.note("split-leaf placement violated under " + vtx(v));
            }
            for (std::int64_t i = beg + 1; i < realEnd; ++i) {
                Vertex a = ct.sortList[static_cast<size_t>(i - 1)];
                Vertex b = ct.sortList[static_cast<size_t>(i)];
                for (int s = 0; s < 3; ++s) {
                    if (keyOf(a, s) < keyOf(b, s)) break;
                    if (keyOf(a, s) > keyOf(b, s)) {
                        ex.note("sorted children out of order under " + vtx(v));
                        break;
                    }
                }
            }
        }
    }
    if (!ex.fail.empty()) return ex.fail;

    // apex-chain oracle vs brute segment scans, all valid pairs
    for (Vertex d = 2; d <= t.n && ex.fail.empty(); ++d) {
        Vertex a = ep.apex[static_cast<size_t>(d)];
        if (a == kNone) continue;
        for (Vertex c = ep.apexParent[static_cast<size_t>(d)]; c != kNone;
             c = ep.apexParent[static_cast<size_t>(c)]) {
            if (c >= t.parent[static_cast<size_t>(d)]) continue;
            for (bool highDecView : {false, true}) {
                const TreeView& vw = highDecView ? hd : li;
                auto [gotL, gotR] = chain_query(ct, highDecView, c, d, ep, t);
                auto [lseg, rseg] = brute_segment(
                    vw, vw.toView[static_cast<size_t>(d)],
                    vw.toView[static_cast<size_t>(
                        t.parent[static_cast<size_t>(t.parent[static_cast<size_t>(d)])])],
                    vw.toView[static_cast<size_t>(c)]);
                ex.eq(gotL, lseg == kNone ? kNone : vw.toBase[static_cast<size_t>(lseg)],
                      "chainL(" + vtx(c) + "," + vtx(d) + ")");
                ex.eq(gotR, rseg == kNone ? kNone : vw.toBase[static_cast<size_t>(rseg)],
                      "chainR(" + vtx(c) + "," + vtx(d) + ")");
            }
        }
    }
    return ex.fail;
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

namespace {

Graph finish(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges) {
    return load_graph(n, edges);
}

}  // namespace

Graph gen_random(std::uint64_t seed, Vertex n, std::int64_t m) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 2; v <= n; ++v) {
        Vertex p = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(v - 1)) + 1;
        edges.emplace_back(p, v);
    }
    std::int64_t extra = m - (n - 1);
    for (std::int64_t i = 0; i < extra && n >= 2; ++i) {
        Vertex a = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)) + 1;
        Vertex b = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)) + 1;
        if (a != b) edges.emplace_back(a, b);
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    return finish(n, std::move(edges));
}

Graph gen_cycle_chords(std::uint64_t seed, Vertex n, int chords) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 1; v <= n; ++v) edges.emplace_back(v, v % n + 1);
    for (int i = 0; i < chords; ++i) {
        Vertex a = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)) + 1;
        Vertex b = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)) + 1;
        if (a != b) edges.emplace_back(a, b);
    }
    return finish(n, std::move(edges));
}

Graph gen_theta(std::uint64_t seed, Vertex n) {
    // three internally disjoint paths between 1 and 2
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Vertex, Vertex>> edges;
    Vertex next = 3;
    for (int path = 0; path < 3 && next <= n; ++path) {
        Vertex len = static_cast<Vertex>(rng() % 4 + 1);
        Vertex prev = 1;
        for (Vertex i = 0; i < len && next <= n; ++i) {
            edges.emplace_back(prev, next);
            prev = next++;
        }
        edges.emplace_back(prev, 2);
    }
    while (next <= n) {  // absorb leftovers as a tail
        edges.emplace_back(2, next);
        ++next;
    }
    return finish(n, std::move(edges));
}

Graph gen_book(Vertex pages) {
    std::vector<std::pair<Vertex, Vertex>> edges{{1, 2}};
    for (Vertex p = 0; p < pages; ++p) {
        edges.emplace_back(1, p + 3);
        edges.emplace_back(2, p + 3);
    }
    return finish(pages + 2, std::move(edges));
}

Graph gen_tree_matching(std::uint64_t seed, Vertex n, int matchEdges) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 2; v <= n; ++v) {
        Vertex span = std::min<Vertex>(v - 1, 3);  // longish paths
        Vertex p = v - 1 - static_cast<Vertex>(rng() % static_cast<std::uint64_t>(span));
        edges.emplace_back(p, v);
    }
    for (int i = 0; i < matchEdges; ++i) {
        Vertex a = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)) + 1;
        Vertex b = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)) + 1;
        if (a != b) edges.emplace_back(a, b);
    }
    return finish(n, std::move(edges));
}

Graph gen_clique(Vertex n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 1; a <= n; ++a)
        for (Vertex b = a + 1; b <= n; ++b) edges.emplace_back(a, b);
    return finish(n, std::move(edges));
}

Graph gen_adversarial(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // spine path, hanging twigs, sparse chords into strict ancestors
    Vertex spine = static_cast<Vertex>(6 + rng() % 9);
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<Vertex> spineIds;
    Vertex next = 1;
    for (Vertex i = 0; i < spine; ++i) {
        spineIds.push_back(next);
        if (i) edges.emplace_back(spineIds[static_cast<size_t>(i) - 1], next);
        ++next;
    }
    std::vector<Vertex> all(spineIds);
    for (Vertex s : spineIds) {
        int twigs = static_cast<int>(rng() % 3);
        for (int j = 0; j < twigs; ++j) {
            Vertex len = static_cast<Vertex>(1 + rng() % 2);
            Vertex prev = s;
            for (Vertex k = 0; k < len; ++k) {
                edges.emplace_back(prev, next);
                all.push_back(next);
                prev = next++;
            }
        }
    }
    Vertex n = next - 1;
    int chords = static_cast<int>(2 + rng() % 6);
    for (int i = 0; i < chords; ++i) {
        Vertex x = all[static_cast<size_t>(rng() % all.size())];
        Vertex y = static_cast<Vertex>(1 + rng() % static_cast<std::uint64_t>(
                                               std::max<Vertex>(1, x - 1)));
        if (x != y) edges.emplace_back(x, y);
    }
    return finish(n, std::move(edges));
}

std::vector<Graph> corpus_small(std::uint64_t seed, int count, Vertex minN, Vertex maxN) {
    std::mt19937_64 rng(seed);
    std::vector<Graph> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        Vertex n = minN + static_cast<Vertex>(rng() % static_cast<std::uint64_t>(maxN - minN + 1));
        std::uint64_t s = rng();
        switch (i % 6) {
            case 0:
                out.push_back(gen_random(s, n, n - 1 + static_cast<std::int64_t>(rng() % (n + 1))));
                break;
            case 1:
                out.push_back(gen_cycle_chords(s, std::max<Vertex>(n, 4),
                                               static_cast<int>(rng() % 4)));
                break;
            case 2:
                out.push_back(gen_theta(s, std::max<Vertex>(n, 5)));
                break;
            case 3:
                out.push_back(gen_book(std::max<Vertex>(n - 2, 2)));
                break;
            case 4:
                out.push_back(gen_tree_matching(s, n, static_cast<int>(rng() % 5)));
                break;
            default:
                out.push_back(gen_adversarial(s));
                break;
        }
    }
    return out;
}

std::vector<Graph> corpus_adversarial(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<Graph> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(gen_adversarial(rng()));
    return out;
}

// ---------------------------------------------------------------------------
// differential driver
// ---------------------------------------------------------------------------

namespace {

std::string describe(const Graph& g, const std::vector<Vertex>& f, Vertex x, Vertex y,
                     const std::string& what) {
    std::ostringstream os;
    os << what << "; F={";
    for (size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    os << "}";
    if (x != kNone) os << "; pair=(" << x << "," << y << ")";
    os << "; graph: n=" << g.n << " edges=[";
    for (size_t i = 0; i < g.edges.size(); ++i)
        os << (i ? " " : "") << g.edges[i].first << "-" << g.edges[i].second;
    os << "]";
    return os.str();
}

struct DiffTally {
    std::int64_t connChecks = 0, countChecks = 0;
    std::int64_t connBad = 0, countBad = 0;
    std::string firstBad;
};

// one (graph, F) unit: compare all pair answers and the component count
std::int64_t diff_failure_set(const Oracle& o, const Graph& g, const std::vector<Vertex>& f,
                              bool allPairs, std::mt19937_64& rng, int pairSamples,
                              DiffTally* tally) {
    std::int64_t bad = 0;
    bool inCount = true;
    auto record = [&](const std::string& s) {
        if (tally->firstBad.empty()) tally->firstBad = s;
        (inCount ? tally->countBad : tally->connBad) += 1;
        ++bad;
    };
    std::int64_t* connChecks = &tally->connChecks;
    std::int64_t* countChecks = &tally->countChecks;
    std::vector<char> dead(static_cast<size_t>(g.n) + 1, 0);
    for (Vertex v : f) dead[static_cast<size_t>(v)] = 1;
    std::vector<Vertex> alive;
    for (Vertex v = 1; v <= g.n; ++v)
        if (!dead[static_cast<size_t>(v)]) alive.push_back(v);

    std::int64_t cnt = 0;
    try {
        cnt = o.count_components(f);
    } catch (const std::exception& e) {
        record(describe(g, f, kNone, kNone, std::string("count threw: ") + e.what()));
        return bad;
    }
    std::int64_t expectCnt = brute_count(g, f);
    ++*countChecks;
    if (cnt != expectCnt)
        record(describe(g, f, kNone, kNone,
                        "count mismatch: got " + std::to_string(cnt) + ", expected " +
                            std::to_string(expectCnt)));
    bool cut = false;
    try {
        cut = o.is_cut(f);
    } catch (const std::exception& e) {
        record(describe(g, f, kNone, kNone, std::string("is_cut threw: ") + e.what()));
    }
    if (cut != (expectCnt > 1))
        record(describe(g, f, kNone, kNone, "is_cut mismatch"));

    if (alive.size() < 2) return bad;
    inCount = false;
    auto checkPair = [&](Vertex x, Vertex y) {
        bool got;
        try {
            got = o.connected(f, x, y);
        } catch (const std::exception& e) {
            record(describe(g, f, x, y, std::string("connected threw: ") + e.what()));
            return;
        }
        bool expect = brute_connected(g, f, x, y);
        ++*connChecks;
        if (got != expect)
            record(describe(g, f, x, y,
                            std::string("connected mismatch: got ") + (got ? "true" : "false")));
    };
    if (allPairs) {
        for (size_t i = 0; i < alive.size(); ++i)
            for (size_t j = i + 1; j < alive.size(); ++j) checkPair(alive[i], alive[j]);
    } else {
        for (int s = 0; s < pairSamples; ++s) {
            Vertex x = alive[static_cast<size_t>(rng() % alive.size())];
            Vertex y = alive[static_cast<size_t>(rng() % alive.size())];
            if (x != y) checkPair(x, y);
        }
    }
    return bad;
}

std::int64_t diff_graph(const Graph& g, const DiffOptions& opt, DiffTally* tally) {
    Oracle o{Graph(g)};
    std::mt19937_64 rng(opt.seed ^ (static_cast<std::uint64_t>(g.n) << 32) ^ g.edges.size());
    std::int64_t bad = 0;
    if (opt.exhaustive) {
        for (Vertex a = 1; a <= g.n; ++a) {
            bad += diff_failure_set(o, g, {a}, true, rng, 0, tally);
            for (Vertex b = a + 1; b <= g.n; ++b) {
                bad += diff_failure_set(o, g, {a, b}, true, rng, 0, tally);
                for (Vertex c = b + 1; c <= g.n; ++c)
                    bad += diff_failure_set(o, g, {a, b, c}, true, rng, 0, tally);
            }
        }
    } else {
        for (int s = 0; s < opt.sampleTriples; ++s) {
            int k = static_cast<int>(rng() % 3) + 1;
            std::set<Vertex> fs;
            while (static_cast<int>(fs.size()) < k)
                fs.insert(static_cast<Vertex>(rng() % static_cast<std::uint64_t>(g.n)) + 1);
            std::vector<Vertex> f(fs.begin(), fs.end());
            bad += diff_failure_set(o, g, f, false, rng, 2, tally);
        }
    }
    return bad;
}

// greedy shrink: drop edges while the mismatch persists
bool graph_still_fails(const Graph& g, std::uint64_t seed) {
    DiffTally tally;
    DiffOptions opt;
    opt.exhaustive = g.n <= 12;
    opt.sampleTriples = 300;
    opt.seed = seed;
    try {
        return diff_graph(g, opt, &tally) > 0;
    } catch (const std::exception&) {
        return true;
    }
}

Graph shrink_graph(Graph g, std::uint64_t seed) {
    bool changed = true;
    while (changed && g.edges.size() > 1) {
        changed = false;
        for (size_t i = 0; i < g.edges.size(); ++i) {
            std::vector<std::pair<Vertex, Vertex>> fewer;
            for (size_t j = 0; j < g.edges.size(); ++j)
                if (j != i) fewer.push_back(g.edges[j]);
            Graph candidate;
            try {
                candidate = load_graph(g.n, fewer);
            } catch (const std::exception&) {
                continue;  // would disconnect
            }
            if (graph_still_fails(candidate, seed)) {
                g = std::move(candidate);
                changed = true;
                break;
            }
        }
    }
    return g;
}

}  // namespace

std::string DiffResult::to_json() const {
    std::ostringstream os;
    os << "{\"graphs\":" << graphs << ",\"connectivity_checks\":" << connectivityChecks
       << ",\"count_checks\":" << countChecks << ",\"mismatches\":" << mismatches
       << ",\"connectivity_mismatches\":" << connectivityMismatches
       << ",\"count_mismatches\":" << countMismatches << ",\"first_counterexample\":\"";
    for (char ch : firstCase) {
        if (ch == '"' || ch == '\\') os << '\\';
        os << ch;
    }
    os << "\"}";
    return os.str();
}

DiffResult run_differential(const std::vector<Graph>& corpus, const DiffOptions& opt,
                            int threads) {
    DiffResult res;
    res.graphs = static_cast<std::int64_t>(corpus.size());
    std::atomic<size_t> nextIdx{0};
    std::atomic<std::int64_t> conn{0}, cnt{0}, bad{0}, connBad{0}, cntBad{0};
    std::mutex firstLock;
    std::string first;
    auto worker = [&] {
        for (;;) {
            size_t i = nextIdx.fetch_add(1);
            if (i >= corpus.size()) break;
            DiffTally tally;
            std::int64_t b = diff_graph(corpus[i], opt, &tally);
            conn += tally.connChecks;
            cnt += tally.countChecks;
            connBad += tally.connBad;
            cntBad += tally.countBad;
            bad += b;
            if (b > 0) {
                std::lock_guard<std::mutex> lk(firstLock);
                if (first.empty()) first = tally.firstBad;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    res.connectivityChecks = conn;
    res.countChecks = cnt;
    res.connectivityMismatches = connBad;
    res.countMismatches = cntBad;
    res.mismatches = bad;
    res.firstCase = first;
    if (!first.empty()) {
        // locate the failing graph again and shrink it for the report
        for (const Graph& g : corpus) {
            if (graph_still_fails(g, opt.seed)) {
                Graph small = shrink_graph(g, opt.seed);
                std::ostringstream os;
                os << first << " | shrunk: n=" << small.n << " edges=[";
                for (size_t i = 0; i < small.edges.size(); ++i)
                    os << (i ? " " : "") << small.edges[i].first << "-" << small.edges[i].second;
                os << "]";
                res.firstCase = os.str();
                break;
            }
        }
    }
    return res;
}

bool mutation_caught(int mutationId, const std::vector<Graph>& corpus) {
    struct Restore {
        ~Restore() { testing::mutation = testing::kNoMutation; }
    } restore;
    testing::mutation = mutationId;
    for (const Graph& g : corpus) {
        DiffTally tally;
        DiffOptions opt;
        opt.exhaustive = g.n <= 14;
        opt.sampleTriples = 200;
        opt.seed = 7;
        try {
            if (diff_graph(g, opt, &tally) > 0) return true;
        } catch (const std::exception&) {
            return true;
        }
    }
    return false;
}

}  // namespace conn3::verify
