#include "conn3/case_tables.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "conn3/batch_solvers.hpp"

namespace conn3 {

namespace {

constexpr std::int64_t kNoEntry = -1;

inline Vertex min_nz(Vertex a, Vertex b) {
    if (a == kNone) return b;
    if (b == kNone) return a;
    return std::min(a, b);
}

// children of base vertex b in a view's sorted order, reported as base ids
struct ViewChildren {
    const TreeView* vw;
    Vertex begin(Vertex b) const { return vw->childHead[static_cast<size_t>(vw->toView[b])]; }
    Vertex end(Vertex b) const { return vw->childHead[static_cast<size_t>(vw->toView[b]) + 1]; }
    Vertex at(std::int64_t idx) const {
        return vw->toBase[static_cast<size_t>(vw->childList[static_cast<size_t>(idx)])];
    }
};

}  // namespace

CaseTables build_case_tables(const DfsForestViews& views, const ScalarParams& sp,
                             const ExtremePoints& ep, const std::vector<VertexKind>* kinds) {
    const DfsTree& t = *views.base;
    const TreeView& li = views.lowInc;
    const TreeView& hd = views.highDec;
    ViewChildren lic{&li}, hdc{&hd};
    size_t sz = static_cast<size_t>(t.n) + 1;
    CaseTables ct;

    // ---- children sorted lexicographically by survivor lists -------------
    // three stable passes (low3, low2, low1; none greatest), then by parent
    {
        auto sortable = [&](Vertex v) {
            return !kinds || (*kinds)[static_cast<size_t>(v)] != VertexKind::AuxBackSplit;
        };
        std::vector<Vertex> items;
        items.reserve(static_cast<size_t>(t.n));
        ct.realChildCount.assign(sz, 0);
        for (Vertex v = 2; v <= t.n; ++v)
            if (sortable(v)) {
                items.push_back(v);
                ++ct.realChildCount[static_cast<size_t>(t.parent[v])];
            }
        auto pass = [&](const std::vector<Vertex>& key, std::vector<Vertex>& vec,
                        auto&& bucketOf) {
            std::vector<std::int64_t> cnt(sz + 2, 0);
            for (Vertex v : vec) ++cnt[static_cast<size_t>(bucketOf(key, v)) + 1];
            for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
            std::vector<Vertex> out(vec.size());
            for (Vertex v : vec) out[static_cast<size_t>(cnt[bucketOf(key, v)]++)] = v;
            vec.swap(out);
        };
        auto keyBucket = [&](const std::vector<Vertex>& key, Vertex v) -> Vertex {
            Vertex k = key[static_cast<size_t>(v)];
            return k == kNone ? t.n + 1 : k;
        };
        auto parentBucket = [&](const std::vector<Vertex>&, Vertex v) -> Vertex {
            return t.parent[static_cast<size_t>(v)];
        };
        pass(sp.low3, items, keyBucket);
        pass(sp.low2, items, keyBucket);
        pass(sp.low1, items, keyBucket);
        pass(sp.low1, items, parentBucket);
        ct.sortHead.assign(sz + 1, 0);
        for (Vertex v = 2; v <= t.n; ++v) ++ct.sortHead[static_cast<size_t>(t.parent[v]) + 1];
        for (size_t v = 1; v <= static_cast<size_t>(t.n); ++v) ct.sortHead[v + 1] += ct.sortHead[v];
        ct.sortList.assign(static_cast<size_t>(t.n) - (t.n > 0 ? 1 : 0), 0);
        ct.posInParent.assign(sz, 0);
        std::vector<Vertex> cur(ct.sortHead.begin(), ct.sortHead.end());
        for (Vertex v : items) {
            Vertex p = t.parent[static_cast<size_t>(v)];
            ct.posInParent[static_cast<size_t>(v)] =
                cur[static_cast<size_t>(p)] - ct.sortHead[static_cast<size_t>(p)];
            ct.sortList[static_cast<size_t>(cur[p]++)] = v;
        }
        for (Vertex v = 2; v <= t.n; ++v)  // split leaves trail in base order
            if (!sortable(v)) {
                Vertex p = t.parent[static_cast<size_t>(v)];
                ct.posInParent[static_cast<size_t>(v)] =
                    cur[static_cast<size_t>(p)] - ct.sortHead[static_cast<size_t>(p)];
                ct.sortList[static_cast<size_t>(cur[p]++)] = v;
            }
    }

    // ---- first children on lowInc ----------------------------------------
    ct.lowChild1.assign(sz, kNone);
    ct.lowChild2.assign(sz, kNone);
    ct.lowChild3.assign(sz, kNone);
    ct.uniqueLowChild.assign(sz, kNone);
    for (Vertex b = 1; b <= t.n; ++b) {
        std::int64_t beg = lic.begin(b), end = lic.end(b);
        if (beg < end) ct.lowChild1[static_cast<size_t>(b)] = lic.at(beg);
        if (beg + 1 < end) ct.lowChild2[static_cast<size_t>(b)] = lic.at(beg + 1);
        if (beg + 2 < end) ct.lowChild3[static_cast<size_t>(b)] = lic.at(beg + 2);
        Vertex c1 = ct.lowChild1[static_cast<size_t>(b)], c2 = ct.lowChild2[static_cast<size_t>(b)];
        if (c1 != kNone && sp.low1[static_cast<size_t>(c1)] != kNone &&
            (c2 == kNone || sp.low1[static_cast<size_t>(c2)] != sp.low1[static_cast<size_t>(c1)]))
            ct.uniqueLowChild[static_cast<size_t>(b)] = c1;
    }

    // ---- low-side triples over the growing high-segment of apex children --
    ct.tlFirst.assign(sz, kNone);
    ct.tlSecond.assign(sz, kNone);
    ct.tlThird.assign(sz, kNone);
    ct.tlFirstChild.assign(sz, kNone);
    ct.tlSecondChild.assign(sz, kNone);
    ct.tlxFirst.assign(sz, kNone);
    ct.tlxSecond.assign(sz, kNone);
    ct.tlxThird.assign(sz, kNone);
    ct.pairChildA.assign(sz, kNone);
    ct.pairChildB.assign(sz, kNone);
    {
        std::vector<std::int64_t> ptr(sz, kNoEntry);
        std::vector<Vertex> f(sz, 0), s(sz, 0), th(sz, 0), fc(sz, 0), sc(sz, 0);
        std::vector<Vertex> xf(sz, 0), xs(sz, 0), xt(sz, 0), pa(sz, 0), pb(sz, 0);
        for (Vertex d = t.n; d >= 2; --d) {
            Vertex w = ep.apex[static_cast<size_t>(d)];
            if (w == kNone || w == d) continue;
            size_t wi = static_cast<size_t>(w);
            if (ptr[wi] == kNoEntry) ptr[wi] = hdc.begin(w);
            while (ptr[wi] < hdc.end(w)) {
                Vertex child = hdc.at(ptr[wi]);
                Vertex h = sp.high1[static_cast<size_t>(child)];
                if (h == kNone || h < d) break;
                Vertex k1 = sp.low1[static_cast<size_t>(child)];
                auto bump = [&](Vertex& first, Vertex& second, Vertex& firstChild,
                               Vertex& secondChild) {
                    if (first == kNone || k1 < first) {
                        second = first;
                        secondChild = firstChild;
                        first = k1;
                        firstChild = child;
                    } else if (k1 != first && (second == kNone || k1 < second)) {
                        second = k1;
                        secondChild = child;
                    }
                };
                Vertex dummyA = kNone, dummyB = kNone;
                bump(f[wi], s[wi], fc[wi], sc[wi]);
                Vertex k2 = sp.low2[static_cast<size_t>(child)];
                if (k2 != kNone && (th[wi] == kNone || k2 < th[wi])) th[wi] = k2;
                if (child != ct.uniqueLowChild[wi]) {
                    bump(xf[wi], xs[wi], dummyA, dummyB);
                    if (k2 != kNone && (xt[wi] == kNone || k2 < xt[wi])) xt[wi] = k2;
                }
                // multiset pair of smallest low1 children
                if (pa[wi] == kNone)
                    pa[wi] = child;
                else if (k1 < sp.low1[static_cast<size_t>(pa[wi])]) {
                    pb[wi] = pa[wi];
                    pa[wi] = child;
                } else if (pb[wi] == kNone || k1 < sp.low1[static_cast<size_t>(pb[wi])])
                    pb[wi] = child;
                ++ptr[wi];
            }
            ct.tlFirst[static_cast<size_t>(d)] = f[wi];
            ct.tlSecond[static_cast<size_t>(d)] = s[wi];
            ct.tlThird[static_cast<size_t>(d)] = th[wi];
            ct.tlFirstChild[static_cast<size_t>(d)] = fc[wi];
            ct.tlSecondChild[static_cast<size_t>(d)] = sc[wi];
            ct.tlxFirst[static_cast<size_t>(d)] = xf[wi];
            ct.tlxSecond[static_cast<size_t>(d)] = xs[wi];
            ct.tlxThird[static_cast<size_t>(d)] = xt[wi];
            ct.pairChildA[static_cast<size_t>(d)] = pa[wi];
            ct.pairChildB[static_cast<size_t>(d)] = pb[wi];
        }
    }

    // ---- high-side triples over apex children reaching above parent(c) ----
    ct.hmFirst.assign(sz, kNone);
    ct.hmSecond.assign(sz, kNone);
    ct.hmThird.assign(sz, kNone);
    {
        std::vector<std::int64_t> ptr(sz, kNoEntry);
        std::vector<Vertex> f(sz, 0), s(sz, 0), th(sz, 0);
        for (Vertex c = 2; c <= t.n; ++c) {
            Vertex w = ep.apex[static_cast<size_t>(c)];
            if (w == kNone || w == c) continue;
            size_t wi = static_cast<size_t>(w);
            Vertex thr = t.parent[static_cast<size_t>(c)];
            if (ptr[wi] == kNoEntry) ptr[wi] = lic.begin(w);
            while (ptr[wi] < lic.end(w)) {
                Vertex child = lic.at(ptr[wi]);
                Vertex lo = sp.low1[static_cast<size_t>(child)];
                if (lo == kNone || lo >= thr) break;
                Vertex h1 = sp.high1[static_cast<size_t>(child)];
                if (f[wi] == kNone || h1 > f[wi]) {
                    s[wi] = f[wi];
                    f[wi] = h1;
                } else if (h1 != f[wi] && (s[wi] == kNone || h1 > s[wi]))
                    s[wi] = h1;
                Vertex h2 = sp.high2[static_cast<size_t>(child)];
                if (h2 != kNone && h2 > th[wi]) th[wi] = h2;
                ++ptr[wi];
            }
            ct.hmFirst[static_cast<size_t>(c)] = f[wi];
            ct.hmSecond[static_cast<size_t>(c)] = s[wi];
            ct.hmThird[static_cast<size_t>(c)] = th[wi];
        }
    }

    // ---- unique qualifying child of the apex (interval stabbing) ----------
    ct.dHat.assign(sz, kNone);
    {
        std::vector<std::vector<Vertex>> bucket(sz);  // apex -> members, deepest first
        for (Vertex c = t.n; c >= 2; --c) {
            Vertex z = ep.apex[static_cast<size_t>(c)];
            if (z != kNone && z != c) bucket[static_cast<size_t>(z)].push_back(c);
        }
        std::vector<std::int64_t> cover;
        std::vector<std::int64_t> ids;
        for (Vertex z = 1; z <= t.n; ++z) {
            const std::vector<Vertex>& mem = bucket[static_cast<size_t>(z)];
            if (mem.empty()) continue;
            std::int64_t len = static_cast<std::int64_t>(mem.size());
            cover.assign(static_cast<size_t>(len) + 1, 0);
            ids.assign(static_cast<size_t>(len) + 1, 0);
            for (Vertex ci = t.child_begin(z); ci < t.child_end(z); ++ci) {
                Vertex x = t.childList[static_cast<size_t>(ci)];
                Vertex h = sp.high1[static_cast<size_t>(x)], lo = sp.low1[static_cast<size_t>(x)];
                if (h == kNone || lo == kNone) continue;
                // members are descending; c qualifies iff c <= h and parent(c) > lo
                std::int64_t a = static_cast<std::int64_t>(
                    std::lower_bound(mem.begin(), mem.end(), h,
                                     [](Vertex m, Vertex val) { return m > val; }) -
                    mem.begin());
                std::int64_t b = static_cast<std::int64_t>(
                    std::lower_bound(mem.begin(), mem.end(), lo,
                                     [&](Vertex m, Vertex val) {
                                         return t.parent[static_cast<size_t>(m)] > val;
                                     }) -
                    mem.begin()) - 1;
                if (a > b) continue;
                ++cover[static_cast<size_t>(a)];
                --cover[static_cast<size_t>(b) + 1];
                ids[static_cast<size_t>(a)] += x;
                ids[static_cast<size_t>(b) + 1] -= x;
            }
            std::int64_t cv = 0, id = 0;
            for (std::int64_t i = 0; i < len; ++i) {
                cv += cover[static_cast<size_t>(i)];
                id += ids[static_cast<size_t>(i)];
                if (cv == 1) ct.dHat[static_cast<size_t>(mem[static_cast<size_t>(i)])] =
                    static_cast<Vertex>(id);
            }
        }
    }

    // ---- subtree-extreme batches ------------------------------------------
    auto runSubtree = [&](const TreeView& vw, const std::vector<std::pair<Vertex, Vertex>>& keyed,
                          std::vector<Vertex>& outL, std::vector<Vertex>& outR) {
        outL.assign(sz, kNone);
        outR.assign(sz, kNone);
        std::vector<Vertex> l1v = l1_in_view(vw, sp.l1);
        std::vector<SubtreeExtremeQuery> qs;
        qs.reserve(keyed.size() * 2);
        for (auto [v, d] : keyed) {
            Vertex vv = vw.toView[static_cast<size_t>(v)], dd = vw.toView[static_cast<size_t>(d)];
            qs.push_back({vv, dd, true});
            qs.push_back({vv, dd, false});
        }
        std::vector<Vertex> ans = batch_subtree_extremes(vw, l1v, qs);
        for (size_t i = 0; i < keyed.size(); ++i) {
            Vertex key = keyed[i].first;
            Vertex l = ans[2 * i], r = ans[2 * i + 1];
            outL[static_cast<size_t>(key)] = l == kNone ? kNone : vw.toBase[static_cast<size_t>(l)];
            outR[static_cast<size_t>(key)] = r == kNone ? kNone : vw.toBase[static_cast<size_t>(r)];
        }
    };

    {
        std::vector<std::pair<Vertex, Vertex>> dhatQ;
        for (Vertex c = 2; c <= t.n; ++c)
            if (ct.dHat[static_cast<size_t>(c)] != kNone)
                dhatQ.emplace_back(c, ct.dHat[static_cast<size_t>(c)]);
        runSubtree(hd, dhatQ, ct.subDhatL_hd, ct.subDhatR_hd);
        runSubtree(li, dhatQ, ct.subDhatL_li, ct.subDhatR_li);

        std::vector<std::pair<Vertex, Vertex>> sub2Q;
        for (Vertex d = 2; d <= t.n; ++d) {
            Vertex w = ep.apex[static_cast<size_t>(d)];
            if (w == kNone || w == d) continue;
            Vertex c2 = ct.lowChild2[static_cast<size_t>(w)];
            if (c2 != kNone) sub2Q.emplace_back(d, c2);
        }
        runSubtree(hd, sub2Q, ct.sub2L_hd, ct.sub2R_hd);

        ct.ftValid.assign(sz, 0);
        std::vector<std::pair<Vertex, Vertex>> ft1Q, ft2Q;
        for (Vertex c = 2; c <= t.n; ++c) {
            Vertex w = ep.apex[static_cast<size_t>(c)];
            if (w == kNone || w == c) continue;
            Vertex c2 = ct.lowChild2[static_cast<size_t>(w)];
            if (c2 == kNone || sp.low1[static_cast<size_t>(c2)] == kNone ||
                sp.low1[static_cast<size_t>(c2)] >= t.parent[static_cast<size_t>(c)])
                continue;
            ct.ftValid[static_cast<size_t>(c)] = 1;
            ft1Q.emplace_back(c, ct.lowChild1[static_cast<size_t>(w)]);
            ft2Q.emplace_back(c, c2);
        }
        runSubtree(hd, ft1Q, ct.ftL1, ct.ftR1);
        runSubtree(hd, ft2Q, ct.ftL2, ct.ftR2);
    }

    // ---- high-side triples over children of the lowInc dHat anchor --------
    ct.haFirst.assign(sz, kNone);
    ct.haSecond.assign(sz, kNone);
    ct.haThird.assign(sz, kNone);
    {
        LevelAncestorIndex la(t);
        std::vector<Vertex> anchor(sz, kNone);
        for (Vertex c = 2; c <= t.n; ++c) {
            Vertex l = ct.subDhatL_li[static_cast<size_t>(c)],
                   r = ct.subDhatR_li[static_cast<size_t>(c)];
            if (l != kNone && r != kNone) anchor[static_cast<size_t>(c)] = la.nca(l, r);
        }
        std::vector<std::int64_t> ptr(sz, kNoEntry);
        std::vector<Vertex> f(sz, 0), s(sz, 0), th(sz, 0);
        for (Vertex c = 2; c <= t.n; ++c) {
            Vertex wa = anchor[static_cast<size_t>(c)];
            if (wa == kNone) continue;
            size_t wi = static_cast<size_t>(wa);
            Vertex thr = t.parent[static_cast<size_t>(c)];
            if (ptr[wi] == kNoEntry) ptr[wi] = lic.begin(wa);
            while (ptr[wi] < lic.end(wa)) {
                Vertex child = lic.at(ptr[wi]);
                Vertex lo = sp.low1[static_cast<size_t>(child)];
                if (lo == kNone || lo >= thr) break;
                Vertex h1 = sp.high1[static_cast<size_t>(child)];
                if (f[wi] == kNone || h1 > f[wi]) {
                    s[wi] = f[wi];
                    f[wi] = h1;
                } else if (h1 != f[wi] && (s[wi] == kNone || h1 > s[wi]))
                    s[wi] = h1;
                Vertex h2 = sp.high2[static_cast<size_t>(child)];
                if (h2 != kNone && h2 > th[wi]) th[wi] = h2;
                ++ptr[wi];
            }
            ct.haFirst[static_cast<size_t>(c)] = f[wi];
            ct.haSecond[static_cast<size_t>(c)] = s[wi];
            ct.haThird[static_cast<size_t>(c)] = th[wi];
        }
    }

    // ---- nested segment families -------------------------------------------
    auto runSegments = [&](const std::vector<std::pair<Vertex, SegmentQuery>>& keyed,
                           const TreeView& vw, std::vector<Vertex>& outL,
                           std::vector<Vertex>& outR) {
        outL.assign(sz, kNone);
        outR.assign(sz, kNone);
        std::vector<SegmentQuery> qs;
        qs.reserve(keyed.size());
        for (const auto& [key, q] : keyed)
            qs.push_back({vw.toView[static_cast<size_t>(q.z)], vw.toView[static_cast<size_t>(q.u)],
                          vw.toView[static_cast<size_t>(q.v)]});
#ifndef NDEBUG
        if (qs.size() <= 512) validate_nested(vw, qs);
#endif
        SegmentAnswers ans = batch_segment_points(vw, qs);
        for (size_t i = 0; i < keyed.size(); ++i) {
            Vertex key = keyed[i].first;
            outL[static_cast<size_t>(key)] =
                ans.left[i] == kNone ? kNone : vw.toBase[static_cast<size_t>(ans.left[i])];
            outR[static_cast<size_t>(key)] =
                ans.right[i] == kNone ? kNone : vw.toBase[static_cast<size_t>(ans.right[i])];
        }
    };

    auto anchoredFamily = [&](const std::vector<Vertex>& extreme, bool anchorIsChild2) {
        std::vector<std::pair<Vertex, SegmentQuery>> keyed;
        for (Vertex d = 2; d <= t.n; ++d) {
            Vertex pp = t.parent[static_cast<size_t>(d)] == kNone
                            ? kNone
                            : t.parent[static_cast<size_t>(t.parent[static_cast<size_t>(d)])];
            if (pp == kNone) continue;
            Vertex z = kNone, need = kNone;  // need: apex(c_d) must descend from `need`
            if (!anchorIsChild2) {
                Vertex x = extreme[static_cast<size_t>(d)];
                if (x == kNone) continue;
                z = sp.l1[static_cast<size_t>(x)];
                need = d;
            } else {
                Vertex w = ep.apex[static_cast<size_t>(d)];
                if (w == kNone || w == d) continue;
                Vertex c1 = ct.uniqueLowChild[static_cast<size_t>(w)];
                Vertex c2 = ct.lowChild2[static_cast<size_t>(w)];
                if (c1 == kNone || c2 == kNone) continue;
                z = sp.low1[static_cast<size_t>(c2)];
                need = c1;
            }
            if (z == kNone || z >= pp) continue;  // anchor must lie strictly above parent(parent(d))
            Vertex cd = t.child_toward(z, d);
            Vertex a = ep.apex[static_cast<size_t>(cd)];
            if (a == kNone || !t.is_ancestor(need, a)) continue;
            keyed.push_back({d, {d, pp, cd}});
        }
        return keyed;
    };

    {
        auto famL = anchoredFamily(ep.leftHigh, false);
        runSegments(famL, hd, ct.segLhd_L_hd, ct.segLhd_R_hd);
        runSegments(famL, li, ct.segLhd_L_li, ct.segLhd_R_li);
        auto famR = anchoredFamily(ep.rightHigh, false);
        runSegments(famR, hd, ct.segRhd_L_hd, ct.segRhd_R_hd);
        runSegments(famR, li, ct.segRhd_L_li, ct.segRhd_R_li);
        auto famRli = anchoredFamily(ep.rightLow, false);
        runSegments(famRli, hd, ct.segRli_L_hd, ct.segRli_R_hd);
        runSegments(famRli, li, ct.segRli_L_li, ct.segRli_R_li);
        auto famC2 = anchoredFamily({}, true);
        runSegments(famC2, hd, ct.segC2_L_hd, ct.segC2_R_hd);
        runSegments(famC2, li, ct.segC2_L_li, ct.segC2_R_li);

        std::vector<std::pair<Vertex, SegmentQuery>> famDhat;
        for (Vertex c = 2; c <= t.n; ++c) {
            Vertex dh = ct.dHat[static_cast<size_t>(c)];
            if (dh == kNone) continue;
            Vertex z = ep.apex[static_cast<size_t>(c)];
            famDhat.push_back({c, {dh, t.parent[static_cast<size_t>(z)], c}});
        }
        runSegments(famDhat, hd, ct.segDhatL_hd, ct.segDhatR_hd);
        runSegments(famDhat, li, ct.segDhatL_li, ct.segDhatR_li);
    }

    // ---- skipping points (highDec) ------------------------------------------
    {
        auto runSkip = [&](const std::vector<Vertex>& extreme, std::vector<Vertex>& outL,
                           std::vector<Vertex>& outR) {
            std::vector<Vertex> z(static_cast<size_t>(hd.n) + 1, kNone);
            for (Vertex x = 1; x <= hd.n; ++x) {
                Vertex b = hd.toBase[static_cast<size_t>(x)];
                Vertex pt = extreme[static_cast<size_t>(b)];
                Vertex anchor = pt == kNone ? kNone : sp.l1[static_cast<size_t>(pt)];
                z[static_cast<size_t>(x)] =
                    anchor == kNone ? kNone : hd.toView[static_cast<size_t>(anchor)];
            }
            std::vector<Vertex> ansL = batch_skip_points(hd, z, true);
            std::vector<Vertex> ansR = batch_skip_points(hd, z, false);
            outL.assign(sz, kNone);
            outR.assign(sz, kNone);
            for (Vertex x = 1; x <= hd.n; ++x) {
                Vertex b = hd.toBase[static_cast<size_t>(x)];
                outL[static_cast<size_t>(b)] = ansL[static_cast<size_t>(x)] == kNone
                                                   ? kNone
                                                   : hd.toBase[static_cast<size_t>(ansL[x])];
                outR[static_cast<size_t>(b)] = ansR[static_cast<size_t>(x)] == kNone
                                                   ? kNone
                                                   : hd.toBase[static_cast<size_t>(ansR[x])];
            }
        };
        runSkip(ep.leftHigh, ct.skipL_L, ct.skipL_R);
        runSkip(ep.rightHigh, ct.skipR_L, ct.skipR_R);
    }

    // ---- counting items -------------------------------------------------------
    ct.it74a.assign(sz, 0);
    ct.it74b.assign(sz, 0);
    ct.it74c.assign(sz, 0);
    ct.it74d.assign(sz, 0);
    {
        // item1a/item1b: trailing segment of highDec children with high1 <= parent(d)
        std::vector<std::int64_t> ptr(sz, kNoEntry), accA(sz, 0), accB(sz, 0);
        for (Vertex d = 2; d <= t.n; ++d) {
            Vertex w = ep.apex[static_cast<size_t>(d)];
            if (w == kNone || w == d) continue;
            size_t wi = static_cast<size_t>(w);
            Vertex thr = t.parent[static_cast<size_t>(d)];
            if (ptr[wi] == kNoEntry) ptr[wi] = hdc.end(w);
            while (ptr[wi] > hdc.begin(w)) {
                Vertex child = hdc.at(ptr[wi] - 1);
                if (sp.high1[static_cast<size_t>(child)] > thr) break;
                accA[wi] += sp.bpCount[static_cast<size_t>(child)];
                accB[wi] += sp.sumY[static_cast<size_t>(child)];
                --ptr[wi];
            }
            ct.it74a[static_cast<size_t>(d)] = accA[wi];
            ct.it74b[static_cast<size_t>(d)] = accB[wi];
        }
    }
    {
        // item3: numLow over the growing high-segment, minus the unique low child
        std::vector<std::int64_t> ptr(sz, kNoEntry), acc(sz, 0);
        std::vector<char> ulcIn(sz, 0);
        for (Vertex d = t.n; d >= 2; --d) {
            Vertex w = ep.apex[static_cast<size_t>(d)];
            if (w == kNone || w == d) continue;
            size_t wi = static_cast<size_t>(w);
            if (ptr[wi] == kNoEntry) ptr[wi] = hdc.begin(w);
            while (ptr[wi] < hdc.end(w)) {
                Vertex child = hdc.at(ptr[wi]);
                Vertex h = sp.high1[static_cast<size_t>(child)];
                if (h == kNone || h < d) break;
                acc[wi] += sp.numLow[static_cast<size_t>(child)];
                if (child == ct.uniqueLowChild[wi]) ulcIn[wi] = 1;
                ++ptr[wi];
            }
            std::int64_t val = acc[wi];
            if (ulcIn[wi])
                val -= sp.numLow[static_cast<size_t>(ct.uniqueLowChild[wi])];
            ct.it74d[static_cast<size_t>(d)] = val;
        }
    }
    {
        // item2: edges landing on parent(d) from outside the unique low child
        std::vector<std::int64_t> ptr(t.inHead.begin(), t.inHead.end());
        for (Vertex d = 2; d <= t.n; ++d) {
            Vertex p = t.parent[static_cast<size_t>(d)];
            std::int64_t& i = ptr[static_cast<size_t>(p)];
            std::int64_t end = t.inHead[static_cast<size_t>(p) + 1];
            while (i < end && t.inList[static_cast<size_t>(i)] < d) ++i;
            Vertex w = ep.apex[static_cast<size_t>(d)];
            Vertex ulc = w == kNone ? kNone : ct.uniqueLowChild[static_cast<size_t>(w)];
            std::int64_t cnt = 0;
            Vertex sub = d + t.nd[static_cast<size_t>(d)];
            while (i < end && t.inList[static_cast<size_t>(i)] < sub) {
                Vertex x = t.inList[static_cast<size_t>(i)];
                if (w != kNone && w != d && x != w && t.is_ancestor(w, x) &&
                    (ulc == kNone || !t.is_ancestor(ulc, x)))
                    ++cnt;
                ++i;
            }
            ct.it74c[static_cast<size_t>(d)] = cnt;
        }
    }

    ct.w76.assign(sz, kNone);
    ct.it76a.assign(sz, 0);
    ct.it76b.assign(sz, 0);
    ct.it76c.assign(sz, 0);
    {
        LevelAncestorIndex la(t);
        for (Vertex d = 2; d <= t.n; ++d) {
            Vertex l = ct.sub2L_hd[static_cast<size_t>(d)], r = ct.sub2R_hd[static_cast<size_t>(d)];
            if (l != kNone && r != kNone) ct.w76[static_cast<size_t>(d)] = la.nca(l, r);
        }
        std::vector<std::int64_t> ptr(sz, kNoEntry), accA(sz, 0), accB(sz, 0);
        for (Vertex d = 2; d <= t.n; ++d) {
            Vertex w = ct.w76[static_cast<size_t>(d)];
            if (w == kNone) continue;
            size_t wi = static_cast<size_t>(w);
            Vertex thr = t.parent[static_cast<size_t>(d)];
            if (ptr[wi] == kNoEntry) ptr[wi] = hdc.end(w);
            while (ptr[wi] > hdc.begin(w)) {
                Vertex child = hdc.at(ptr[wi] - 1);
                if (sp.high1[static_cast<size_t>(child)] > thr) break;
                accA[wi] += sp.bpCount[static_cast<size_t>(child)];
                accB[wi] += sp.sumY[static_cast<size_t>(child)];
                --ptr[wi];
            }
            ct.it76a[static_cast<size_t>(d)] = accA[wi];
            ct.it76b[static_cast<size_t>(d)] = accB[wi];
        }
        std::vector<std::int64_t> eptr(t.inHead.begin(), t.inHead.end());
        for (Vertex d = 2; d <= t.n; ++d) {
            Vertex w = ct.w76[static_cast<size_t>(d)];
            if (w == kNone) continue;
            Vertex p = t.parent[static_cast<size_t>(d)];
            std::int64_t& i = eptr[static_cast<size_t>(p)];
            std::int64_t end = t.inHead[static_cast<size_t>(p) + 1];
            while (i < end && t.inList[static_cast<size_t>(i)] < d) ++i;
            std::int64_t cnt = 0;
            Vertex sub = d + t.nd[static_cast<size_t>(d)];
            Vertex thr = p;
            while (i < end && t.inList[static_cast<size_t>(i)] < sub) {
                Vertex x = t.inList[static_cast<size_t>(i)];
                if (x != w && t.is_ancestor(w, x)) {
                    Vertex di = t.child_toward(w, x);
                    if (sp.high1[static_cast<size_t>(di)] <= thr) ++cnt;
                }
                ++i;
            }
            ct.it76c[static_cast<size_t>(d)] = cnt;
        }
    }

    // ---- apex chain oracles -----------------------------------------------
    auto buildChain = [&](const TreeView& vw, CaseTables::ChainOracle& co) {
        co.view = &vw;
        co.none = t.n + 2;
        co.batchL.assign(sz, kNone);
        co.batchR.assign(sz, kNone);
        co.tickL.assign(sz, kNone);
        co.tickR.assign(sz, kNone);
        co.chainIndex.assign(sz, kNoEntry);
        co.entryAt.assign(sz, kNoEntry);

        std::vector<std::pair<Vertex, SegmentQuery>> keyed;
        for (Vertex d = 2; d <= t.n; ++d) {
            Vertex up = ep.apexParent[static_cast<size_t>(d)];
            if (up == kNone) continue;
            Vertex p = t.parent[static_cast<size_t>(d)];
            // edges from T(apex(d)) landing exactly on parent(d)
            Vertex a = ep.apex[static_cast<size_t>(d)];
            Vertex tl = kNone, tr = kNone;
            for (std::int64_t it = t.inHead[static_cast<size_t>(p)];
                 it < t.inHead[static_cast<size_t>(p) + 1]; ++it) {
                Vertex x = t.inList[static_cast<size_t>(it)];
                if (!t.is_ancestor(a, x)) continue;
                Vertex xv = vw.toView[static_cast<size_t>(x)];
                tl = min_nz(tl, xv);
                tr = std::max(tr, xv);
            }
            co.tickL[static_cast<size_t>(d)] = tl;
            co.tickR[static_cast<size_t>(d)] = tr;
            if (up < p) {
                Vertex pp = t.parent[static_cast<size_t>(p)];
                keyed.push_back({d, {d, pp, up}});
            }
        }
        {
            std::vector<SegmentQuery> qs;
            qs.reserve(keyed.size());
            for (const auto& [key, q] : keyed)
                qs.push_back({vw.toView[static_cast<size_t>(q.z)],
                              vw.toView[static_cast<size_t>(q.u)],
                              vw.toView[static_cast<size_t>(q.v)]});
#ifndef NDEBUG
            if (qs.size() <= 512) validate_nested(vw, qs);
#endif
            SegmentAnswers ans = batch_segment_points(vw, qs);
            for (size_t i = 0; i < keyed.size(); ++i) {
                co.batchL[static_cast<size_t>(keyed[i].first)] = ans.left[i];
                co.batchR[static_cast<size_t>(keyed[i].first)] = ans.right[i];
            }
        }
        // chains per apex, deepest member first; one combined entry per member
        // that has an apexParent
        std::vector<Vertex> arrL, arrR;
        std::vector<std::vector<Vertex>> bucket(sz);
        for (Vertex v = t.n; v >= 1; --v) {
            Vertex a = ep.apex[static_cast<size_t>(v)];
            if (a != kNone) bucket[static_cast<size_t>(a)].push_back(v);
        }
        for (Vertex z = 1; z <= t.n; ++z) {
            const std::vector<Vertex>& mem = bucket[static_cast<size_t>(z)];
            for (size_t i = 0; i < mem.size(); ++i) {
                Vertex d = mem[i];
                co.chainIndex[static_cast<size_t>(d)] = static_cast<std::int64_t>(i);
                if (ep.apexParent[static_cast<size_t>(d)] == kNone) continue;
                Vertex p = t.parent[static_cast<size_t>(d)];
                Vertex up = ep.apexParent[static_cast<size_t>(d)];
                Vertex eL = co.tickL[static_cast<size_t>(d)], eR = co.tickR[static_cast<size_t>(d)];
                if (up < p) {
                    eL = min_nz(eL, co.batchL[static_cast<size_t>(d)]);
                    eR = std::max(eR, co.batchR[static_cast<size_t>(d)]);
                }
                co.entryAt[static_cast<size_t>(d)] = static_cast<std::int64_t>(arrL.size());
                arrL.push_back(eL == kNone ? co.none : eL);
                arrR.push_back(eR);
            }
        }
        co.rmqL = RmqIndex(std::move(arrL), /*maximum=*/false);
        co.rmqR = RmqIndex(std::move(arrR), /*maximum=*/true);
    };
    buildChain(li, ct.chainLow);
    buildChain(hd, ct.chainHigh);

    return ct;
}

std::pair<Vertex, Vertex> CaseTables::ChainOracle::query(Vertex cBase, Vertex dBase,
                                                         const ExtremePoints& ep,
                                                         const DfsTree& base) const {
    if (ep.apex[static_cast<size_t>(cBase)] == kNone ||
        ep.apex[static_cast<size_t>(cBase)] != ep.apex[static_cast<size_t>(dBase)] ||
        cBase >= base.parent[static_cast<size_t>(dBase)])
        throw QueryError("chain oracle: need apex(c) = apex(d) and c < parent(d)");
    Vertex p = base.parent[static_cast<size_t>(dBase)];
    Vertex up = ep.apexParent[static_cast<size_t>(dBase)];
    Vertex resL, resR;
    if (up == cBase) {
        resL = batchL[static_cast<size_t>(dBase)];
        resR = batchR[static_cast<size_t>(dBase)];
    } else {
        Vertex l1v = up < p ? batchL[static_cast<size_t>(dBase)] : kNone;
        Vertex r1v = up < p ? batchR[static_cast<size_t>(dBase)] : kNone;
        std::int64_t lo = entryAt[static_cast<size_t>(dBase)] + 1;
        std::int64_t hi = entryAt[static_cast<size_t>(dBase)] +
                          (chainIndex[static_cast<size_t>(cBase)] -
                           chainIndex[static_cast<size_t>(dBase)] - 1);
        Vertex l2v = kNone, r2v = kNone;
        if (lo <= hi) {
            Vertex lv = rmqL.value_at(rmqL.query(lo, hi));
            l2v = lv == none ? kNone : lv;
            r2v = rmqR.value_at(rmqR.query(lo, hi));
        }
        resL = min_nz(l1v, l2v);
        resR = std::max(r1v, r2v);
    }
    auto toBase = [&](Vertex x) {
        return x == kNone ? kNone : view->toBase[static_cast<size_t>(x)];
    };
    return {toBase(resL), toBase(resR)};
}

std::pair<Vertex, Vertex> chain_query(const CaseTables& ct, bool highDecView, Vertex c, Vertex d,
                                      const ExtremePoints& ep, const DfsTree& base) {
    return (highDecView ? ct.chainHigh : ct.chainLow).query(c, d, ep, base);
}

std::int64_t CaseTables::words() const {
    auto w32 = [](const std::vector<Vertex>& v) { return static_cast<std::int64_t>(v.size()); };
    auto w64 = [](const std::vector<std::int64_t>& v) {
        return static_cast<std::int64_t>(v.size()) * 2;
    };
    std::int64_t total = 0;
    for (const auto* v :
         {&sortHead, &sortList, &realChildCount, &posInParent, &lowChild1, &lowChild2, &lowChild3,
          &uniqueLowChild, &tlFirst, &tlSecond, &tlThird, &tlFirstChild, &tlSecondChild, &tlxFirst,
          &tlxSecond, &tlxThird, &pairChildA, &pairChildB, &hmFirst, &hmSecond, &hmThird, &dHat,
          &segDhatL_hd, &segDhatR_hd, &segDhatL_li, &segDhatR_li, &subDhatL_hd, &subDhatR_hd,
          &subDhatL_li, &subDhatR_li, &haFirst, &haSecond, &haThird, &segLhd_L_hd, &segLhd_R_hd,
          &segLhd_L_li, &segLhd_R_li, &segRhd_L_hd, &segRhd_R_hd, &segRhd_L_li, &segRhd_R_li,
          &segRli_L_hd, &segRli_R_hd, &segRli_L_li, &segRli_R_li, &segC2_L_hd, &segC2_R_hd,
          &segC2_L_li, &segC2_R_li, &skipL_L, &skipL_R, &skipR_L, &skipR_R, &sub2L_hd, &sub2R_hd,
          &w76, &ftL1, &ftR1, &ftL2, &ftR2})
        total += w32(*v);
    total += static_cast<std::int64_t>(ftValid.size() + 3) / 4;
    for (const auto* v : {&it74a, &it74b, &it74c, &it74d, &it76a, &it76b, &it76c}) total += w64(*v);
    for (const auto* co : {&chainLow, &chainHigh}) {
        total += w32(co->batchL) + w32(co->batchR) + w32(co->tickL) + w32(co->tickR);
        total += static_cast<std::int64_t>(co->chainIndex.size() + co->entryAt.size()) * 2;
        total += co->rmqL.words() + co->rmqR.words();
    }
    return total;
}

}  // namespace conn3
