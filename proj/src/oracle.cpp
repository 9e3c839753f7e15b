#include "conn3/oracle.hpp"

#include <algorithm>
#include <cassert>

namespace conn3 {

namespace testing {
int mutation = kNoMutation;
}

const char* counter_name(int id) {
    static const char* names[CNT_TOTAL] = {
        "one_failure", "two_unrelated", "two_related", "three_unrelated", "three_one_pair",
        "fork_distinct_children", "fork_same_child", "chain",
        "fork_same_direct", "fork_same_both_lower", "fork_same_both_upper", "fork_same_third_low",
        "fork_same_split",
        "chain_apex_none", "chain_apex_none_md_none", "chain_apex_none_md_child",
        "chain_apex_none_md_bottom", "chain_apex_none_md_mid",
        "chain_apex_upper", "chain_apex_upper_md_none", "chain_apex_upper_md_child",
        "chain_apex_upper_md_bottom", "chain_apex_upper_md_mid",
        "chain_apex_mid", "chain_apex_mid_sibling", "chain_apex_mid_sibling_md_none",
        "chain_apex_mid_sibling_md_child", "chain_apex_mid_sibling_md_bottom",
        "chain_apex_mid_sibling_md_mid",
        "chain_apex_mid_case1", "chain_apex_mid_case2", "chain_apex_mid_case2_md_none",
        "chain_apex_mid_case2_md_child", "chain_apex_mid_case2_md_bottom",
        "chain_apex_mid_case2_md_mid",
        "chain_apex_mid_case3", "chain_apex_mid_case3_one_child", "chain_apex_mid_case3_spread",
        "chain_apex_mid_case3_no_cross", "chain_apex_mid_case4",
        "chain_apex_mid_case5", "chain_apex_mid_case5_md_none", "chain_apex_mid_case5_md_child",
        "chain_apex_mid_case5_md_bottom", "chain_apex_mid_case5_md_mid",
        "chain_apex_below", "chain_apex_below_md_child", "chain_apex_below_md_bottom",
        "chain_apex_below_no_upper", "chain_apex_below_upper_mid", "chain_apex_below_upper_low",
        "chain_apex_below_counting", "chain_apex_below_md_mid",
        "chain_apex_bottom", "chain_apex_bottom_md_bottom", "chain_apex_bottom_md_mid",
        "chain_apex_bottom_low_route",
        "chain_apex_low", "chain_apex_low_same", "chain_apex_low_upper", "chain_apex_low_anchor",
        "chain_apex_low_second_child", "chain_apex_low_sibling_out", "chain_apex_low_count_one",
        "chain_apex_low_count_spread",
        "chain_apex_hanging",
    };
    return (id >= 0 && id < CNT_TOTAL) ? names[id] : "?";
}

struct Oracle::Ctx {
    FailureContext& fc;
    const DfsTree& t;
    Vertex u, v, w, c, d;

    bool inA(Vertex y) const { return y != kNone && !t.is_ancestor(u, y); }
    bool inB(Vertex y) const { return y != kNone && t.is_ancestor(c, y) && !t.is_ancestor(v, y); }
    bool inC(Vertex y) const { return y != kNone && t.is_ancestor(d, y) && !t.is_ancestor(w, y); }
    void edgeAB() { fc.edges |= 1; }
    void edgeAC() { fc.edges |= 2; }
    void edgeBC() { fc.edges |= 4; }
};

Oracle::Oracle(Graph g) : g_(std::move(g)) {
    tg_ = split_transform(g_);
    sp_ = compute_scalar_params(tg_.tree);
    views_ = build_views(tg_.tree, sp_.low1, sp_.high1);
    ep_ = compute_extreme_points(views_, sp_);
    ct_ = build_case_tables(views_, sp_, ep_, &tg_.kind);
}

bool Oracle::pair_check(Vertex u, Vertex v) const {
    const DfsTree& t = tg_.tree;
    Vertex c = t.child_toward(u, v);
    auto inB = [&](Vertex y) {
        return y != kNone && t.is_ancestor(c, y) && !t.is_ancestor(v, y);
    };
    Vertex L = ep_.leftHigh[static_cast<size_t>(c)], R = ep_.rightHigh[static_cast<size_t>(c)];
    if (L == kNone) return false;
    bool direct = mut(testing::kMutPairDirect, inB(L) || inB(R));
    if (direct) return true;
    Vertex d = t.child_toward(v, L);
    return mut(testing::kMutPairHigh, inB(sp_.high1[static_cast<size_t>(d)]));
}

bool Oracle::fork_same_check(Vertex u, Vertex v, Vertex w, Vertex c) const {
    const DfsTree& t = tg_.tree;
    auto inB2 = [&](Vertex y) {
        return y != kNone && t.is_ancestor(c, y) && !t.is_ancestor(v, y) && !t.is_ancestor(w, y);
    };
    Vertex L = ep_.leftHigh[static_cast<size_t>(c)], R = ep_.rightHigh[static_cast<size_t>(c)];
    if (L == kNone) return false;
    if (inB2(L) || inB2(R)) {
        hit(CNT_62_DIRECT);
        return true;
    }
    bool Lv = t.is_ancestor(v, L), Rv = t.is_ancestor(v, R);
    if (Lv && Rv) {
        hit(CNT_62_BOTH_V);
        return inB2(sp_.high1[static_cast<size_t>(t.child_toward(v, L))]);
    }
    if (!Lv && !Rv) {
        hit(CNT_62_BOTH_W);
        return inB2(sp_.high1[static_cast<size_t>(t.child_toward(w, L))]);
    }
    hit(CNT_62_SPLIT);
    Vertex M = ep_.apex[static_cast<size_t>(c)];
    Vertex t3 = ct_.lowChild3[static_cast<size_t>(M)];
    bool third = t3 != kNone && sp_.low1[static_cast<size_t>(t3)] != kNone &&
                 !t.is_ancestor(u, sp_.low1[static_cast<size_t>(t3)]);
    if (mut(testing::kMutSplitThird, third)) {
        hit(CNT_62_THIRD);
        return true;
    }
    Vertex d1 = ct_.lowChild1[static_cast<size_t>(M)], d2 = ct_.lowChild2[static_cast<size_t>(M)];
    Vertex dv = t.is_ancestor(d1, v) ? d1 : d2;
    bool dvFirst = dv == d1;
    Vertex Ldv = dvFirst ? ct_.ftL1[static_cast<size_t>(c)] : ct_.ftL2[static_cast<size_t>(c)];
    Vertex Rdv = dvFirst ? ct_.ftR1[static_cast<size_t>(c)] : ct_.ftR2[static_cast<size_t>(c)];
    Vertex Ldw = dvFirst ? ct_.ftL2[static_cast<size_t>(c)] : ct_.ftL1[static_cast<size_t>(c)];
    Vertex Rdw = dvFirst ? ct_.ftR2[static_cast<size_t>(c)] : ct_.ftR1[static_cast<size_t>(c)];
    if (inB2(Ldv) || inB2(Rdv) || inB2(Ldw) || inB2(Rdw)) return true;
    Vertex fv = t.child_toward(v, Ldv);
    Vertex fw = t.child_toward(w, Ldw);
    return inB2(sp_.high1[static_cast<size_t>(fv)]) || inB2(sp_.high1[static_cast<size_t>(fw)]);
}

void Oracle::attach_c(Ctx& q, Attach mode, const std::array<int, 4>& cnt) const {
    const DfsTree& t = tg_.tree;
    Vertex Md = ep_.apex[static_cast<size_t>(q.d)];
    bool wantB = mode != Attach::AOnly;
    bool wantA = mode != Attach::BOnly;
    if (Md == kNone) {
        hit(cnt[0]);
        return;
    }
    if (Md != q.w && t.is_ancestor(q.w, Md)) {
        hit(cnt[1]);
        Vertex dp = t.child_toward(q.w, Md);
        if (!q.inC(sp_.high1[static_cast<size_t>(dp)])) return;
        if (wantB) {
            bool b = mode == Attach::BOnly
                         ? mut(testing::kMutDescLow, q.inB(sp_.low1[static_cast<size_t>(dp)]) ||
                                                         q.inB(sp_.low2[static_cast<size_t>(dp)]))
                         : mut(testing::kMutHighInB, q.inB(sp_.high1[static_cast<size_t>(q.d)]));
            if (b) q.edgeBC();
        }
        if (wantA && q.inA(sp_.low1[static_cast<size_t>(dp)])) q.edgeAC();
        return;
    }
    if (Md == q.w) {
        hit(cnt[2]);
        Vertex i = ct_.tlFirst[static_cast<size_t>(q.d)];
        Vertex ii = ct_.tlSecond[static_cast<size_t>(q.d)];
        Vertex iii = ct_.tlThird[static_cast<size_t>(q.d)];
        if (wantB && mut(testing::kMutTripleLow, q.inB(i) || q.inB(ii) || q.inB(iii))) q.edgeBC();
        if (wantA && q.inA(i)) q.edgeAC();
        return;
    }
    // apex of d lies between d and w
    hit(cnt[3]);
    bool useL = q.inC(ep_.leftHigh[static_cast<size_t>(q.d)]);
    Vertex x = useL ? ep_.leftHigh[static_cast<size_t>(q.d)]
                    : ep_.rightHigh[static_cast<size_t>(q.d)];
    Vertex t1 = sp_.l1[static_cast<size_t>(x)];
    if (t1 != q.u) {
        if (q.inA(t1)) {
            if (wantA) q.edgeAC();
            return;
        }
        if (wantB) q.edgeBC();  // t1 lands between u and v
        return;
    }
    if (wantB) {
        Vertex l2 = sp_.l2[static_cast<size_t>(x)];
        if (l2 != kNone && q.inB(l2)) {
            q.edgeBC();
            return;
        }
    }
    Vertex Ls = useL ? ct_.skipL_L[static_cast<size_t>(q.d)] : ct_.skipR_L[static_cast<size_t>(q.d)];
    Vertex Rs = useL ? ct_.skipL_R[static_cast<size_t>(q.d)] : ct_.skipR_R[static_cast<size_t>(q.d)];
    if (Ls == kNone) return;
    if (q.inC(Ls) || q.inC(Rs)) {
        Vertex z = q.inC(Ls) ? Ls : Rs;
        if (mode == Attach::BOnly) {
            q.edgeBC();
        } else if (mode == Attach::AOnly) {
            q.edgeAC();
        } else {
            Vertex lz = sp_.l1[static_cast<size_t>(z)];
            if (lz != q.u && q.inA(lz))
                q.edgeAC();
            else
                q.edgeBC();
        }
        return;
    }
    Vertex dpp = t.child_toward(q.w, Ls);
    if (!mut(testing::kMutSkipHigh, q.inC(sp_.high1[static_cast<size_t>(dpp)]))) return;
    if (mode == Attach::AOnly)
        q.edgeAC();
    else
        q.edgeBC();
}

Oracle::CbResult Oracle::cb_check_apex_in_c(Ctx& q) const {
    const DfsTree& t = tg_.tree;
    CbResult res;
    res.usedLeft = q.inC(ep_.leftHigh[static_cast<size_t>(q.d)]);
    Vertex x = res.usedLeft ? ep_.leftHigh[static_cast<size_t>(q.d)]
                            : ep_.rightHigh[static_cast<size_t>(q.d)];
    if (sp_.l1[static_cast<size_t>(x)] != q.u) {
        res.connected = true;  // its lowest endpoint lands between u and v
        return res;
    }
    Vertex Lt = res.usedLeft ? ct_.segLhd_L_hd[static_cast<size_t>(q.d)]
                             : ct_.segRhd_L_hd[static_cast<size_t>(q.d)];
    Vertex Rt = res.usedLeft ? ct_.segLhd_R_hd[static_cast<size_t>(q.d)]
                             : ct_.segRhd_R_hd[static_cast<size_t>(q.d)];
    if (Lt == kNone) return res;
    if (q.inC(Lt) || q.inC(Rt)) {
        res.connected = true;
        return res;
    }
    Vertex dpp = t.child_toward(q.w, Lt);
    res.connected = q.inC(sp_.high1[static_cast<size_t>(dpp)]);
    return res;
}

void Oracle::seven_mc_v(Ctx& q) const {
    Vertex dA = ct_.pairChildA[static_cast<size_t>(q.c)];
    Vertex dB = ct_.pairChildB[static_cast<size_t>(q.c)];
    bool star = (dA != kNone && dA != q.d && q.inA(sp_.low1[static_cast<size_t>(dA)])) ||
                (dB != kNone && q.inA(sp_.low1[static_cast<size_t>(dB)]));
    if (mut(testing::kMutStar, star)) {
        hit(CNT_73_STAR);
        q.edgeAB();
        attach_c(q, Attach::Both,
                 {CNT_73_STAR_MD_NONE, CNT_73_STAR_MD_CHILD, CNT_73_STAR_MD_W, CNT_73_STAR_MD_C});
        return;
    }
    Vertex Md = ep_.apex[static_cast<size_t>(q.d)];
    Vertex h = sp_.high1[static_cast<size_t>(q.d)], lo = sp_.low1[static_cast<size_t>(q.d)];
    if (Md == kNone) {
        hit(CNT_73_C1);
        return;
    }
    if (q.inB(h) && !q.inA(lo)) {
        hit(CNT_73_C2);
        attach_c(q, Attach::BOnly,
                 {CNT_73_C2_MD_NONE, CNT_73_C2_MD_CHILD, CNT_73_C2_MD_W, CNT_73_C2_MD_C});
        return;
    }
    if (q.inB(h) && q.inA(lo)) {
        hit(CNT_73_C3);
        seven73_case3(q);
        return;
    }
    if (h == q.u && lo == q.u) {
        hit(CNT_73_C4);
        return;
    }
    hit(CNT_73_C5);
    attach_c(q, Attach::AOnly,
             {CNT_73_C5_MD_NONE, CNT_73_C5_MD_CHILD, CNT_73_C5_MD_W, CNT_73_C5_MD_C});
}

void Oracle::seven73_case3(Ctx& q) const {
    const DfsTree& t = tg_.tree;
    assert(ct_.dHat[static_cast<size_t>(q.c)] == q.d);
    Vertex Lt = ct_.segDhatL_hd[static_cast<size_t>(q.c)];
    Vertex Rt = ct_.segDhatR_hd[static_cast<size_t>(q.c)];
    bool bc = false;
    if (Lt != kNone) {
        if (q.inC(Lt) || q.inC(Rt)) {
            bc = true;
        } else {
            Vertex d0 = t.child_toward(q.w, Lt);
            bc = q.inC(sp_.high1[static_cast<size_t>(d0)]);
        }
    }
    if (bc) q.edgeBC();
    auto attachA = [&](Vertex Lcd, Vertex Rcd) {
        if (Lcd == kNone) return;
        if (q.inC(Lcd) || q.inC(Rcd)) {
            q.edgeAC();
            return;
        }
        Vertex dl = t.child_toward(q.w, Lcd), dr = t.child_toward(q.w, Rcd);
        if (dl == dr) {
            hit(CNT_73_C3_A1);
            Vertex h1 = sp_.high1[static_cast<size_t>(dl)], h2 = sp_.high2[static_cast<size_t>(dl)];
            if (q.inC(h1))
                q.edgeAC();
            else if (q.inB(h1) || (h1 == q.v && q.inB(h2)))
                q.edgeAB();
        } else {
            hit(CNT_73_C3_A2);
            for (Vertex p : {ct_.haFirst[static_cast<size_t>(q.c)],
                             ct_.haSecond[static_cast<size_t>(q.c)],
                             ct_.haThird[static_cast<size_t>(q.c)]}) {
                if (q.inC(p))
                    q.edgeAC();
                else if (q.inB(p))
                    q.edgeAB();
            }
        }
    };
    if (bc) {
        attachA(ct_.subDhatL_li[static_cast<size_t>(q.c)], ct_.subDhatR_li[static_cast<size_t>(q.c)]);
    } else {
        hit(CNT_73_C3_B);
        attachA(ct_.subDhatL_hd[static_cast<size_t>(q.c)], ct_.subDhatR_hd[static_cast<size_t>(q.c)]);
        if (!(q.fc.edges & 1)) {
            Vertex Ltl = ct_.segDhatL_li[static_cast<size_t>(q.c)];
            if (Ltl != kNone) {
                if (q.inC(Ltl)) {
                    q.edgeBC();  // a descendant of d reaching B directly
                } else {
                    Vertex dpp = t.child_toward(q.w, Ltl);
                    if (q.inA(sp_.low1[static_cast<size_t>(dpp)])) q.edgeAB();
                }
            }
        }
    }
}

void Oracle::seven_mc_desc_w(Ctx& q) const {
    const DfsTree& t = tg_.tree;
    Vertex Mc = ep_.apex[static_cast<size_t>(q.c)];
    Vertex dp = t.child_toward(q.w, Mc);
    Vertex Md = ep_.apex[static_cast<size_t>(q.d)];
    if (t.is_ancestor(dp, Md)) {
        hit(CNT_74_MD_CHILD);
        if (q.inC(sp_.high1[static_cast<size_t>(dp)])) q.edgeAC();
        if (q.inB(sp_.high1[static_cast<size_t>(q.d)])) q.edgeAB();
        return;
    }
    if (Md == q.w) {
        hit(CNT_74_MD_W);
        Vertex h1 = sp_.high1[static_cast<size_t>(dp)], h2 = sp_.high2[static_cast<size_t>(dp)];
        auto bcTriple = [&] {
            return mut(testing::kMutTripleLow, q.inB(ct_.tlFirst[static_cast<size_t>(q.d)]) ||
                                                   q.inB(ct_.tlSecond[static_cast<size_t>(q.d)]) ||
                                                   q.inB(ct_.tlThird[static_cast<size_t>(q.d)]));
        };
        if (q.inA(h1) || h1 == q.u ||
            (h1 == q.v && (h2 == kNone || h2 == q.u || q.inA(h2)))) {
            hit(CNT_74_MD_W_NOA);
            if (bcTriple()) q.edgeBC();
            return;
        }
        if (q.inB(h1) || (h1 == q.v && q.inB(h2))) {
            hit(CNT_74_MD_W_AB);
            q.edgeAB();
            if (bcTriple()) q.edgeBC();
            return;
        }
        hit(CNT_74_MD_W_AC);
        q.edgeAC();  // high1(dp) lands in C
        if (q.inB(ct_.tlxFirst[static_cast<size_t>(q.d)]) ||
            q.inB(ct_.tlxSecond[static_cast<size_t>(q.d)]) ||
            q.inB(ct_.tlxThird[static_cast<size_t>(q.d)])) {
            q.edgeBC();
            return;
        }
        hit(CNT_74_COUNTING);
        std::int64_t N = ct_.it74a[static_cast<size_t>(q.d)] - ct_.it74c[static_cast<size_t>(q.d)] +
                         ct_.it74d[static_cast<size_t>(q.d)];
        std::int64_t S = ct_.it74b[static_cast<size_t>(q.d)] -
                         ct_.it74c[static_cast<size_t>(q.d)] * static_cast<std::int64_t>(q.v) +
                         ct_.it74d[static_cast<size_t>(q.d)] * static_cast<std::int64_t>(q.u);
        std::int64_t Np = sp_.bpCount[static_cast<size_t>(q.d)] - N -
                          sp_.bpCount[static_cast<size_t>(q.c)];
        std::int64_t Sp = sp_.sumY[static_cast<size_t>(q.d)] - S -
                          sp_.sumY[static_cast<size_t>(q.c)];
        if (mut(testing::kMutCount74, Sp > Np * static_cast<std::int64_t>(q.u))) q.edgeAB();
        return;
    }
    hit(CNT_74_MD_C);
    CbResult cb = cb_check_apex_in_c(q);
    if (cb.connected) q.edgeBC();
    Vertex h1 = sp_.high1[static_cast<size_t>(dp)], h2 = sp_.high2[static_cast<size_t>(dp)];
    if (q.inC(h1))
        q.edgeAC();
    else if (q.inB(h1) || (h1 == q.v && q.inB(h2)))
        q.edgeAB();
}

void Oracle::seven_mc_w(Ctx& q) const {
    const DfsTree& t = tg_.tree;
    Vertex I = ct_.hmFirst[static_cast<size_t>(q.c)];
    Vertex II = ct_.hmSecond[static_cast<size_t>(q.c)];
    Vertex III = ct_.hmThird[static_cast<size_t>(q.c)];
    bool iInC = mut(testing::kMutMwC, q.inC(I));
    auto abTriple = [&] { return q.inB(I) || q.inB(II) || q.inB(III); };
    Vertex Md = ep_.apex[static_cast<size_t>(q.d)];
    if (Md == q.w) {
        hit(CNT_75_MD_W);
        auto [zL, zR] = chain_query(ct_, true, q.c, q.d, ep_, t);
        (void)zR;
        bool cb = false;
        if (zL != kNone) cb = q.inC(sp_.high1[static_cast<size_t>(t.child_toward(q.w, zL))]);
        if (cb) q.edgeBC();
        if (iInC) {
            q.edgeAC();
            if (!cb) {
                hit(CNT_75_LOWROUTE);
                auto [z2, z2r] = chain_query(ct_, false, q.c, q.d, ep_, t);
                (void)z2r;
                if (z2 != kNone &&
                    q.inA(sp_.low1[static_cast<size_t>(t.child_toward(q.w, z2))]))
                    q.edgeAB();
            }
        } else if (abTriple()) {
            q.edgeAB();
        }
        return;
    }
    hit(CNT_75_MD_C);
    CbResult cb = cb_check_apex_in_c(q);
    if (cb.connected) q.edgeBC();
    if (iInC) {
        q.edgeAC();
        if (!cb.connected) {
            hit(CNT_75_LOWROUTE);
            Vertex Ltl = cb.usedLeft ? ct_.segLhd_L_li[static_cast<size_t>(q.d)]
                                     : ct_.segRhd_L_li[static_cast<size_t>(q.d)];
            if (Ltl != kNone) {
                if (q.inC(Ltl)) {
                    q.edgeBC();
                } else if (q.inA(sp_.low1[static_cast<size_t>(t.child_toward(q.w, Ltl))])) {
                    q.edgeAB();
                }
            }
        }
    } else if (abTriple()) {
        q.edgeAB();
    }
}

void Oracle::seven_mc_c(Ctx& q) const {
    const DfsTree& t = tg_.tree;
    q.edgeAC();
    Vertex Mc = ep_.apex[static_cast<size_t>(q.c)];
    Vertex Md = ep_.apex[static_cast<size_t>(q.d)];
    auto hdLiFlow = [&](Vertex Lh, Vertex Rh, Vertex Ll) {
        if (Lh == kNone) return;
        if (q.inC(Lh) || q.inC(Rh)) {
            q.edgeBC();
            return;
        }
        Vertex dp = t.child_toward(q.w, Lh);
        if (q.inC(sp_.high1[static_cast<size_t>(dp)])) {
            q.edgeBC();
            return;
        }
        if (Ll == kNone) return;
        if (q.inC(Ll)) {
            q.edgeBC();
            return;
        }
        Vertex dpp = t.child_toward(q.w, Ll);
        if (q.inA(sp_.low1[static_cast<size_t>(dpp)])) q.edgeAB();
    };
    if (Md == Mc) {
        hit(CNT_76_SAME);
        auto [Lh, Rh] = chain_query(ct_, true, q.c, q.d, ep_, t);
        auto [Ll, Rl] = chain_query(ct_, false, q.c, q.d, ep_, t);
        (void)Rl;
        hdLiFlow(Lh, Rh, Ll);
        return;
    }
    hit(CNT_76_UPPER);
    Vertex Rli = ep_.rightLow[static_cast<size_t>(q.d)];
    if (sp_.l1[static_cast<size_t>(Rli)] == q.u) {
        hit(CNT_76_ANCHOR_U);
        hdLiFlow(ct_.segRli_L_hd[static_cast<size_t>(q.d)],
                 ct_.segRli_R_hd[static_cast<size_t>(q.d)],
                 ct_.segRli_L_li[static_cast<size_t>(q.d)]);
        return;
    }
    if (q.inC(Rli)) {  // its lowest endpoint lands between u and v
        q.edgeBC();
        return;
    }
    Vertex cpp = ct_.lowChild2[static_cast<size_t>(Md)];
    if (sp_.low1[static_cast<size_t>(cpp)] == q.u) {
        hit(CNT_76_LOW_U);
        hdLiFlow(ct_.segC2_L_hd[static_cast<size_t>(q.d)], ct_.segC2_R_hd[static_cast<size_t>(q.d)],
                 ct_.segC2_L_li[static_cast<size_t>(q.d)]);
        return;
    }
    if (mut(testing::kMutSiblingNotAnc, !t.is_ancestor(cpp, q.w))) {
        hit(CNT_76_SIB_OUT);
        q.edgeBC();  // the second child's lowest edge lands between u and v
        return;
    }
    Vertex Lt = ct_.sub2L_hd[static_cast<size_t>(q.d)], Rt = ct_.sub2R_hd[static_cast<size_t>(q.d)];
    if (q.inC(Lt) || q.inC(Rt)) {
        q.edgeBC();
        return;
    }
    Vertex d0l = t.child_toward(q.w, Lt), d0r = t.child_toward(q.w, Rt);
    if (q.inC(sp_.high1[static_cast<size_t>(d0l)])) {
        q.edgeBC();
        return;
    }
    std::int64_t N, S;
    if (d0l == d0r) {
        hit(CNT_76_COUNT_SAME);
        if (sp_.high1[static_cast<size_t>(d0l)] == q.v) {
            N = sp_.bpCount[static_cast<size_t>(d0l)] - sp_.numHigh[static_cast<size_t>(d0l)];
            S = sp_.sumY[static_cast<size_t>(d0l)] -
                sp_.numHigh[static_cast<size_t>(d0l)] * static_cast<std::int64_t>(q.v);
        } else {
            N = sp_.bpCount[static_cast<size_t>(d0l)];
            S = sp_.sumY[static_cast<size_t>(d0l)];
        }
    } else {
        hit(CNT_76_COUNT_DIFF);
        N = ct_.it76a[static_cast<size_t>(q.d)] - ct_.it76c[static_cast<size_t>(q.d)];
        S = ct_.it76b[static_cast<size_t>(q.d)] -
            ct_.it76c[static_cast<size_t>(q.d)] * static_cast<std::int64_t>(q.v);
    }
    std::int64_t Np = sp_.bpCount[static_cast<size_t>(q.d)] -
                      sp_.bpCount[static_cast<size_t>(q.c)] - N;
    std::int64_t Sp = sp_.sumY[static_cast<size_t>(q.d)] - sp_.sumY[static_cast<size_t>(q.c)] - S;
    if (mut(testing::kMutCount76, Sp > Np * static_cast<std::int64_t>(q.u))) q.edgeBC();
}

void Oracle::seven(Ctx& q) const {
    const DfsTree& t = tg_.tree;
    Vertex Mc = ep_.apex[static_cast<size_t>(q.c)];
    if (Mc == kNone) {
        hit(CNT_71);
        attach_c(q, Attach::BOnly,
                 {CNT_71_MD_NONE, CNT_71_MD_CHILD, CNT_71_MD_W, CNT_71_MD_C});
    } else if (q.inB(Mc)) {
        hit(CNT_72);
        q.edgeAB();
        attach_c(q, Attach::Both,
                 {CNT_72_MD_NONE, CNT_72_MD_CHILD, CNT_72_MD_W, CNT_72_MD_C});
    } else if (Mc == q.v) {
        hit(CNT_73);
        seven_mc_v(q);
    } else if (q.inC(Mc)) {
        hit(CNT_76);
        seven_mc_c(q);
    } else if (Mc == q.w) {
        hit(CNT_75);
        seven_mc_w(q);
    } else if (t.is_ancestor(q.w, Mc)) {
        hit(CNT_74);
        seven_mc_desc_w(q);
    } else {
        // the apex sits in a subtree hanging off v; only that subtree can
        // reach A, and nothing from T(d) lands below u
        hit(CNT_7_HANGING);
        Vertex e = t.child_toward(q.v, Mc);
        if (q.inB(sp_.high1[static_cast<size_t>(e)])) q.edgeAB();
        attach_c(q, Attach::BOnly,
                 {CNT_71_MD_NONE, CNT_71_MD_CHILD, CNT_71_MD_W, CNT_71_MD_C});
    }
}

FailureContext Oracle::resolve(const std::vector<Vertex>& failures) const {
    const DfsTree& t = tg_.tree;
    if (failures.empty() || failures.size() > 3)
        throw QueryError("failure set must contain 1..3 vertices");
    FailureContext fc;
    fc.k = static_cast<int>(failures.size());
    for (int i = 0; i < fc.k; ++i) {
        Vertex orig = failures[static_cast<size_t>(i)];
        if (orig < 1 || orig > g_.n) throw QueryError("failed vertex out of range");
        fc.f[static_cast<size_t>(i)] = tg_.toTree[static_cast<size_t>(orig)];
    }
    std::sort(fc.f.begin(), fc.f.begin() + fc.k);
    for (int i = 1; i < fc.k; ++i)
        if (fc.f[static_cast<size_t>(i)] == fc.f[static_cast<size_t>(i) - 1])
            throw QueryError("failed vertices must be distinct");

    auto addComp = [&](Vertex root, std::int64_t size) {
        fc.compRoot[static_cast<size_t>(fc.compCount)] = root;
        fc.compSize[static_cast<size_t>(fc.compCount)] = size;
        ++fc.compCount;
    };
    std::int64_t total = t.n;
    Vertex f0 = fc.f[0], f1 = fc.f[1], f2 = fc.f[2];
    if (fc.k == 1) {
        hit(CNT_F1);
        addComp(1, total - t.nd[static_cast<size_t>(f0)]);
    } else if (fc.k == 2) {
        if (t.is_ancestor(f0, f1)) {
            hit(CNT_F2_REL);
            Vertex c = t.child_toward(f0, f1);
            addComp(1, total - t.nd[static_cast<size_t>(f0)]);
            addComp(c, t.nd[static_cast<size_t>(c)] - t.nd[static_cast<size_t>(f1)]);
            if (pair_check(f0, f1)) fc.edges |= 1;
        } else {
            hit(CNT_F2_UNREL);
            addComp(1, total - t.nd[static_cast<size_t>(f0)] - t.nd[static_cast<size_t>(f1)]);
        }
    } else {
        bool a01 = t.is_ancestor(f0, f1);
        bool a02 = t.is_ancestor(f0, f2);
        bool a12 = t.is_ancestor(f1, f2);
        int pairs = static_cast<int>(a01) + static_cast<int>(a02) + static_cast<int>(a12);
        if (pairs == 0) {
            hit(CNT_F3_NONE);
            addComp(1, total - t.nd[static_cast<size_t>(f0)] - t.nd[static_cast<size_t>(f1)] -
                           t.nd[static_cast<size_t>(f2)]);
        } else if (pairs == 1) {
            hit(CNT_F3_ONEPAIR);
            Vertex u, v, other;
            if (a01) {
                u = f0; v = f1; other = f2;
            } else if (a02) {
                u = f0; v = f2; other = f1;
            } else {
                u = f1; v = f2; other = f0;
            }
            Vertex c = t.child_toward(u, v);
            addComp(1, total - t.nd[static_cast<size_t>(u)] - t.nd[static_cast<size_t>(other)]);
            addComp(c, t.nd[static_cast<size_t>(c)] - t.nd[static_cast<size_t>(v)]);
            if (pair_check(u, v)) fc.edges |= 1;
        } else if (pairs == 2) {
            // f0 is an ancestor of both others; they are unrelated
            Vertex c = t.child_toward(f0, f1);
            Vertex cp = t.child_toward(f0, f2);
            if (c != cp) {
                hit(CNT_F3_FORK);
                addComp(1, total - t.nd[static_cast<size_t>(f0)]);
                addComp(c, t.nd[static_cast<size_t>(c)] - t.nd[static_cast<size_t>(f1)]);
                addComp(cp, t.nd[static_cast<size_t>(cp)] - t.nd[static_cast<size_t>(f2)]);
                if (pair_check(f0, f1)) fc.edges |= 1;
                if (pair_check(f0, f2)) fc.edges |= 2;
            } else {
                hit(CNT_F3_FORKSAME);
                addComp(1, total - t.nd[static_cast<size_t>(f0)]);
                addComp(c, t.nd[static_cast<size_t>(c)] - t.nd[static_cast<size_t>(f1)] -
                               t.nd[static_cast<size_t>(f2)]);
                if (fork_same_check(f0, f1, f2, c)) fc.edges |= 1;
            }
        } else {
            hit(CNT_F3_CHAIN);
            Vertex c = t.child_toward(f0, f1);
            Vertex d = t.child_toward(f1, f2);
            addComp(1, total - t.nd[static_cast<size_t>(f0)]);
            addComp(c, t.nd[static_cast<size_t>(c)] - t.nd[static_cast<size_t>(f1)]);
            addComp(d, t.nd[static_cast<size_t>(d)] - t.nd[static_cast<size_t>(f2)]);
            Ctx q{fc, t, f0, f1, f2, c, d};
            seven(q);
        }
    }

    for (int i = 0; i < fc.compCount; ++i) fc.rep[static_cast<size_t>(i)] = i;
    auto join = [&](int a, int b) {
        int ra = fc.rep[static_cast<size_t>(a)], rb = fc.rep[static_cast<size_t>(b)];
        if (ra == rb) return;
        for (int i = 0; i < fc.compCount; ++i)
            if (fc.rep[static_cast<size_t>(i)] == rb) fc.rep[static_cast<size_t>(i)] = ra;
    };
    if (fc.edges & 1) join(0, 1);
    if ((fc.edges & 2) && fc.compCount > 2) join(0, 2);
    if ((fc.edges & 4) && fc.compCount > 2) join(1, 2);
    return fc;
}

ComponentRef Oracle::locate(const FailureContext& fc, Vertex x) const {
    const DfsTree& t = tg_.tree;
    if (x < 1 || x > g_.n) throw QueryError("vertex out of range");
    Vertex xb = tg_.toTree[static_cast<size_t>(x)];
    Vertex deepest = kNone;
    for (int i = 0; i < fc.k; ++i) {
        Vertex f = fc.f[static_cast<size_t>(i)];
        if (f == xb) throw QueryError("queried vertex is failed");
        if (t.is_ancestor(f, xb) && f > deepest) deepest = f;
    }
    auto compOf = [&](Vertex root) {
        for (int i = 0; i < fc.compCount; ++i)
            if (fc.compRoot[static_cast<size_t>(i)] == root)
                return ComponentRef{true, static_cast<Vertex>(fc.rep[static_cast<size_t>(i)])};
        throw QueryError("internal component lookup failed");
    };
    auto internalRootFor = [&](Vertex y) {
        Vertex deep = kNone;
        for (int i = 0; i < fc.k; ++i) {
            Vertex f = fc.f[static_cast<size_t>(i)];
            if (t.is_ancestor(f, y) && f > deep) deep = f;
        }
        return deep == kNone ? Vertex{1} : t.child_toward(deep, y);
    };
    if (deepest == kNone) return compOf(1);
    Vertex rho = t.child_toward(deepest, xb);
    bool internal = false;
    for (int i = 0; i < fc.k; ++i)
        if (t.is_ancestor(rho, fc.f[static_cast<size_t>(i)])) internal = true;
    if (internal) return compOf(rho);
    for (Vertex s : {sp_.low1[static_cast<size_t>(rho)], sp_.low2[static_cast<size_t>(rho)],
                     sp_.low3[static_cast<size_t>(rho)]}) {
        if (s == kNone) break;
        bool failed = false;
        for (int i = 0; i < fc.k; ++i) failed |= fc.f[static_cast<size_t>(i)] == s;
        if (failed) continue;
        return compOf(internalRootFor(s));
    }
    return ComponentRef{false, rho};
}

bool Oracle::connected(const std::vector<Vertex>& failures, Vertex x, Vertex y) const {
    FailureContext fc = resolve(failures);
    if (x == y) {
        ComponentRef r = locate(fc, x);  // validates x
        (void)r;
        return true;
    }
    return locate(fc, x) == locate(fc, y);
}

std::int64_t Oracle::count_components(const std::vector<Vertex>& failures) const {
    const DfsTree& t = tg_.tree;
    FailureContext fc = resolve(failures);
    bool seen[3] = {false, false, false};
    std::int64_t groups = 0;
    for (int i = 0; i < fc.compCount; ++i) {
        if (fc.compSize[static_cast<size_t>(i)] <= 1) continue;  // lone auxiliary vertex
        int r = fc.rep[static_cast<size_t>(i)];
        if (!seen[r]) {
            seen[r] = true;
            ++groups;
        }
    }

    std::int64_t isolated = 0;
    const Vertex inf = t.n + 2;
    auto key = [&](Vertex child, int slot) {
        Vertex k = slot == 0 ? sp_.low1[static_cast<size_t>(child)]
                   : slot == 1 ? sp_.low2[static_cast<size_t>(child)]
                               : sp_.low3[static_cast<size_t>(child)];
        return k == kNone ? inf : k;
    };
    for (int i = 0; i < fc.k; ++i) {
        Vertex f = fc.f[static_cast<size_t>(i)];
        Vertex anc[2];
        int na = 0;
        for (int j = 0; j < fc.k; ++j) {
            Vertex g = fc.f[static_cast<size_t>(j)];
            if (g != f && t.is_ancestor(g, f)) anc[na++] = g;
        }
        std::sort(anc, anc + na);
        std::int64_t segBase = ct_.sortHead[static_cast<size_t>(f)];
        std::int64_t segLen = ct_.realChildCount[static_cast<size_t>(f)];
        if (segLen == 0) continue;
        for (int mask = 0; mask < (1 << na); ++mask) {
            Vertex target[3] = {inf, inf, inf};
            int tn = 0;
            for (int b = 0; b < na; ++b)
                if (mask & (1 << b)) target[tn++] = anc[b];
            auto cmp = [&](std::int64_t idx) {  // -1 below, 0 equal, +1 above target
                Vertex child = ct_.sortList[static_cast<size_t>(segBase + idx)];
                for (int s = 0; s < 3; ++s) {
                    Vertex k = key(child, s);
                    if (k != target[s]) return k < target[s] ? -1 : 1;
                }
                return 0;
            };
            std::int64_t lo = 0, hi = segLen;
            while (lo < hi) {  // first index with cmp >= 0
                std::int64_t mid = (lo + hi) / 2;
                if (cmp(mid) < 0)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            std::int64_t first = lo;
            hi = segLen;
            while (lo < hi) {  // first index with cmp > 0
                std::int64_t mid = (lo + hi) / 2;
                if (cmp(mid) <= 0)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            std::int64_t cnt = lo - first;
            if (cnt == 0) continue;
            const std::int64_t segEnd = first + cnt;
            // drop children leading to failed descendants of f
            Vertex dropped[2] = {kNone, kNone};
            for (int j = 0; j < fc.k; ++j) {
                Vertex g = fc.f[static_cast<size_t>(j)];
                if (g == f || !t.is_ancestor(f, g)) continue;
                Vertex cg = t.child_toward(f, g);
                if (cg == dropped[0] || cg == dropped[1]) continue;
                std::int64_t pos = ct_.posInParent[static_cast<size_t>(cg)];
                if (pos >= first && pos < segEnd) {
                    dropped[dropped[0] == kNone ? 0 : 1] = cg;
                    --cnt;
                }
            }
            isolated += cnt;
        }
    }
    return groups + isolated;
}

bool Oracle::is_cut(const std::vector<Vertex>& failures) const {
    return count_components(failures) > 1;
}

std::int64_t Oracle::table_words() const {
    auto vec32 = [](const auto& v) { return static_cast<std::int64_t>(v.size()); };
    std::int64_t w = ct_.words();
    w += vec32(sp_.l1) + vec32(sp_.l2) + vec32(sp_.low1) + vec32(sp_.low2) + vec32(sp_.low3) +
         vec32(sp_.high1) + vec32(sp_.high2) + 2 * (vec32(sp_.bpCount) + vec32(sp_.sumY) +
                                                     vec32(sp_.numLow) + vec32(sp_.numHigh));
    w += vec32(ep_.leftBase) + vec32(ep_.rightBase) + vec32(ep_.leftLow) + vec32(ep_.rightLow) +
         vec32(ep_.leftHigh) + vec32(ep_.rightHigh) + vec32(ep_.apex) + vec32(ep_.apexParent);
    for (const TreeView* vw : {&views_.lowInc, &views_.highDec}) {
        w += vec32(vw->toBase) + vec32(vw->toView) + vec32(vw->parent) + vec32(vw->nd) +
             vec32(vw->depth) + vec32(vw->childHead) + vec32(vw->childList) +
             2 * static_cast<std::int64_t>(vw->edges.size());
    }
    const DfsTree& t = tg_.tree;
    w += vec32(t.parent) + vec32(t.nd) + vec32(t.depth) + vec32(t.childHead) + vec32(t.childList) +
         2 * static_cast<std::int64_t>(t.edges.size()) + 2 * vec32(t.inHead) + vec32(t.inList);
    return w;
}

std::vector<std::uint64_t> Oracle::counter_snapshot() const {
    std::vector<std::uint64_t> out(CNT_TOTAL);
    for (int i = 0; i < CNT_TOTAL; ++i)
        out[static_cast<size_t>(i)] = counters_[static_cast<size_t>(i)].load(std::memory_order_relaxed);
    return out;
}

void Oracle::reset_counters() const {
    for (auto& c : counters_) c.store(0, std::memory_order_relaxed);
}

}  // namespace conn3
