#pragma once

#include <utility>

#include "conn3/dfs_params.hpp"
#include "conn3/transform.hpp"
#include "conn3/tree_oracles.hpp"

namespace conn3 {

/// All per-vertex tables the failure-resolution case analysis reads. Vertex
/// values are base ids (0 = none) unless a comment says otherwise; every table
/// is O(1) words per vertex.
struct CaseTables {
    // children sorted lexicographically by (low1, low2, low3) with none-last;
    // back-edge split leaves form a trailing segment of length total-realCount
    std::vector<Vertex> sortHead, sortList;
    std::vector<Vertex> realChildCount;
    std::vector<Vertex> posInParent;  // index of a child inside its parent's sorted list

    // first three children on lowInc; uniqueLowChild set iff the first child's
    // low1 is defined and strictly lowest among the children
    std::vector<Vertex> lowChild1, lowChild2, lowChild3;
    std::vector<Vertex> uniqueLowChild;

    // per d with apex w = apex(d): over children of w with high1 in T[parent(w), d]:
    // lowest low1, second-lowest distinct low1, lowest low2, attaining children,
    // and the two children with smallest low1 (multiset, for the pair test)
    std::vector<Vertex> tlFirst, tlSecond, tlThird, tlFirstChild, tlSecondChild;
    std::vector<Vertex> tlxFirst, tlxSecond, tlxThird;  // same, skipping uniqueLowChild(w)
    std::vector<Vertex> pairChildA, pairChildB;

    // per c with apex w: over children of w with low1 below parent(c):
    // greatest high1, second-greatest distinct high1, greatest high2
    std::vector<Vertex> hmFirst, hmSecond, hmThird;

    // unique child dHat of apex(c) with high1 in T[parent(apex(c)), c] and
    // low1 below parent(c); segment extremes of T(dHat) into that high segment
    // and leap-set extremes of c inside T(dHat), per view
    std::vector<Vertex> dHat;
    std::vector<Vertex> segDhatL_hd, segDhatR_hd, segDhatL_li, segDhatR_li;
    std::vector<Vertex> subDhatL_hd, subDhatR_hd, subDhatL_li, subDhatR_li;
    std::vector<Vertex> haFirst, haSecond, haThird;  // like hm*, over children of
                                                     // nca(subDhatL_li, subDhatR_li)

    // segment extremes of T(d) into T[parent(parent(d)), c_d] where c_d is the
    // child of the anchor toward d; one family per anchor choice
    std::vector<Vertex> segLhd_L_hd, segLhd_R_hd, segLhd_L_li, segLhd_R_li;  // anchor l1(leftHigh(d))
    std::vector<Vertex> segRhd_L_hd, segRhd_R_hd, segRhd_L_li, segRhd_R_li;  // anchor l1(rightHigh(d))
    std::vector<Vertex> segRli_L_hd, segRli_R_hd, segRli_L_li, segRli_R_li;  // anchor l1(rightLow(d))
    std::vector<Vertex> segC2_L_hd, segC2_R_hd, segC2_L_li, segC2_R_li;      // anchor low1(second
                                                                             // lowInc child of apex(d))

    // skipping points of d avoiding l1(leftHigh(d)) / l1(rightHigh(d)), highDec
    std::vector<Vertex> skipL_L, skipL_R, skipR_L, skipR_R;

    // leap-set extremes of d inside the second lowInc child of apex(d), highDec
    std::vector<Vertex> sub2L_hd, sub2R_hd;

    // counting items over children of apex(d) (74*) / of w76 = nca of the sub2
    // extremes (76*): leap counts, endpoint sums, edges landing on parent(d),
    // and numLow over the high-segment children minus uniqueLowChild
    std::vector<std::int64_t> it74a, it74b, it74c, it74d;
    std::vector<std::int64_t> it76a, it76b, it76c;
    std::vector<Vertex> w76;

    // leap extremes of c inside the first two lowInc children of apex(c), on
    // highDec; valid iff at least two children of apex(c) have low1 < parent(c)
    std::vector<char> ftValid;
    std::vector<Vertex> ftL1, ftR1, ftL2, ftR2;

    /// Constant-time oracle: for apex(c) = apex(d), c < parent(d), the extreme
    /// descendants of d with a back-edge into T[parent(parent(d)), c].
    struct ChainOracle {
        const TreeView* view = nullptr;
        std::vector<Vertex> batchL, batchR;  // view ids; per d with apexParent(d) < parent(d)
        std::vector<Vertex> tickL, tickR;    // view ids; edges landing exactly on parent(d)
        std::vector<std::int64_t> chainIndex;  // per vertex: position in its apex chain; -1
        std::vector<std::int64_t> entryAt;     // per vertex: offset of its entry in arr; -1
        RmqIndex rmqL, rmqR;                   // over combined entries (min uses n+2 as "none")
        Vertex none = 0;                       // sentinel used inside rmqL

        std::pair<Vertex, Vertex> query(Vertex cBase, Vertex dBase, const ExtremePoints& ep,
                                        const DfsTree& base) const;
    };
    ChainOracle chainLow, chainHigh;

    std::int64_t words() const;
};

/// kinds may be null (plain test trees): then every child counts as sortable.
CaseTables build_case_tables(const DfsForestViews& views, const ScalarParams& sp,
                             const ExtremePoints& ep,
                             const std::vector<VertexKind>* kinds = nullptr);

/// Extreme descendants of d with a back-edge into T[parent(parent(d)), c], on
/// the requested view; pre apex(c) = apex(d) != none and c < parent(d).
std::pair<Vertex, Vertex> chain_query(const CaseTables& ct, bool highDecView, Vertex c, Vertex d,
                                      const ExtremePoints& ep, const DfsTree& base);

}  // namespace conn3
