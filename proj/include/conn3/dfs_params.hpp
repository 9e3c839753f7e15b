#pragma once

#include "conn3/dfs.hpp"

namespace conn3 {

/// Per-vertex parameters of the "leap set" of a vertex v: the back-edges (x,y)
/// with x in T(v) and y < parent(v). All vertex-valued fields hold base ids
/// (they are invariant across permutations of the base tree); 0 = undefined.
struct ScalarParams {
    std::vector<Vertex> l1, l2;            // two lowest distinct endpoints of edges stemming from v
    std::vector<Vertex> low1, low2, low3;  // three lowest distinct leap-set endpoints
    std::vector<Vertex> high1, high2;      // two highest distinct leap-set endpoints
    std::vector<std::int64_t> bpCount;     // leap-set size
    std::vector<std::int64_t> sumY;        // sum of leap-set endpoints (as base ids)
    std::vector<std::int64_t> numLow;      // edges landing exactly on low1
    std::vector<std::int64_t> numHigh;     // edges landing exactly on high1
};

ScalarParams compute_scalar_params(const DfsTree& t);

/// Extreme providers of the leap set, per view (stored as base ids), plus the
/// apex = nca of the two extremes (view-invariant, as is the chain of vertices
/// sharing an apex, so apexParent is stored once).
struct ExtremePoints {
    std::vector<Vertex> leftBase, rightBase;
    std::vector<Vertex> leftLow, rightLow;    // on the lowInc view
    std::vector<Vertex> leftHigh, rightHigh;  // on the highDec view
    std::vector<Vertex> apex;
    std::vector<Vertex> apexParent;  // nearest proper ancestor with the same apex
};

ExtremePoints compute_extreme_points(const DfsForestViews& views, const ScalarParams& sp);

/// l1 values translated into a view's numbering (index and value in view ids).
std::vector<Vertex> l1_in_view(const TreeView& view, const std::vector<Vertex>& l1Base);

}  // namespace conn3
