#pragma once

#include "conn3/dfs.hpp"

namespace conn3 {

/// Extreme descendant of d providing a back-edge that leaps over parent(v).
/// Pre: d in T(v). Answer: min (leftmost) or max x in T(d) with some back-edge
/// (x,y), y < parent(v); 0 if none.
struct SubtreeExtremeQuery {
    Vertex v = kNone;
    Vertex d = kNone;
    bool leftmost = true;
};

/// All ids in view numbering; l1v[x] = lowest back-edge endpoint from x itself
/// (0 if none). Offline DSU sweep over thresholds parent(v), O((n+Q) alpha).
std::vector<Vertex> batch_subtree_extremes(const TreeView& view, const std::vector<Vertex>& l1v,
                                           const std::vector<SubtreeExtremeQuery>& queries,
                                           std::int64_t* opsOut = nullptr);

/// Extreme descendant x of v with a back-edge (x,y), y < parent(v), y != z[v].
/// z[v] must be an ancestor of v or 0. One answer per vertex; 0 if none.
std::vector<Vertex> batch_skip_points(const TreeView& view, const std::vector<Vertex>& z,
                                      bool leftmost, std::int64_t* opsOut = nullptr);

/// Extreme descendant of z with a back-edge landing on the tree path T[u,v];
/// z in T(u), u in T(v). Batches must form a nested family (laminar segments;
/// containment only with the inner z an ancestor of the outer z, unless no
/// enclosing query can reach the inner segment).
struct SegmentQuery {
    Vertex z = kNone;
    Vertex u = kNone;  // deeper segment endpoint
    Vertex v = kNone;  // shallower segment endpoint (ancestor of u)
};

struct SegmentAnswers {
    std::vector<Vertex> left, right;  // per query; 0 if none
};

/// Forest over a laminar segment family: parent query = smallest strict
/// superset segment whose z is an ancestor; others are roots.
struct QueryForest {
    std::vector<std::int32_t> parentQuery;    // per query; -1 at roots
    std::vector<std::int32_t> vertexQuery;    // per vertex: smallest segment containing it; -1
};

QueryForest build_query_forest(const TreeView& view, const std::vector<SegmentQuery>& queries);

SegmentAnswers batch_segment_points(const TreeView& view, const std::vector<SegmentQuery>& queries,
                                    std::int64_t* opsOut = nullptr);

/// Quadratic nestedness check (debug/test only). Throws QueryError naming the
/// offending query pair.
void validate_nested(const TreeView& view, const std::vector<SegmentQuery>& queries);

}  // namespace conn3
