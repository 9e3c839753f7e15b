#include "conn3/tree_oracles.hpp"

#include <algorithm>

namespace conn3 {

LevelAncestorIndex::LevelAncestorIndex(const DfsTree& t) : tree_(&t) {
    levels_ = 1;
    Vertex maxDepth = 0;
    for (Vertex v = 1; v <= t.n; ++v) maxDepth = std::max(maxDepth, t.depth[static_cast<size_t>(v)]);
    while ((1 << levels_) <= std::max<Vertex>(maxDepth, 1)) ++levels_;
    up_.assign(static_cast<size_t>(levels_), std::vector<Vertex>(static_cast<size_t>(t.n) + 1, 0));
    up_[0] = t.parent;
    for (int k = 1; k < levels_; ++k)
        for (Vertex v = 1; v <= t.n; ++v)
            up_[static_cast<size_t>(k)][static_cast<size_t>(v)] =
                up_[static_cast<size_t>(k) - 1]
                   [static_cast<size_t>(up_[static_cast<size_t>(k) - 1][static_cast<size_t>(v)])];
}

Vertex LevelAncestorIndex::query(Vertex v, Vertex d) const {
    Vertex dv = tree_->depth[static_cast<size_t>(v)];
    if (d < 0 || d > dv) throw QueryError("level_ancestor: depth out of range");
    Vertex delta = dv - d;
    for (int k = 0; delta; ++k, delta >>= 1)
        if (delta & 1) v = up_[static_cast<size_t>(k)][static_cast<size_t>(v)];
    return v;
}

Vertex LevelAncestorIndex::nca(Vertex u, Vertex v) const {
    if (tree_->is_ancestor(u, v)) return u;
    if (tree_->is_ancestor(v, u)) return v;
    Vertex d = std::min(tree_->depth[static_cast<size_t>(u)], tree_->depth[static_cast<size_t>(v)]);
    u = query(u, d);
    v = query(v, d);
    for (int k = levels_ - 1; k >= 0; --k) {
        Vertex uu = up_[static_cast<size_t>(k)][static_cast<size_t>(u)];
        Vertex vv = up_[static_cast<size_t>(k)][static_cast<size_t>(v)];
        if (uu != vv) {
            u = uu;
            v = vv;
        }
    }
    return tree_->parent[static_cast<size_t>(u)];
}

RmqIndex::RmqIndex(std::vector<Vertex> values, bool maximum)
    : values_(std::move(values)), maximum_(maximum) {
    std::int64_t n = static_cast<std::int64_t>(values_.size());
    int levels = 1;
    while ((1 << levels) <= n) ++levels;
    table_.assign(static_cast<size_t>(levels), {});
    table_[0].resize(static_cast<size_t>(std::max<std::int64_t>(n, 1)));
    for (std::int64_t i = 0; i < n; ++i) table_[0][static_cast<size_t>(i)] = static_cast<std::int32_t>(i);
    for (int k = 1; k < levels; ++k) {
        std::int64_t len = n - (1LL << k) + 1;
        if (len <= 0) break;
        table_[static_cast<size_t>(k)].resize(static_cast<size_t>(len));
        for (std::int64_t i = 0; i < len; ++i) {
            std::int32_t a = table_[static_cast<size_t>(k) - 1][static_cast<size_t>(i)];
            std::int32_t b =
                table_[static_cast<size_t>(k) - 1][static_cast<size_t>(i + (1LL << (k - 1)))];
            table_[static_cast<size_t>(k)][static_cast<size_t>(i)] = better(a, b) ? a : b;
        }
    }
}

bool RmqIndex::better(std::int64_t a, std::int64_t b) const {
    Vertex va = values_[static_cast<size_t>(a)], vb = values_[static_cast<size_t>(b)];
    if (va != vb) return maximum_ ? va > vb : va < vb;
    return a < b;
}

std::int64_t RmqIndex::query(std::int64_t i, std::int64_t j) const {
    if (i > j || i < 0 || j >= static_cast<std::int64_t>(values_.size()))
        throw QueryError("rmq: bad range");
    int k = 0;
    while ((1LL << (k + 1)) <= j - i + 1) ++k;
    std::int32_t a = table_[static_cast<size_t>(k)][static_cast<size_t>(i)];
    std::int32_t b = table_[static_cast<size_t>(k)][static_cast<size_t>(j - (1LL << k) + 1)];
    return better(a, b) ? a : b;
}

NcaIndex::NcaIndex(const DfsTree& t) {
    euler_.reserve(static_cast<size_t>(2) * t.n);
    firstAt_.assign(static_cast<size_t>(t.n) + 1, -1);
    std::vector<Vertex> depths;
    depths.reserve(static_cast<size_t>(2) * t.n);
    std::vector<Vertex> head(t.childHead.begin(), t.childHead.end());
    std::vector<Vertex> stack{1};
    while (!stack.empty()) {
        Vertex v = stack.back();
        if (firstAt_[static_cast<size_t>(v)] < 0)
            firstAt_[static_cast<size_t>(v)] = static_cast<Vertex>(euler_.size());
        euler_.push_back(v);
        depths.push_back(t.depth[static_cast<size_t>(v)]);
        if (head[static_cast<size_t>(v)] == t.childHead[static_cast<size_t>(v) + 1]) {
            stack.pop_back();
            continue;
        }
        stack.push_back(t.childList[static_cast<size_t>(head[static_cast<size_t>(v)]++)]);
    }
    rmq_ = RmqIndex(std::move(depths));
}

Vertex NcaIndex::query(Vertex u, Vertex v) const {
    std::int64_t i = firstAt_[static_cast<size_t>(u)], j = firstAt_[static_cast<size_t>(v)];
    if (i > j) std::swap(i, j);
    return euler_[static_cast<size_t>(rmq_.query(i, j))];
}

}  // namespace conn3
