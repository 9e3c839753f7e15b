#pragma once

#include "conn3/dfs.hpp"

namespace conn3 {

/// Level ancestors by binary lifting: query(v, d) = the ancestor of v at depth d.
class LevelAncestorIndex {
public:
    LevelAncestorIndex() = default;
    explicit LevelAncestorIndex(const DfsTree& t);

    Vertex query(Vertex v, Vertex d) const;
    Vertex nca(Vertex u, Vertex v) const;

private:
    const DfsTree* tree_ = nullptr;
    int levels_ = 0;
    std::vector<std::vector<Vertex>> up_;
};

/// Range minimum over a fixed array; ties break to the smallest index.
class RmqIndex {
public:
    RmqIndex() = default;
    explicit RmqIndex(std::vector<Vertex> values, bool maximum = false);

    /// Index of the extreme value in [i, j] (inclusive).
    std::int64_t query(std::int64_t i, std::int64_t j) const;
    Vertex value_at(std::int64_t i) const { return values_[static_cast<size_t>(i)]; }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
    std::int64_t words() const {
        std::int64_t w = static_cast<std::int64_t>(values_.size());
        for (const auto& row : table_) w += static_cast<std::int64_t>(row.size());
        return w;
    }

private:
    bool better(std::int64_t a, std::int64_t b) const;
    std::vector<Vertex> values_;
    bool maximum_ = false;
    std::vector<std::vector<std::int32_t>> table_;
};

/// Nearest common ancestors via an Euler tour + depth RMQ.
class NcaIndex {
public:
    NcaIndex() = default;
    explicit NcaIndex(const DfsTree& t);

    Vertex query(Vertex u, Vertex v) const;

private:
    std::vector<Vertex> euler_, firstAt_;
    RmqIndex rmq_;
};

}  // namespace conn3
