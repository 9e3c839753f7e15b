#pragma once

#include "conn3/common.hpp"

namespace conn3 {

/// Union-find with a per-set payload vertex (the "representative" the batch
/// algorithms walk to). find() answers change only at unite(), which also
/// rewrites the payload of the merged set. Operation counter backs the
/// amortized-work assertions in the tests.
class RootedDsu {
public:
    explicit RootedDsu(Vertex n) : link_(static_cast<size_t>(n) + 1, -1),
                                   payload_(static_cast<size_t>(n) + 1, 0) {
        for (Vertex v = 0; v <= n; ++v) payload_[static_cast<size_t>(v)] = v;
    }

    Vertex find(Vertex v) {
        ++ops_;
        Vertex r = v;
        while (link_[static_cast<size_t>(r)] >= 0) r = link_[static_cast<size_t>(r)];
        while (link_[static_cast<size_t>(v)] >= 0) {
            Vertex next = link_[static_cast<size_t>(v)];
            link_[static_cast<size_t>(v)] = r;
            v = next;
        }
        return r;
    }

    Vertex representative(Vertex v) { return payload_[static_cast<size_t>(find(v))]; }

    void set_representative(Vertex v, Vertex rep) { payload_[static_cast<size_t>(find(v))] = rep; }

    /// Merges the sets of a and b; the merged set's payload must be set anew.
    void unite(Vertex a, Vertex b) {
        ++ops_;
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (link_[static_cast<size_t>(a)] > link_[static_cast<size_t>(b)]) std::swap(a, b);
        link_[static_cast<size_t>(a)] += link_[static_cast<size_t>(b)];
        link_[static_cast<size_t>(b)] = a;
    }

    std::int64_t operations() const { return ops_; }

private:
    std::vector<Vertex> link_;  // negative size at roots, parent otherwise
    std::vector<Vertex> payload_;
    std::int64_t ops_ = 0;
};

}  // namespace conn3
