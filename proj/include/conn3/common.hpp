#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace conn3 {

// Vertices are dense 1-based ids; 0 is the "none" sentinel everywhere.
using Vertex = std::int32_t;
inline constexpr Vertex kNone = 0;

struct BackEdge {
    Vertex hi = kNone;  // deeper endpoint (larger DFS number in every view)
    Vertex lo = kNone;  // ancestor endpoint
};

// Domain errors surfaced to callers (bad failure sets, vertices out of range, ...).
class QueryError : public std::runtime_error {
public:
    explicit QueryError(const std::string& what) : std::runtime_error(what) {}
};

// Input errors (malformed files, disconnected graphs, ...).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace conn3
