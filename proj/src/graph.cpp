#include "conn3/graph.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace conn3 {

void Graph::build_adjacency() {
    adjHead.assign(static_cast<size_t>(n) + 2, 0);
    for (const auto& [u, v] : edges) {
        ++adjHead[static_cast<size_t>(u) + 1];
        ++adjHead[static_cast<size_t>(v) + 1];
    }
    for (Vertex v = 1; v <= n; ++v) adjHead[static_cast<size_t>(v) + 1] += adjHead[v];
    adjVertex.assign(static_cast<size_t>(2) * edges.size(), 0);
    adjEdge.assign(adjVertex.size(), 0);
    std::vector<std::int64_t> cur(adjHead.begin(), adjHead.end());
    for (std::int32_t e = 0; e < static_cast<std::int32_t>(edges.size()); ++e) {
        auto [u, v] = edges[static_cast<size_t>(e)];
        adjVertex[static_cast<size_t>(cur[u])] = v;
        adjEdge[static_cast<size_t>(cur[u]++)] = e;
        adjVertex[static_cast<size_t>(cur[v])] = u;
        adjEdge[static_cast<size_t>(cur[v]++)] = e;
    }
}

Graph load_graph(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& rawEdges,
                 LoadStats* stats) {
    if (n < 1) throw InputError("graph must have at least one vertex");
    Graph g;
    g.n = n;
    LoadStats local;
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(rawEdges.size() * 2);
    for (auto [u, v] : rawEdges) {
        if (u < 1 || u > n || v < 1 || v > n)
            throw InputError("edge endpoint out of range: " + std::to_string(u) + " " +
                             std::to_string(v));
        if (u == v) {
            ++local.droppedSelfLoops;
            continue;
        }
        if (u > v) std::swap(u, v);
        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
        if (!seen.insert(key).second) {
            ++local.droppedParallel;
            continue;
        }
        g.edges.emplace_back(u, v);
    }
    g.build_adjacency();

    // Connectivity check (BFS from 1).
    std::vector<char> vis(static_cast<size_t>(n) + 1, 0);
    std::vector<Vertex> queue;
    queue.push_back(1);
    vis[1] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        Vertex v = queue[qi];
        for (std::int64_t it = g.adjHead[v]; it < g.adjHead[static_cast<size_t>(v) + 1]; ++it) {
            Vertex w = g.adjVertex[static_cast<size_t>(it)];
            if (!vis[w]) {
                vis[w] = 1;
                queue.push_back(w);
            }
        }
    }
    for (Vertex v = 1; v <= n; ++v)
        if (!vis[v])
            throw InputError("graph is disconnected: vertices 1 and " + std::to_string(v) +
                             " are not connected");
    if (stats) *stats = local;
    return g;
}

Graph read_graph(std::istream& in, LoadStats* stats) {
    Vertex n = -1;
    std::int64_t declaredM = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c" || tok[0] == '#') continue;
        if (tok == "p") {
            std::string kind;
            ls >> kind >> n >> declaredM;
            continue;
        }
        if (tok == "e") {
            Vertex u, v;
            if (!(ls >> u >> v)) throw InputError("malformed edge line: " + line);
            edges.emplace_back(u, v);
            continue;
        }
        // Bare numbers: header first, then edges.
        std::istringstream rs(line);
        if (n < 0) {
            if (!(rs >> n >> declaredM)) throw InputError("malformed header line: " + line);
        } else {
            Vertex u, v;
            if (!(rs >> u >> v)) throw InputError("malformed edge line: " + line);
            edges.emplace_back(u, v);
        }
    }
    if (n < 0) throw InputError("empty graph file");
    return load_graph(n, edges, stats);
}

Graph read_graph_file(const std::string& path, LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file: " + path);
    return read_graph(in, stats);
}

}  // namespace conn3
