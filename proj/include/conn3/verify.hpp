#pragma once

#include <random>
#include <string>

#include "conn3/oracle.hpp"

namespace conn3::verify {

/// BFS ground truth on the original graph.
bool brute_connected(const Graph& g, const std::vector<Vertex>& failures, Vertex x, Vertex y);
std::int64_t brute_count(const Graph& g, const std::vector<Vertex>& failures);

/// Recomputes every scalar parameter, extreme point, and case table entry from
/// explicit leap sets (O(n*m)) and compares with the oracle's tables. Also
/// exercises the apex-chain oracle over all valid pairs. Returns "" when
/// everything matches, else a description of the first mismatch.
std::string check_tables(const Oracle& o);

/// Deterministic generators (same seed, same graph).
Graph gen_random(std::uint64_t seed, Vertex n, std::int64_t m);
Graph gen_cycle_chords(std::uint64_t seed, Vertex n, int chords);
Graph gen_theta(std::uint64_t seed, Vertex n);
Graph gen_book(Vertex pages);
Graph gen_tree_matching(std::uint64_t seed, Vertex n, int matchEdges);
Graph gen_clique(Vertex n);
/// Long chains with sparse chords and small hanging subtrees; drives the
/// chain-failure case analysis.
Graph gen_adversarial(std::uint64_t seed);

std::vector<Graph> corpus_small(std::uint64_t seed, int count, Vertex minN, Vertex maxN);
std::vector<Graph> corpus_adversarial(std::uint64_t seed, int count);

struct DiffOptions {
    bool exhaustive = true;  // all failure sets and pairs (use for n <= 16)
    int sampleTriples = 500;
    std::uint64_t seed = 1;
};

struct DiffResult {
    std::int64_t graphs = 0;
    std::int64_t connectivityChecks = 0;
    std::int64_t countChecks = 0;
    std::int64_t connectivityMismatches = 0;
    std::int64_t countMismatches = 0;
    std::int64_t mismatches = 0;
    std::string firstCase;  // shrunk counterexample, empty when clean
    std::string to_json() const;
};

/// Differential run over a corpus; stops recording (but keeps counting) after
/// the first counterexample, which is greedily shrunk.
DiffResult run_differential(const std::vector<Graph>& corpus, const DiffOptions& opt,
                            int threads = 1);

/// True if the given fault injection produces at least one mismatch (or a
/// query failure) somewhere on the corpus.
bool mutation_caught(int mutationId, const std::vector<Graph>& corpus);

}  // namespace conn3::verify
