#pragma once

#include <array>
#include <atomic>
#include <memory>

#include "conn3/case_tables.hpp"

namespace conn3 {

namespace testing {
/// Test-only fault injection: flips exactly one named predicate of the case
/// analysis. 0 = off. Not for production use.
enum Mutation : int {
    kNoMutation = 0,
    kMutPairDirect,      // two-failure check, direct back-edge test
    kMutPairHigh,        // two-failure check, mediating-subtree test
    kMutSplitThird,      // same-child fork, third-low-child shortcut
    kMutDescLow,         // attachment via child subtree, low-side test
    kMutTripleLow,       // attachment via low triple membership
    kMutSkipHigh,        // attachment via skipping point, high test
    kMutHighInB,         // attachment via child subtree, high-side test
    kMutStar,            // chain case, sibling-mediation precheck
    kMutCount74,         // chain case, first counting argument
    kMutMwC,             // chain case, apex-at-bottom high-triple test
    kMutCount76,         // chain case, second counting argument
    kMutSiblingNotAnc,   // chain case, second-low-child placement test
    kMutationCount
};
extern int mutation;
}  // namespace testing

/// Instrumentation: one counter per dispatch branch of the case analysis.
enum CaseCounter : int {
    CNT_F1, CNT_F2_UNREL, CNT_F2_REL, CNT_F3_NONE, CNT_F3_ONEPAIR, CNT_F3_FORK, CNT_F3_FORKSAME,
    CNT_F3_CHAIN,
    CNT_62_DIRECT, CNT_62_BOTH_V, CNT_62_BOTH_W, CNT_62_THIRD, CNT_62_SPLIT,
    CNT_71, CNT_71_MD_NONE, CNT_71_MD_CHILD, CNT_71_MD_W, CNT_71_MD_C,
    CNT_72, CNT_72_MD_NONE, CNT_72_MD_CHILD, CNT_72_MD_W, CNT_72_MD_C,
    CNT_73, CNT_73_STAR, CNT_73_STAR_MD_NONE, CNT_73_STAR_MD_CHILD, CNT_73_STAR_MD_W,
    CNT_73_STAR_MD_C,
    CNT_73_C1, CNT_73_C2, CNT_73_C2_MD_NONE, CNT_73_C2_MD_CHILD, CNT_73_C2_MD_W, CNT_73_C2_MD_C,
    CNT_73_C3, CNT_73_C3_A1, CNT_73_C3_A2, CNT_73_C3_B, CNT_73_C4,
    CNT_73_C5, CNT_73_C5_MD_NONE, CNT_73_C5_MD_CHILD, CNT_73_C5_MD_W, CNT_73_C5_MD_C,
    CNT_74, CNT_74_MD_CHILD, CNT_74_MD_W, CNT_74_MD_W_NOA, CNT_74_MD_W_AB, CNT_74_MD_W_AC,
    CNT_74_COUNTING, CNT_74_MD_C,
    CNT_75, CNT_75_MD_W, CNT_75_MD_C, CNT_75_LOWROUTE,
    CNT_76, CNT_76_SAME, CNT_76_UPPER, CNT_76_ANCHOR_U, CNT_76_LOW_U, CNT_76_SIB_OUT,
    CNT_76_COUNT_SAME, CNT_76_COUNT_DIFF,
    CNT_7_HANGING,
    CNT_TOTAL
};
const char* counter_name(int id);

/// Resolved per-query state: the internal components of the tree minus the
/// failure set, and their pairwise connections in the punctured graph.
struct FailureContext {
    int k = 0;
    std::array<Vertex, 3> f{};         // failed vertices, tree ids, ascending
    int compCount = 0;
    std::array<Vertex, 3> compRoot{};  // comp 0 always roots at the tree root
    std::array<std::int64_t, 3> compSize{};
    std::uint8_t edges = 0;            // bits: 0 = comps 0-1, 1 = comps 0-2, 2 = comps 1-2
    std::array<int, 3> rep{};          // component representative after closure
};

/// Either an internal-component group or an isolated hanging subtree.
struct ComponentRef {
    bool internal = false;
    Vertex id = kNone;  // group representative / hanging subtree root (tree id)
    friend bool operator==(const ComponentRef& a, const ComponentRef& b) {
        return a.internal == b.internal && a.id == b.id;
    }
};

/// Connectivity oracle for up to three vertex failures. Immutable after
/// construction; queries are lock-free and share no mutable state beyond the
/// relaxed instrumentation counters.
class Oracle {
public:
    explicit Oracle(Graph g);

    Oracle(const Oracle&) = delete;
    Oracle& operator=(const Oracle&) = delete;

    /// All query entry points take original vertex ids.
    FailureContext resolve(const std::vector<Vertex>& failures) const;
    ComponentRef locate(const FailureContext& ctx, Vertex x) const;
    bool connected(const std::vector<Vertex>& failures, Vertex x, Vertex y) const;
    std::int64_t count_components(const std::vector<Vertex>& failures) const;
    bool is_cut(const std::vector<Vertex>& failures) const;

    const Graph& graph() const { return g_; }
    const TransformedGraph& transformed() const { return tg_; }
    const DfsForestViews& views() const { return views_; }
    const ScalarParams& scalars() const { return sp_; }
    const ExtremePoints& extremes() const { return ep_; }
    const CaseTables& tables() const { return ct_; }

    std::int64_t table_words() const;
    std::vector<std::uint64_t> counter_snapshot() const;
    void reset_counters() const;

private:
    struct Ctx;
    bool pair_check(Vertex u, Vertex v) const;
    bool fork_same_check(Vertex u, Vertex v, Vertex w, Vertex c) const;
    enum class Attach { BOnly, AOnly, Both };
    void attach_c(Ctx& q, Attach mode, const std::array<int, 4>& counters) const;
    void seven(Ctx& q) const;
    void seven_mc_v(Ctx& q) const;
    void seven73_case3(Ctx& q) const;
    void seven_mc_desc_w(Ctx& q) const;
    void seven_mc_w(Ctx& q) const;
    void seven_mc_c(Ctx& q) const;
    struct CbResult {
        bool connected = false;
        bool usedLeft = true;  // which extreme triggered the anchored family
    };
    CbResult cb_check_apex_in_c(Ctx& q) const;

    void hit(int id) const { counters_[static_cast<size_t>(id)].fetch_add(1, std::memory_order_relaxed); }
    static bool mut(int site, bool value) {
        return testing::mutation == site ? !value : value;
    }

    Graph g_;
    TransformedGraph tg_;
    ScalarParams sp_;
    DfsForestViews views_;
    ExtremePoints ep_;
    CaseTables ct_;
    mutable std::array<std::atomic<std::uint64_t>, CNT_TOTAL> counters_{};
};

}  // namespace conn3
