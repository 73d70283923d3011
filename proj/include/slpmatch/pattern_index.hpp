#ifndef SLPMATCH_PATTERN_INDEX_HPP
#define SLPMATCH_PATTERN_INDEX_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "slpmatch/common.hpp"
#include "slpmatch/weighted_ancestor.hpp"

namespace slpmatch {

// Suffix tree of s plus a terminator that sorts before every byte. Built
// online, then frozen into per-node arrays. Node 0 is the root. "Real"
// leaves are the |s| suffixes of s itself; the terminator-only leaf is kept
// out of ranks, counts and pointers.
class SuffixTree {
  public:
    static constexpr int32_t kTerminator = -1;

    explicit SuffixTree(std::string_view s);

    uint32_t node_count() const { return static_cast<uint32_t>(parent_.size()); }
    uint32_t m() const { return n_ - 1; }
    uint32_t parent(uint32_t v) const { return parent_[v]; }
    uint32_t depth(uint32_t v) const { return depth_[v]; }
    bool is_leaf(uint32_t v) const { return children_[v].empty(); }
    uint32_t leaf_suffix(uint32_t v) const { return leaf_suffix_[v]; }
    uint32_t leaf_of(uint32_t suffix) const { return leaf_of_[suffix]; }
    const std::map<int32_t, uint32_t>& children(uint32_t v) const { return children_[v]; }
    const std::vector<uint32_t>& preorder() const { return preorder_; }

    uint32_t lca(uint32_t a, uint32_t b) const;

    // Lexicographic ranks 1..m over real suffixes only.
    uint32_t sa(uint32_t rank) const { return sa_[rank]; }
    uint32_t isa(uint32_t suffix) const { return isa_[suffix]; }

    uint32_t subtree_count(uint32_t v) const { return count_[v]; }
    // Rank interval of real leaves below v; (1, 0) when there are none.
    std::pair<uint32_t, uint32_t> leaf_range(uint32_t v) const {
        return {range_lo_[v], range_hi_[v]};
    }
    uint32_t leafptr(uint32_t v) const;  // some real suffix below v, kNoNode if none
    uint32_t min1(uint32_t v) const { return min1_[v]; }  // smallest suffix start below v
    uint32_t min2(uint32_t v) const { return min2_[v]; }  // second smallest, kNoNode if none
    // String depth of the deepest ancestor-or-self owning a terminator edge,
    // i.e. the longest prefix of v's string that is a suffix of s.
    uint32_t dollar_depth(uint32_t v) const { return dollar_depth_[v]; }

  private:
    uint32_t n_ = 0;  // |s| + 1
    std::vector<uint32_t> parent_, depth_, leaf_suffix_, leaf_of_;
    std::vector<std::map<int32_t, uint32_t>> children_;
    std::vector<uint32_t> preorder_;
    std::vector<uint32_t> sa_, isa_;
    std::vector<uint32_t> count_, range_lo_, range_hi_, min1_, min2_, dollar_depth_;
    // Euler tour LCA.
    std::vector<uint32_t> euler_, first_, tdepth_;
    std::vector<std::vector<uint32_t>> sparse_;
    void build_lca();
};

// Everything the matching pipeline asks about the (uncompressed) pattern:
// suffix trees of p and its reversal with weighted-ancestor structures,
// constant-time lcp/lcs between pattern positions, period tables, and batched
// longest prefix-of-substring-that-is-a-suffix-of-p resolution (and the
// mirrored variant) used to renormalize triple components.
class PatternIndex {
  public:
    explicit PatternIndex(std::string pattern, Counters* counters = nullptr);
    PatternIndex(const PatternIndex&) = delete;
    PatternIndex& operator=(const PatternIndex&) = delete;

    uint32_t m() const { return m_; }
    const std::string& pattern() const { return p_; }
    uint8_t at(uint32_t i) const { return static_cast<uint8_t>(p_[i - 1]); }  // 1-based

    const SuffixTree& tree() const { return st_; }
    const SuffixTree& rtree() const { return rst_; }
    const WaStructure& wa() const { return wa_; }
    const WaStructure& rwa() const { return rwa_; }
    Counters* counters() const { return counters_; }

    // lcp of suffixes p[i..], p[j..]; i or j may be m+1 (empty suffix).
    uint32_t lcp(uint32_t i, uint32_t j) const;
    // Longest common suffix of prefixes p[..i], p[..j]; i or j may be 0.
    uint32_t lcs(uint32_t i, uint32_t j) const;

    uint32_t pref_period(uint32_t len) const { return pref_period_[len]; }   // per(p[1..len])
    uint32_t suf_period(uint32_t start) const { return suf_period_[start]; } // per(p[start..m])
    uint32_t first_pos(uint8_t c) const { return first_pos_[c]; }            // 0 when absent

    // Weighted-ancestor locate of a pattern substring in tree()/rtree();
    // answer is the highest node with string depth >= |ref|.
    WaQuery locate_query(SubstringRef ref) const;
    WaQuery locate_query_rev(SubstringRef ref) const;  // locates reversed ref in rtree()

    struct PrefSufRequest {
        SubstringRef ref;
        bool want_pref = false;  // longest prefix of ref that is a suffix of p
        bool want_suf = false;   // longest suffix of ref that is a prefix of p
    };
    struct PrefSufResult {
        uint32_t pref = 0;
        uint32_t suf = 0;
    };
    std::vector<PrefSufResult> batched_pref_suf(const std::vector<PrefSufRequest>& reqs) const;

  private:
    void check_ref(SubstringRef ref) const;

    std::string p_;
    uint32_t m_;
    Counters* counters_;
    SuffixTree st_;
    SuffixTree rst_;
    WaStructure wa_, rwa_;
    std::vector<uint32_t> pref_period_, suf_period_;  // 1-based
    uint32_t first_pos_[256] = {};
};

}  // namespace slpmatch

#endif
