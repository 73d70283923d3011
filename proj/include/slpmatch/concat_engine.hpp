#ifndef SLPMATCH_CONCAT_ENGINE_HPP
#define SLPMATCH_CONCAT_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "slpmatch/common.hpp"
#include "slpmatch/lcp_engine.hpp"
#include "slpmatch/pattern_index.hpp"
#include "slpmatch/weighted_ancestor.hpp"
#include "slpmatch/wordram.hpp"

namespace slpmatch {

// Answers batched concatenation queries: given two pattern substrings u and
// v, report a 0-based position where uv occurs in p, or nothing. Each query
// costs O(1) lcp/weighted-ancestor/predecessor work.
//
// A substring is frequent when it occurs at least tau times. Frequent u:
// locate u in the suffix tree, hop into a sparse suffix trie built from one
// representative suffix per decomposition leaf, resume reading v there, and
// finish inside a bottom trie hanging off the suffix tree. Rare u: split u
// as u'u'' at its longest frequent suffix; the one-char-longer rare suffix
// pins down a group of fewer than tau text positions, prestored as points
// (rank of what follows, rank of what precedes) in a per-group micro grid,
// and the query becomes one rectangle probe.
class ConcatIndex {
  public:
    struct Query {
        SubstringRef u;
        SubstringRef v;
    };

    explicit ConcatIndex(const PatternIndex& idx);
    ConcatIndex(const ConcatIndex&) = delete;
    ConcatIndex& operator=(const ConcatIndex&) = delete;

    std::vector<std::optional<uint32_t>> batched(const std::vector<Query>& qs) const;
    std::optional<uint32_t> query_one(SubstringRef u, SubstringRef v) const;

    uint32_t frequent_threshold() const { return tau_; }
    uint32_t sample_stride() const { return x_; }
    bool skeleton(uint32_t st_node) const { return dec_.skeleton[st_node] != 0; }
    const SuffixTrie& top_trie() const { return *trie_s_; }
    uint32_t bottom_trie_count() const { return static_cast<uint32_t>(bottom_tries_.size()); }
    uint32_t grid_group_count() const { return static_cast<uint32_t>(grid_by_group_.size()); }

  private:
    const PatternIndex& idx_;
    uint32_t tau_ = 1;
    uint32_t x_ = 1;
    XDecomposition dec_;

    std::vector<uint32_t> s_suffix_;           // skeleton st node -> representative member
    std::vector<uint32_t> boundary_by_suffix_; // member -> string depth of its leaf's subtree top
    std::unique_ptr<SuffixTrie> trie_s_;
    std::vector<uint32_t> bottom_id_;          // st node -> bottom trie id (kNoNode otherwise)
    std::vector<std::unique_ptr<SuffixTrie>> bottom_tries_;

    // Rare side; empty when tau_ == 1 (then nothing is rare).
    std::vector<uint32_t> f_rev_;       // rst node -> depth of deepest frequent ancestor-or-self
    std::vector<uint32_t> first_rare_;  // rst node -> topmost rare ancestor-or-self
    std::unordered_map<uint32_t, MicroGrid> grid_by_group_;
};

}  // namespace slpmatch

#endif
