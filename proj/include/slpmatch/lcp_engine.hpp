#ifndef SLPMATCH_LCP_ENGINE_HPP
#define SLPMATCH_LCP_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "slpmatch/common.hpp"
#include "slpmatch/pattern_index.hpp"
#include "slpmatch/weighted_ancestor.hpp"
#include "slpmatch/wordram.hpp"

namespace slpmatch {

// Compacted trie over a chosen set of pattern suffixes ("members", 1-based
// start positions, no terminator, so a member may end at an inner node).
// Shape comes from ranks and neighbor lcps alone; edges carry no labels.
// Queries are pattern substrings, answered in batches:
//   rooted:   longest common prefix of the query against the whole member
//             set, through the query's lexicographic neighbors.
//   unrooted: resume reading a query from an arbitrary trie position; one
//             heavy-path lcp, one weighted-ancestor hop, then a rooted
//             lookup inside a light subtrie.
class SuffixTrie {
  public:
    struct RootedResult {
        uint32_t member = kNoNode;  // kNoNode only on an empty trie
        uint32_t t = 0;             // matched prefix length of the query
    };
    struct UnrootedResult {
        uint32_t member = kNoNode;  // some member whose path covers the position reached
        uint32_t depth = 0;         // string depth reached
    };

    // Members must be distinct suffix starts in 1..m. with_wa enables
    // weighted-ancestor hops, with_light the light subtries; unrooted
    // queries need both.
    SuffixTrie(const PatternIndex& idx, std::vector<uint32_t> members, bool with_wa,
               bool with_light);
    SuffixTrie(const SuffixTrie&) = delete;
    SuffixTrie& operator=(const SuffixTrie&) = delete;

    uint32_t node_count() const { return static_cast<uint32_t>(parent_.size()); }
    uint32_t member_count() const { return static_cast<uint32_t>(members_by_rank_.size()); }
    uint32_t parent(uint32_t v) const { return parent_[v]; }
    uint32_t depth(uint32_t v) const { return depth_[v]; }
    const std::vector<uint32_t>& kids(uint32_t v) const { return kids_[v]; }
    uint32_t member_at(uint32_t v) const { return member_at_[v]; }
    uint32_t leafcnt(uint32_t v) const { return leafcnt_[v]; }
    uint32_t heavy(uint32_t v) const { return heavy_[v]; }
    uint32_t hp_suffix(uint32_t v) const { return hp_suffix_[v]; }
    const std::vector<uint32_t>& members_by_rank() const { return members_by_rank_; }
    uint32_t leaf_by_suffix(uint32_t suffix) const;  // kNoNode when not a member

    uint32_t light_trie_id(uint32_t v) const { return light_trie_id_[v]; }
    const SuffixTrie& light_trie(uint32_t id) const { return *light_tries_[id]; }
    uint32_t light_trie_count() const { return static_cast<uint32_t>(light_tries_.size()); }
    // Bound witnesses: max light edges above any member / total light-trie size.
    uint32_t max_light_transitions() const { return max_light_transitions_; }
    uint64_t total_light_size() const { return total_light_size_; }

    std::vector<uint32_t> wa_batched(const std::vector<WaQuery>& qs) const;

    std::vector<RootedResult> rooted_batch(const std::vector<SubstringRef>& qs) const;
    std::vector<UnrootedResult> unrooted_batch(
        const std::vector<std::pair<Locator, SubstringRef>>& qs) const;

  private:
    uint32_t new_node(uint32_t parent, uint32_t depth);

    const PatternIndex& idx_;
    bool with_wa_ = false;
    bool with_light_ = false;

    std::vector<uint32_t> parent_, depth_, member_at_;
    std::vector<std::vector<uint32_t>> kids_;
    std::vector<uint32_t> leafcnt_, heavy_, hp_suffix_;
    std::vector<uint32_t> members_by_rank_;
    BlockedPredList rank_list_;
    std::vector<std::pair<uint32_t, uint32_t>> node_by_suffix_;  // sorted by suffix start

    WaStructure wa_;
    std::vector<std::unique_ptr<SuffixTrie>> light_tries_;
    std::vector<uint32_t> light_trie_id_;
    uint32_t max_light_transitions_ = 0;
    uint64_t total_light_size_ = 0;
};

}  // namespace slpmatch

#endif
