#ifndef SLPMATCH_WEIGHTED_ANCESTOR_HPP
#define SLPMATCH_WEIGHTED_ANCESTOR_HPP

#include <cstdint>
#include <vector>

#include "slpmatch/common.hpp"
#include "slpmatch/wordram.hpp"

namespace slpmatch {

struct WaQuery {
    uint32_t node = 0;
    uint64_t key = 0;
};

// x-sampling of a rooted tree: every x-th node in the given preorder is
// sampled, and the skeleton closes the sample set under taking ancestors
// (the root always counts). Off-skeleton subtrees then have fewer than x
// nodes, and any subtree with at least x nodes intersects the skeleton.
struct XDecomposition {
    std::vector<char> sampled;
    std::vector<char> skeleton;

    static XDecomposition build(const std::vector<uint32_t>& parent,
                                const std::vector<uint32_t>& preorder, uint32_t x);
};

// Weighted-ancestor structure over a rooted tree whose weights strictly
// increase from parent to child. A query (u, k) with k <= weight[u] returns
// the ancestor of u closest to the root with weight >= k (possibly u itself);
// k > weight[u] yields kNoNode.
//
// Build samples every x-th preorder rank; sampled nodes and their ancestors
// form a skeleton whose branching points make a contracted top tree. Top-tree
// batches run offline against key-sorted queries; contracted edges resolve
// with one packed predecessor lookup; off-skeleton subtrees (< x nodes each)
// answer in O(1) from single-word ancestor masks.
class WaStructure {
  public:
    WaStructure() = default;
    // parent[root] == kNoNode, exactly one root; 2 <= x <= 65.
    static WaStructure build(std::vector<uint32_t> parent, std::vector<uint64_t> weight,
                             uint32_t x = 64, Counters* counters = nullptr);

    // Answers in input order; queries may arrive in any order.
    std::vector<uint32_t> batched(const std::vector<WaQuery>& queries) const;
    uint32_t query_one(uint32_t node, uint64_t key) const;
    size_t size() const { return parent_.size(); }

  private:
    // Tree of at most 64 nodes; parents precede children, weights may repeat
    // across branches. One word per node holds its ancestor set as bits in
    // weight-sorted order.
    struct MicroWaTree {
        std::vector<uint32_t> order;       // weight-sorted node ids
        std::vector<uint64_t> sorted_wts;
        std::vector<uint64_t> anc_mask;    // by node id
        void build(const std::vector<uint32_t>& parent, const std::vector<uint64_t>& wt);
        uint32_t query(uint32_t u, uint64_t k) const;
    };

    std::vector<uint32_t> parent_;
    std::vector<uint64_t> weight_;
    Counters* counters_ = nullptr;

    std::vector<uint32_t> top_id_;     // kNoNode unless a top node
    std::vector<uint32_t> top_nodes_;  // top id -> original node
    std::vector<uint32_t> top_parent_; // in top-id space
    uint32_t top_root_id_ = 0;
    std::vector<uint64_t> top_weight_;
    std::vector<uint32_t> topleaf_;    // skeleton node -> top node in its subtree

    // Contracted-edge path into each non-root top node, ascending by weight.
    std::vector<std::vector<uint32_t>> edge_nodes_;
    std::vector<SmallPredSet> edge_wts_;

    std::vector<uint32_t> comp_id_;    // kNoNode for skeleton nodes
    std::vector<uint32_t> local_id_;
    std::vector<std::vector<uint32_t>> comp_nodes_;
    std::vector<uint32_t> comp_attach_;
    std::vector<MicroWaTree> micros_;
};

// Reference batch on an explicit tree: queries must be sorted by key
// (ascending), otherwise throws. Used on the contracted top tree and directly
// testable on its own.
std::vector<uint32_t> offline_sorted_wa(const std::vector<uint32_t>& parent,
                                        const std::vector<uint64_t>& weight,
                                        const std::vector<WaQuery>& sorted_queries);

}  // namespace slpmatch

#endif
