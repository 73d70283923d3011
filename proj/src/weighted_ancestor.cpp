#include "slpmatch/weighted_ancestor.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace slpmatch {

namespace {

constexpr uint64_t low_bits(uint32_t k) { return k >= 64 ? ~0ull : (1ull << k) - 1; }

std::vector<std::vector<uint32_t>> child_lists(const std::vector<uint32_t>& parent,
                                               uint32_t* root_out) {
    std::vector<std::vector<uint32_t>> kids(parent.size());
    uint32_t root = kNoNode;
    for (uint32_t v = 0; v < parent.size(); ++v) {
        if (parent[v] == kNoNode) {
            if (root != kNoNode) throw std::invalid_argument("weighted tree: two roots");
            root = v;
        } else {
            kids[parent[v]].push_back(v);
        }
    }
    if (root == kNoNode) throw std::invalid_argument("weighted tree: no root");
    *root_out = root;
    return kids;
}

std::vector<uint32_t> preorder_of(const std::vector<std::vector<uint32_t>>& kids, uint32_t root) {
    std::vector<uint32_t> order;
    order.reserve(kids.size());
    std::vector<uint32_t> stack = {root};
    while (!stack.empty()) {
        const uint32_t u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (auto it = kids[u].rbegin(); it != kids[u].rend(); ++it) stack.push_back(*it);
    }
    if (order.size() != kids.size())
        throw std::invalid_argument("weighted tree: not connected");
    return order;
}

}  // namespace

XDecomposition XDecomposition::build(const std::vector<uint32_t>& parent,
                                     const std::vector<uint32_t>& preorder, uint32_t x) {
    if (x < 1) throw std::invalid_argument("XDecomposition: x must be positive");
    const size_t s = parent.size();
    if (preorder.size() != s || s == 0)
        throw std::invalid_argument("XDecomposition: bad preorder");
    XDecomposition d;
    d.sampled.assign(s, 0);
    d.skeleton.assign(s, 0);
    for (size_t r = x - 1; r < s; r += x) {
        uint32_t v = preorder[r];
        d.sampled[v] = 1;
        while (v != kNoNode && !d.skeleton[v]) {
            d.skeleton[v] = 1;
            v = parent[v];
        }
    }
    d.skeleton[preorder[0]] = 1;
    return d;
}

void WaStructure::MicroWaTree::build(const std::vector<uint32_t>& parent,
                                     const std::vector<uint64_t>& wt) {
    const size_t s = parent.size();
    if (s > 64) throw std::invalid_argument("MicroWaTree: more than 64 nodes");
    order.resize(s);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](uint32_t a, uint32_t b) { return wt[a] < wt[b]; });
    sorted_wts.resize(s);
    std::vector<uint32_t> rank(s);
    for (size_t r = 0; r < s; ++r) {
        sorted_wts[r] = wt[order[r]];
        rank[order[r]] = static_cast<uint32_t>(r);
    }
    anc_mask.assign(s, 0);
    for (uint32_t v = 0; v < s; ++v) {
        if (parent[v] != kNoNode && parent[v] >= v)
            throw std::invalid_argument("MicroWaTree: parents must precede children");
        anc_mask[v] = (parent[v] == kNoNode ? 0 : anc_mask[parent[v]]) | (1ull << rank[v]);
    }
}

uint32_t WaStructure::MicroWaTree::query(uint32_t u, uint64_t k) const {
    const size_t r =
        std::lower_bound(sorted_wts.begin(), sorted_wts.end(), k) - sorted_wts.begin();
    const uint64_t mask = anc_mask[u] & ~low_bits(static_cast<uint32_t>(r));
    if (mask == 0) return kNoNode;
    return order[std::countr_zero(mask)];
}

std::vector<uint32_t> offline_sorted_wa(const std::vector<uint32_t>& parent,
                                        const std::vector<uint64_t>& weight,
                                        const std::vector<WaQuery>& sorted_queries) {
    for (size_t i = 1; i < sorted_queries.size(); ++i)
        if (sorted_queries[i].key < sorted_queries[i - 1].key)
            throw std::invalid_argument("offline_sorted_wa: queries not sorted by key");
    uint32_t root = 0;
    const auto kids = child_lists(parent, &root);

    std::vector<std::vector<uint32_t>> bucket(parent.size());
    for (uint32_t qi = 0; qi < sorted_queries.size(); ++qi)
        bucket[sorted_queries[qi].node].push_back(qi);

    std::vector<uint32_t> answers(sorted_queries.size(), kNoNode);
    std::vector<uint32_t> path;
    std::vector<uint64_t> path_wt;
    // DFS frames: (node, next child index); path holds the current root chain.
    std::vector<std::pair<uint32_t, size_t>> frames = {{root, 0}};
    path.push_back(root);
    path_wt.push_back(weight[root]);
    while (!frames.empty()) {
        auto& [u, ci] = frames.back();
        if (ci == 0) {
            for (const uint32_t qi : bucket[u]) {
                const uint64_t k = sorted_queries[qi].key;
                if (k > weight[u]) continue;  // stays kNoNode
                // Gallop from the deep end: path weights strictly increase.
                size_t hi = path_wt.size() - 1, step = 1;
                while (hi >= step && path_wt[hi - step] >= k) {
                    hi -= step;
                    step <<= 1;
                }
                const size_t lo = hi >= step ? hi - step + 1 : 0;
                const size_t idx =
                    std::lower_bound(path_wt.begin() + lo, path_wt.begin() + hi + 1, k) -
                    path_wt.begin();
                answers[qi] = path[idx];
            }
        }
        if (ci < kids[u].size()) {
            const uint32_t c = kids[u][ci++];
            if (weight[c] <= weight[u])
                throw std::invalid_argument("weighted tree: weights must strictly increase");
            frames.emplace_back(c, 0);
            path.push_back(c);
            path_wt.push_back(weight[c]);
        } else {
            frames.pop_back();
            path.pop_back();
            path_wt.pop_back();
        }
    }
    return answers;
}

WaStructure WaStructure::build(std::vector<uint32_t> parent, std::vector<uint64_t> weight,
                               uint32_t x, Counters* counters) {
    if (x < 2 || x > 65) throw std::invalid_argument("WaStructure: x out of range");
    if (parent.size() != weight.size() || parent.empty())
        throw std::invalid_argument("WaStructure: bad input arrays");
    WaStructure wa;
    wa.parent_ = std::move(parent);
    wa.weight_ = std::move(weight);
    wa.counters_ = counters;
    const size_t s = wa.parent_.size();

    uint32_t root = 0;
    const auto kids = child_lists(wa.parent_, &root);
    const auto pre = preorder_of(kids, root);
    for (uint32_t v = 0; v < s; ++v)
        if (wa.parent_[v] != kNoNode && wa.weight_[v] <= wa.weight_[wa.parent_[v]])
            throw std::invalid_argument("WaStructure: weights must strictly increase");

    const XDecomposition dec = XDecomposition::build(wa.parent_, pre, x);
    const std::vector<char>& skeleton = dec.skeleton;
    std::vector<char> top = dec.sampled;
    top[root] = 1;
    // Branching skeleton nodes join the top tree.
    for (uint32_t v = 0; v < s; ++v) {
        if (!skeleton[v]) continue;
        int sk_kids = 0;
        for (const uint32_t c : kids[v]) sk_kids += skeleton[c];
        if (sk_kids >= 2) top[v] = 1;
    }

    wa.top_id_.assign(s, kNoNode);
    for (const uint32_t v : pre)
        if (top[v]) {
            wa.top_id_[v] = static_cast<uint32_t>(wa.top_nodes_.size());
            wa.top_nodes_.push_back(v);
        }

    // topleaf_: within each skeleton subtree some top node exists (a sampled
    // one at the bottom); propagate it upward through the unique skeleton
    // child of every inner node.
    wa.topleaf_.assign(s, kNoNode);
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
        const uint32_t v = *it;
        if (!skeleton[v]) continue;
        if (top[v]) {
            wa.topleaf_[v] = v;
        } else {
            for (const uint32_t c : kids[v])
                if (skeleton[c]) wa.topleaf_[v] = wa.topleaf_[c];
        }
        if (wa.topleaf_[v] == kNoNode)
            throw std::logic_error("WaStructure: skeleton node without sampled descendant");
    }

    // Contracted top tree plus the original path into each non-root top node.
    const size_t t = wa.top_nodes_.size();
    wa.top_parent_.assign(t, kNoNode);
    wa.top_weight_.resize(t);
    wa.edge_nodes_.resize(t);
    wa.edge_wts_.resize(t);
    for (uint32_t ti = 0; ti < t; ++ti) {
        const uint32_t v = wa.top_nodes_[ti];
        wa.top_weight_[ti] = wa.weight_[v];
        if (v == root) {
            wa.top_root_id_ = ti;
            continue;
        }
        std::vector<uint32_t> path = {v};
        uint32_t a = wa.parent_[v];
        while (!top[a]) {
            path.push_back(a);
            a = wa.parent_[a];
        }
        wa.top_parent_[ti] = wa.top_id_[a];
        std::reverse(path.begin(), path.end());  // ascending weight
        std::vector<uint64_t> wts;
        for (const uint32_t u : path) wts.push_back(wa.weight_[u]);
        wa.edge_nodes_[ti] = std::move(path);
        wa.edge_wts_[ti] = SmallPredSet::build(std::move(wts));
    }

    // Off-skeleton components are whole subtrees rooted just below skeleton
    // nodes; each spans fewer than x consecutive preorder ranks.
    wa.comp_id_.assign(s, kNoNode);
    wa.local_id_.assign(s, 0);
    for (const uint32_t v : pre) {
        if (skeleton[v]) continue;
        const uint32_t pv = wa.parent_[v];
        if (skeleton[pv]) {
            wa.comp_id_[v] = static_cast<uint32_t>(wa.comp_nodes_.size());
            wa.comp_nodes_.emplace_back();
            wa.comp_attach_.push_back(pv);
        } else {
            wa.comp_id_[v] = wa.comp_id_[pv];
        }
        auto& nodes = wa.comp_nodes_[wa.comp_id_[v]];
        wa.local_id_[v] = static_cast<uint32_t>(nodes.size());
        nodes.push_back(v);
    }
    wa.micros_.resize(wa.comp_nodes_.size());
    for (size_t c = 0; c < wa.comp_nodes_.size(); ++c) {
        const auto& nodes = wa.comp_nodes_[c];
        std::vector<uint32_t> lp(nodes.size());
        std::vector<uint64_t> lw(nodes.size());
        for (size_t i = 0; i < nodes.size(); ++i) {
            const uint32_t pv = wa.parent_[nodes[i]];
            lp[i] = (i == 0) ? kNoNode : wa.local_id_[pv];
            lw[i] = wa.weight_[nodes[i]];
        }
        wa.micros_[c].build(lp, lw);
    }
    return wa;
}

uint32_t WaStructure::query_one(uint32_t node, uint64_t key) const {
    return batched({WaQuery{node, key}})[0];
}

std::vector<uint32_t> WaStructure::batched(const std::vector<WaQuery>& queries) const {
    count_events(counters_, &Counters::wa_queries, queries.size());
    std::vector<std::pair<uint64_t, uint64_t>> by_key;
    by_key.reserve(queries.size());
    uint64_t universe = 0;
    for (const auto& q : queries) universe = std::max(universe, q.key);
    for (uint64_t qi = 0; qi < queries.size(); ++qi) by_key.emplace_back(queries[qi].key, qi);
    radix_sort_pairs(by_key, universe, counters_);

    std::vector<uint32_t> answers(queries.size(), kNoNode);
    std::vector<WaQuery> top_queries;
    std::vector<uint32_t> top_qid;
    for (const auto& [k, qi] : by_key) {
        const uint32_t u = queries[qi].node;
        if (u >= parent_.size()) throw std::invalid_argument("WaStructure: bad node id");
        if (k > weight_[u]) continue;  // stays kNoNode
        uint32_t anchor;
        if (comp_id_[u] != kNoNode) {
            const uint32_t attach = comp_attach_[comp_id_[u]];
            if (k > weight_[attach]) {
                const auto& nodes = comp_nodes_[comp_id_[u]];
                answers[qi] = nodes[micros_[comp_id_[u]].query(local_id_[u], k)];
                continue;
            }
            anchor = attach;
        } else {
            anchor = u;
        }
        top_queries.push_back(WaQuery{top_id_[topleaf_[anchor]], k});
        top_qid.push_back(static_cast<uint32_t>(qi));
    }

    const auto top_ans = offline_sorted_wa(top_parent_, top_weight_, top_queries);
    for (size_t i = 0; i < top_ans.size(); ++i) {
        const uint32_t ti = top_ans[i];
        const uint64_t k = top_queries[i].key;
        if (ti == top_root_id_) {
            answers[top_qid[i]] = top_nodes_[top_root_id_];
        } else {
            const size_t idx = edge_wts_[ti].rank_less(k);
            answers[top_qid[i]] = edge_nodes_[ti][idx];
        }
    }
    return answers;
}

}  // namespace slpmatch
