#include "slpmatch/lcp_engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace slpmatch {

namespace {

uint32_t ceil_log2(uint64_t v) {
    if (v <= 1) return 0;
    return static_cast<uint32_t>(std::bit_width(v - 1));
}

}  // namespace

uint32_t SuffixTrie::new_node(uint32_t parent, uint32_t depth) {
    parent_.push_back(parent);
    depth_.push_back(depth);
    member_at_.push_back(kNoNode);
    kids_.emplace_back();
    return static_cast<uint32_t>(parent_.size() - 1);
}

SuffixTrie::SuffixTrie(const PatternIndex& idx, std::vector<uint32_t> members, bool with_wa,
                       bool with_light)
    : idx_(idx), with_wa_(with_wa), with_light_(with_light) {
    const uint32_t m = idx.m();
    const uint32_t k = static_cast<uint32_t>(members.size());

    std::vector<std::pair<uint64_t, uint64_t>> by_rank;
    by_rank.reserve(k);
    for (uint32_t s : members) {
        if (s < 1 || s > m) throw std::invalid_argument("SuffixTrie: member out of range");
        by_rank.emplace_back(idx.tree().isa(s), s);
    }
    radix_sort_pairs(by_rank, m, idx.counters());
    members_by_rank_.reserve(k);
    for (const auto& [r, s] : by_rank) members_by_rank_.push_back(static_cast<uint32_t>(s));
    for (uint32_t i = 1; i < k; ++i)
        if (by_rank[i].first == by_rank[i - 1].first)
            throw std::invalid_argument("SuffixTrie: duplicate member");

    new_node(kNoNode, 0);
    std::vector<uint32_t> stack = {0};
    for (uint32_t i = 0; i < k; ++i) {
        const uint32_t s = members_by_rank_[i];
        const uint32_t len = m - s + 1;
        const uint32_t l =
            (i == 0) ? 0 : static_cast<uint32_t>(idx.lcp(members_by_rank_[i - 1], s));
        uint32_t last = kNoNode;
        while (depth_[stack.back()] > l) {
            last = stack.back();
            stack.pop_back();
        }
        uint32_t attach = stack.back();
        if (depth_[attach] < l) {
            // Edge (attach, last) splits at depth l.
            if (kids_[attach].empty() || kids_[attach].back() != last)
                throw std::logic_error("SuffixTrie: rightmost path out of order");
            const uint32_t mid = new_node(attach, l);
            kids_[attach].back() = mid;
            parent_[last] = mid;
            kids_[mid].push_back(last);
            stack.push_back(mid);
            attach = mid;
        }
        // A member never equals a prefix of its lexicographic predecessor,
        // so the new leaf sits strictly below the attach point.
        if (len <= depth_[attach]) throw std::logic_error("SuffixTrie: leaf not below attach");
        const uint32_t leaf = new_node(attach, len);
        member_at_[leaf] = s;
        kids_[attach].push_back(leaf);
        stack.push_back(leaf);
    }

    const uint32_t nc = node_count();
    std::vector<uint32_t> pre;
    pre.reserve(nc);
    {
        std::vector<uint32_t> st = {0};
        while (!st.empty()) {
            const uint32_t v = st.back();
            st.pop_back();
            pre.push_back(v);
            for (auto it = kids_[v].rbegin(); it != kids_[v].rend(); ++it) st.push_back(*it);
        }
    }
    leafcnt_.assign(nc, 0);
    heavy_.assign(nc, kNoNode);
    hp_suffix_.assign(nc, kNoNode);
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
        const uint32_t v = *it;
        leafcnt_[v] = (member_at_[v] != kNoNode) ? 1 : 0;
        for (const uint32_t c : kids_[v]) {
            leafcnt_[v] += leafcnt_[c];
            if (heavy_[v] == kNoNode || leafcnt_[c] > leafcnt_[heavy_[v]]) heavy_[v] = c;
        }
        hp_suffix_[v] = kids_[v].empty() ? member_at_[v] : hp_suffix_[heavy_[v]];
        if (k > 0 && hp_suffix_[v] == kNoNode)
            throw std::logic_error("SuffixTrie: heavy path without member");
    }

    {
        std::vector<uint64_t> keys;
        keys.reserve(k);
        for (const uint32_t s : members_by_rank_) keys.push_back(idx.tree().isa(s));
        rank_list_ = BlockedPredList::build(std::move(keys));
    }
    node_by_suffix_.reserve(k);
    for (uint32_t v = 0; v < nc; ++v)
        if (member_at_[v] != kNoNode) node_by_suffix_.emplace_back(member_at_[v], v);
    std::sort(node_by_suffix_.begin(), node_by_suffix_.end());

    if (with_wa_) {
        std::vector<uint64_t> wts(depth_.begin(), depth_.end());
        wa_ = WaStructure::build(parent_, wts, 64, idx.counters());
    }

    light_trie_id_.assign(nc, kNoNode);
    if (with_light_ && k > 0) {
        const uint32_t cap = ceil_log2(k);
        std::vector<uint32_t> transitions(k, 0);  // indexed by member rank
        std::vector<uint32_t> rank_of(m + 2, 0);
        for (uint32_t r = 0; r < k; ++r) rank_of[members_by_rank_[r]] = r;
        std::vector<uint32_t> tails, st;
        for (const uint32_t z : pre) {
            if (kids_[z].size() < 2) continue;
            tails.clear();
            for (const uint32_t c : kids_[z]) {
                if (c == heavy_[z]) continue;
                st.assign(1, c);
                while (!st.empty()) {
                    const uint32_t u = st.back();
                    st.pop_back();
                    if (member_at_[u] != kNoNode) {
                        tails.push_back(member_at_[u] + depth_[z]);
                        ++transitions[rank_of[member_at_[u]]];
                    }
                    for (const uint32_t w : kids_[u]) st.push_back(w);
                }
            }
            light_trie_id_[z] = static_cast<uint32_t>(light_tries_.size());
            light_tries_.push_back(
                std::make_unique<SuffixTrie>(idx_, std::move(tails), false, false));
            tails = {};
            total_light_size_ += light_tries_.back()->member_count();
        }
        for (const uint32_t t : transitions)
            max_light_transitions_ = std::max(max_light_transitions_, t);
        if (max_light_transitions_ > cap)
            throw std::logic_error("SuffixTrie: light transition bound violated");
        if (total_light_size_ > static_cast<uint64_t>(k) * (cap + 1))
            throw std::logic_error("SuffixTrie: light size bound violated");
    }
}

uint32_t SuffixTrie::leaf_by_suffix(uint32_t suffix) const {
    auto it = std::lower_bound(node_by_suffix_.begin(), node_by_suffix_.end(),
                               std::make_pair(suffix, 0u));
    if (it == node_by_suffix_.end() || it->first != suffix) return kNoNode;
    return it->second;
}

std::vector<uint32_t> SuffixTrie::wa_batched(const std::vector<WaQuery>& qs) const {
    if (!with_wa_) throw std::logic_error("SuffixTrie: built without weighted ancestors");
    return wa_.batched(qs);
}

std::vector<SuffixTrie::RootedResult> SuffixTrie::rooted_batch(
    const std::vector<SubstringRef>& qs) const {
    const uint32_t k = member_count();
    std::vector<RootedResult> out(qs.size());
    if (k == 0) return out;

    std::vector<std::pair<uint64_t, uint64_t>> order;
    order.reserve(qs.size());
    for (uint32_t qi = 0; qi < qs.size(); ++qi) {
        const SubstringRef q = qs[qi];
        if (q.empty()) {
            out[qi] = RootedResult{members_by_rank_[0], 0};
            continue;
        }
        if (q.start < 1 || q.end > idx_.m())
            throw std::invalid_argument("SuffixTrie: query out of range");
        order.emplace_back(idx_.tree().isa(q.start), qi);
    }
    radix_sort_pairs(order, idx_.m(), idx_.counters());
    std::vector<uint64_t> keys;
    keys.reserve(order.size());
    for (const auto& [r, qi] : order) keys.push_back(r);
    const std::vector<size_t> ranks = rank_list_.batched_rank(keys);

    for (uint32_t i = 0; i < order.size(); ++i) {
        const uint32_t qi = static_cast<uint32_t>(order[i].second);
        const SubstringRef q = qs[qi];
        const size_t r = ranks[i];
        uint32_t best_member = kNoNode;
        uint32_t best = 0;
        for (const size_t nb : {r, r + 1}) {  // rank r member is the predecessor
            if (nb < 1 || nb > k) continue;
            const uint32_t s = members_by_rank_[nb - 1];
            const uint32_t t = idx_.lcp(q.start, s);
            if (best_member == kNoNode || t > best) {
                best_member = s;
                best = t;
            }
        }
        out[qi] = RootedResult{best_member,
                               std::min<uint32_t>(best, static_cast<uint32_t>(q.length()))};
    }
    return out;
}

std::vector<SuffixTrie::UnrootedResult> SuffixTrie::unrooted_batch(
    const std::vector<std::pair<Locator, SubstringRef>>& qs) const {
    if (!with_wa_ || !with_light_)
        throw std::logic_error("SuffixTrie: unrooted queries need wa and light tries");
    std::vector<UnrootedResult> out(qs.size());

    struct Pending {
        uint32_t qi;
        uint32_t sigma_h;
        uint32_t t_h;
    };
    std::vector<Pending> pend;
    std::vector<WaQuery> waq;
    for (uint32_t qi = 0; qi < qs.size(); ++qi) {
        const auto& [start, q] = qs[qi];
        if (start.below >= node_count() || start.depth > depth_[start.below])
            throw std::invalid_argument("SuffixTrie: bad locator");
        const uint32_t sigma_h = hp_suffix_[start.below];
        if (sigma_h == kNoNode) throw std::logic_error("SuffixTrie: position without members");
        if (q.empty()) {
            out[qi] = UnrootedResult{sigma_h, start.depth};
            continue;
        }
        const uint32_t t_h = std::min<uint32_t>(idx_.lcp(q.start, sigma_h + start.depth),
                                                static_cast<uint32_t>(q.length()));
        if (t_h == q.length()) {
            out[qi] = UnrootedResult{sigma_h, start.depth + t_h};
            continue;
        }
        pend.push_back(Pending{qi, sigma_h, start.depth + t_h});
        waq.push_back(WaQuery{leaf_by_suffix(sigma_h), start.depth + t_h});
    }

    const std::vector<uint32_t> warp = wa_.batched(waq);
    struct Sub {
        uint32_t qi;
        uint32_t z;
    };
    std::vector<std::vector<Sub>> by_trie(light_tries_.size());
    for (uint32_t i = 0; i < pend.size(); ++i) {
        const auto& pd = pend[i];
        const uint32_t w = warp[i];
        const uint32_t d_h = pd.t_h;  // absolute depth of the mismatch point
        out[pd.qi] = UnrootedResult{pd.sigma_h, d_h};
        if (w == kNoNode || depth_[w] > d_h) continue;  // inside an edge: no branching
        const uint32_t lt = light_trie_id_[w];
        if (lt == kNoNode) continue;  // no light subtrie: reading cannot resume
        by_trie[lt].push_back(Sub{pd.qi, w});
    }
    for (uint32_t lt = 0; lt < by_trie.size(); ++lt) {
        if (by_trie[lt].empty()) continue;
        std::vector<SubstringRef> sub;
        sub.reserve(by_trie[lt].size());
        for (const Sub& s : by_trie[lt]) {
            const auto& [start, q] = qs[s.qi];
            const uint32_t done = out[s.qi].depth - start.depth;  // chars already read
            sub.push_back(SubstringRef{q.start + done, q.end});
        }
        const auto rr = light_tries_[lt]->rooted_batch(sub);
        for (uint32_t i = 0; i < rr.size(); ++i) {
            const Sub& s = by_trie[lt][i];
            if (rr[i].member == kNoNode) continue;
            out[s.qi] = UnrootedResult{rr[i].member - depth_[s.z], out[s.qi].depth + rr[i].t};
        }
    }
    return out;
}

}  // namespace slpmatch
