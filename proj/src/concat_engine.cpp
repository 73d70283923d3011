#include "slpmatch/concat_engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace slpmatch {

namespace {

uint32_t floor_log2(uint32_t v) { return std::bit_width(v) - 1; }
uint32_t ceil_log2(uint32_t v) { return v <= 1 ? 0 : std::bit_width(v - 1); }

void check_ref(SubstringRef r, uint32_t m) {
    if (r.empty()) return;
    if (r.start < 1 || r.end > m) throw std::invalid_argument("concat query out of range");
}

}  // namespace

ConcatIndex::ConcatIndex(const PatternIndex& idx) : idx_(idx) {
    const SuffixTree& st = idx.tree();
    const SuffixTree& rst = idx.rtree();
    const uint32_t m = idx.m();
    x_ = std::max<uint32_t>(1, floor_log2(m));
    tau_ = (m < 4) ? 1 : ceil_log2(m);

    std::vector<uint32_t> par(st.node_count());
    for (uint32_t v = 0; v < st.node_count(); ++v) par[v] = st.parent(v);
    dec_ = XDecomposition::build(par, st.preorder(), x_);

    std::vector<char> has_sk_child(st.node_count(), 0);
    for (uint32_t v = 0; v < st.node_count(); ++v)
        if (par[v] != kNoNode && dec_.skeleton[v]) has_sk_child[par[v]] = 1;

    // Decomposition leaves each contribute one representative suffix; every
    // other skeleton node inherits one from below.
    s_suffix_.assign(st.node_count(), kNoNode);
    boundary_by_suffix_.assign(m + 2, kNoNode);
    std::vector<uint32_t> reps;
    const auto& pre = st.preorder();
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
        const uint32_t v = *it;
        if (!dec_.skeleton[v]) continue;
        if (!has_sk_child[v]) {
            const uint32_t lp = st.leafptr(v);  // kNoNode only on the terminator leaf
            s_suffix_[v] = lp;
            if (lp != kNoNode) {
                reps.push_back(lp);
                boundary_by_suffix_[lp] = st.depth(v);
            }
        } else {
            for (const auto& [sym, c] : st.children(v)) {
                if (dec_.skeleton[c] && s_suffix_[c] != kNoNode) {
                    s_suffix_[v] = s_suffix_[c];
                    break;
                }
            }
        }
    }
    trie_s_ = std::make_unique<SuffixTrie>(idx, std::move(reps), true, true);

    // Bottom tries: per subtree hanging off the skeleton, the suffix tails
    // cut at the skeleton parent's depth.
    bottom_id_.assign(st.node_count(), kNoNode);
    std::vector<uint32_t> tails, stck;
    for (const uint32_t w : pre) {
        if (dec_.skeleton[w] || !dec_.skeleton[par[w]]) continue;
        const uint32_t cut = st.depth(par[w]);
        tails.clear();
        stck.assign(1, w);
        while (!stck.empty()) {
            const uint32_t u = stck.back();
            stck.pop_back();
            if (st.is_leaf(u)) {
                if (st.leaf_suffix(u) <= m && st.leaf_suffix(u) + cut <= m)
                    tails.push_back(st.leaf_suffix(u) + cut);
            } else {
                for (const auto& [sym, c] : st.children(u)) stck.push_back(c);
            }
        }
        if (tails.empty()) continue;
        bottom_id_[w] = static_cast<uint32_t>(bottom_tries_.size());
        bottom_tries_.push_back(std::make_unique<SuffixTrie>(idx, tails, false, false));
    }

    if (tau_ >= 2) {
        f_rev_.assign(rst.node_count(), 0);
        first_rare_.assign(rst.node_count(), kNoNode);
        for (const uint32_t v : rst.preorder()) {
            const uint32_t pv = rst.parent(v);
            if (rst.subtree_count(v) >= tau_) {
                f_rev_[v] = rst.depth(v);
            } else {
                f_rev_[v] = (pv == kNoNode) ? 0 : f_rev_[pv];
                first_rare_[v] = (pv != kNoNode && first_rare_[pv] != kNoNode)
                                     ? first_rare_[pv]
                                     : v;
            }
        }
        // One point per position right after a frequent-to-rare transition,
        // keyed by (what follows j, what precedes the transition), grouped by
        // the locus of the shortest rare substring ending at j.
        std::unordered_map<uint32_t, std::vector<MicroGrid::Point>> pts;
        for (uint32_t j = 1; j <= m; ++j) {
            const uint32_t leaf = rst.leaf_of(m - j + 1);
            const uint32_t fj = f_rev_[leaf];
            if (fj >= j) continue;
            const uint32_t g = first_rare_[leaf];
            if (g == kNoNode) throw std::logic_error("rare transition without rare locus");
            const uint32_t q = j - fj - 1;  // last position before the rare stretch
            const uint64_t xpt = (j == m) ? 0 : st.isa(j + 1);
            const uint64_t ypt = (q == 0) ? 0 : rst.isa(m - q + 1);
            pts[g].push_back(MicroGrid::Point{xpt, ypt});
        }
        for (auto& [g, v] : pts) {
            if (v.size() + 1 > tau_) throw std::logic_error("rare group exceeds threshold");
            grid_by_group_.emplace(g, MicroGrid::build(std::move(v)));
        }
    }
}

std::optional<uint32_t> ConcatIndex::query_one(SubstringRef u, SubstringRef v) const {
    return batched({Query{u, v}})[0];
}

std::vector<std::optional<uint32_t>> ConcatIndex::batched(const std::vector<Query>& qs) const {
    count_events(idx_.counters(), &Counters::concat_queries, qs.size());
    const SuffixTree& st = idx_.tree();
    const SuffixTree& rst = idx_.rtree();
    const uint32_t m = idx_.m();
    std::vector<std::optional<uint32_t>> out(qs.size());

    std::vector<uint32_t> pending;
    std::vector<WaQuery> loc_u;
    for (uint32_t qi = 0; qi < qs.size(); ++qi) {
        const auto& [u, v] = qs[qi];
        check_ref(u, m);
        check_ref(v, m);
        if (u.length() + v.length() > m) continue;  // stays nullopt
        if (u.empty() && v.empty()) {
            out[qi] = 0;
        } else if (u.empty()) {
            out[qi] = v.start - 1;
        } else if (v.empty()) {
            out[qi] = u.start - 1;
        } else {
            pending.push_back(qi);
            loc_u.push_back(idx_.locate_query(u));
        }
    }
    const std::vector<uint32_t> zu = idx_.wa().batched(loc_u);

    struct Freq {
        uint32_t qi;
        uint32_t zu;
    };
    std::vector<Freq> freq;
    std::vector<uint32_t> rare;
    for (uint32_t i = 0; i < pending.size(); ++i) {
        if (st.subtree_count(zu[i]) >= tau_)
            freq.push_back(Freq{pending[i], zu[i]});
        else
            rare.push_back(pending[i]);
    }

    // Frequent side: hop into the sparse trie at u's locus, read v, then
    // resolve the first mismatch back in the suffix tree.
    std::vector<WaQuery> f1;
    f1.reserve(freq.size());
    for (const Freq& f : freq) {
        if (!dec_.skeleton[f.zu]) throw std::logic_error("frequent locus off the skeleton");
        const uint32_t ss = s_suffix_[f.zu];
        if (ss == kNoNode) throw std::logic_error("skeleton node without representative");
        f1.push_back(WaQuery{trie_s_->leaf_by_suffix(ss), qs[f.qi].u.length()});
    }
    const std::vector<uint32_t> nu = trie_s_->wa_batched(f1);

    std::vector<std::pair<Locator, SubstringRef>> f2;
    f2.reserve(freq.size());
    for (uint32_t i = 0; i < freq.size(); ++i)
        f2.emplace_back(Locator{nu[i], static_cast<uint32_t>(qs[freq[i].qi].u.length())},
                        qs[freq[i].qi].v);
    const auto reach = trie_s_->unrooted_batch(f2);

    struct Mis {
        uint32_t qi;
        uint32_t sigma;
        uint32_t dstar;
    };
    std::vector<Mis> mis;
    std::vector<WaQuery> f3;
    for (uint32_t i = 0; i < freq.size(); ++i) {
        const uint32_t qi = freq[i].qi;
        const uint32_t ulen = static_cast<uint32_t>(qs[qi].u.length());
        const uint32_t vlen = static_cast<uint32_t>(qs[qi].v.length());
        const auto& [sigma, draw] = reach[i];
        if (draw == ulen + vlen) {
            out[qi] = sigma - 1;  // a whole real suffix starts with uv
            continue;
        }
        const uint32_t bound = boundary_by_suffix_[sigma];
        if (bound == kNoNode) throw std::logic_error("representative without boundary");
        const uint32_t dstar = std::min(draw, bound);
        if (dstar < ulen) throw std::logic_error("boundary above u locus");
        mis.push_back(Mis{qi, sigma, dstar});
        f3.push_back(WaQuery{st.leaf_of(sigma), dstar});
    }
    const std::vector<uint32_t> wbar = idx_.wa().batched(f3);

    std::unordered_map<uint32_t, std::vector<std::pair<uint32_t, uint32_t>>> by_bottom;
    for (uint32_t i = 0; i < mis.size(); ++i) {
        const auto& [qi, sigma, dstar] = mis[i];
        const SubstringRef v = qs[qi].v;
        const uint32_t tstar = dstar - static_cast<uint32_t>(qs[qi].u.length());
        if (st.depth(wbar[i]) > dstar) continue;  // mid-edge mismatch, nothing branches
        const uint8_t c = idx_.at(v.start + tstar);
        const auto& ch = st.children(wbar[i]);
        const auto it = ch.find(static_cast<int32_t>(c));
        if (it == ch.end()) continue;
        const uint32_t w = it->second;
        if (dec_.skeleton[w]) throw std::logic_error("mismatch continuation on the skeleton");
        if (bottom_id_[w] == kNoNode) throw std::logic_error("missing bottom trie");
        by_bottom[bottom_id_[w]].emplace_back(i, dstar);
    }
    for (const auto& [bid, items] : by_bottom) {
        std::vector<SubstringRef> sub;
        sub.reserve(items.size());
        for (const auto& [i, dstar] : items) {
            const SubstringRef v = qs[mis[i].qi].v;
            const uint32_t tstar = dstar - static_cast<uint32_t>(qs[mis[i].qi].u.length());
            sub.push_back(SubstringRef{v.start + tstar, v.end});
        }
        const auto rr = bottom_tries_[bid]->rooted_batch(sub);
        for (uint32_t k = 0; k < items.size(); ++k) {
            if (rr[k].t == sub[k].length()) out[mis[items[k].first].qi] = rr[k].member - items[k].second - 1;
        }
    }

    // Rare side: split u at its longest frequent suffix, identify the group
    // of the one-char-longer rare suffix, probe that group's grid.
    std::vector<WaQuery> r1;
    r1.reserve(rare.size());
    for (const uint32_t qi : rare) r1.push_back(idx_.locate_query_rev(qs[qi].u));
    const std::vector<uint32_t> zru = idx_.rwa().batched(r1);

    std::vector<WaQuery> r2;
    std::vector<uint32_t> u2len(rare.size());
    for (uint32_t i = 0; i < rare.size(); ++i) {
        const SubstringRef u = qs[rare[i]].u;
        const uint32_t zp = rst.parent(zru[i]);
        const uint32_t u2 = f_rev_[zp];
        if (u2 >= u.length()) throw std::logic_error("rare u with frequent cover");
        u2len[i] = u2;
        r2.push_back(WaQuery{r1[i].node, u2 + 1});
    }
    const std::vector<uint32_t> grp = idx_.rwa().batched(r2);

    std::vector<WaQuery> r3;
    std::vector<uint32_t> r3of;
    for (uint32_t i = 0; i < rare.size(); ++i) {
        const SubstringRef u = qs[rare[i]].u;
        const uint32_t rest = static_cast<uint32_t>(u.length()) - u2len[i] - 1;  // |u0|
        if (rest == 0) continue;
        r3.push_back(idx_.locate_query_rev(SubstringRef{u.start, u.start + rest - 1}));
        r3of.push_back(i);
    }
    const std::vector<uint32_t> z0 = idx_.rwa().batched(r3);

    std::vector<WaQuery> r4;
    r4.reserve(rare.size());
    for (const uint32_t qi : rare) r4.push_back(idx_.locate_query(qs[qi].v));
    const std::vector<uint32_t> zv = idx_.wa().batched(r4);

    std::vector<std::pair<uint32_t, uint32_t>> yrange(rare.size(), {0, m});
    for (uint32_t k = 0; k < r3.size(); ++k) yrange[r3of[k]] = rst.leaf_range(z0[k]);
    for (uint32_t i = 0; i < rare.size(); ++i) {
        const uint32_t qi = rare[i];
        const uint32_t g = grp[i];
        if (rst.depth(rst.parent(g)) != u2len[i])
            throw std::logic_error("frequent-to-rare transition not explicit");
        const auto git = grid_by_group_.find(g);
        if (git == grid_by_group_.end()) throw std::logic_error("rare group without grid");
        const auto [xlo, xhi] = st.leaf_range(zv[i]);
        const auto [ylo, yhi] = yrange[i];
        if (xlo > xhi || ylo > yhi) continue;
        const auto hit = git->second.query(xlo, xhi, ylo, yhi);
        if (!hit) continue;
        const uint32_t j = (hit->x == 0) ? m : st.sa(static_cast<uint32_t>(hit->x)) - 1;
        out[qi] = j - static_cast<uint32_t>(qs[qi].u.length());
    }
    return out;
}

}  // namespace slpmatch
