#include "slpmatch/pattern_index.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace slpmatch {

namespace {

constexpr int32_t kOpenEnd = std::numeric_limits<int32_t>::max();

// Classic online (Ukkonen) construction over int symbols.
struct Builder {
    struct Node {
        int32_t start;
        int32_t end;  // exclusive; kOpenEnd for growing leaves
        uint32_t slink = 0;
        std::map<int32_t, uint32_t> next;
    };

    std::vector<int32_t> text;
    std::vector<Node> nodes;
    uint32_t active_node = 0;
    int32_t active_edge = 0;
    int32_t active_len = 0;
    int32_t remainder = 0;
    int32_t pos = -1;
    uint32_t need_link = 0;

    explicit Builder(std::string_view s) {
        text.reserve(s.size() + 1);
        for (char c : s) text.push_back(static_cast<uint8_t>(c));
        text.push_back(SuffixTree::kTerminator);
        nodes.push_back(Node{-1, -1, 0, {}});
        for (size_t i = 0; i < text.size(); ++i) extend(static_cast<int32_t>(i));
    }

    uint32_t new_node(int32_t start, int32_t end = kOpenEnd) {
        nodes.push_back(Node{start, end, 0, {}});
        return static_cast<uint32_t>(nodes.size() - 1);
    }

    int32_t edge_length(uint32_t v) const {
        return std::min(nodes[v].end, pos + 1) - nodes[v].start;
    }

    void add_link(uint32_t v) {
        if (need_link != 0) nodes[need_link].slink = v;
        need_link = v;
    }

    void extend(int32_t i) {
        pos = i;
        need_link = 0;
        ++remainder;
        while (remainder > 0) {
            if (active_len == 0) active_edge = pos;
            auto it = nodes[active_node].next.find(text[active_edge]);
            if (it == nodes[active_node].next.end()) {
                uint32_t leaf = new_node(pos);
                nodes[active_node].next[text[active_edge]] = leaf;
                add_link(active_node);
            } else {
                uint32_t nxt = it->second;
                int32_t el = edge_length(nxt);
                if (active_len >= el) {
                    active_node = nxt;
                    active_edge += el;
                    active_len -= el;
                    continue;
                }
                if (text[nodes[nxt].start + active_len] == text[pos]) {
                    ++active_len;
                    add_link(active_node);
                    break;
                }
                uint32_t split = new_node(nodes[nxt].start, nodes[nxt].start + active_len);
                nodes[active_node].next[text[active_edge]] = split;
                uint32_t leaf = new_node(pos);
                nodes[split].next[text[pos]] = leaf;
                nodes[nxt].start += active_len;
                nodes[split].next[text[nodes[nxt].start]] = nxt;
                add_link(split);
            }
            --remainder;
            if (active_node == 0 && active_len > 0) {
                --active_len;
                active_edge = pos - remainder + 1;
            } else if (active_node != 0) {
                active_node = nodes[active_node].slink;
            }
        }
    }
};

}  // namespace

SuffixTree::SuffixTree(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("suffix tree over empty string");
    Builder b(s);
    n_ = static_cast<uint32_t>(b.text.size());
    const uint32_t cnt = static_cast<uint32_t>(b.nodes.size());
    const int32_t n = static_cast<int32_t>(n_);

    parent_.assign(cnt, kNoNode);
    depth_.assign(cnt, 0);
    leaf_suffix_.assign(cnt, kNoNode);
    children_.resize(cnt);
    leaf_of_.assign(n_ + 1, kNoNode);
    isa_.assign(n_ + 1, 0);
    sa_.assign(m() + 1, 0);
    preorder_.reserve(cnt);
    euler_.reserve(2 * cnt);
    first_.assign(cnt, 0);
    tdepth_.assign(cnt, 0);

    // Iterative DFS in symbol order; the terminator edge sorts first.
    uint32_t next_rank = 1;
    struct Frame {
        uint32_t node;
        std::map<int32_t, uint32_t>::const_iterator it;
    };
    for (auto& node : b.nodes)
        if (node.end == kOpenEnd) node.end = n;
    std::vector<Frame> stack;
    first_[0] = 0;
    euler_.push_back(0);
    preorder_.push_back(0);
    stack.push_back({0, b.nodes[0].next.cbegin()});
    while (!stack.empty()) {
        Frame& f = stack.back();
        uint32_t v = f.node;
        if (f.it == b.nodes[v].next.cend()) {
            if (b.nodes[v].next.empty()) {
                uint32_t suf = n_ - depth_[v] + 1;
                leaf_suffix_[v] = suf;
                leaf_of_[suf] = v;
                if (suf <= m()) {
                    sa_[next_rank] = suf;
                    isa_[suf] = next_rank;
                    ++next_rank;
                }
            }
            stack.pop_back();
            if (!stack.empty()) euler_.push_back(stack.back().node);
            continue;
        }
        uint32_t c = f.it->second;
        ++f.it;
        parent_[c] = v;
        depth_[c] = depth_[v] + static_cast<uint32_t>(b.nodes[c].end - b.nodes[c].start);
        tdepth_[c] = tdepth_[v] + 1;
        children_[v].emplace(b.text[b.nodes[c].start], c);
        preorder_.push_back(c);
        first_[c] = static_cast<uint32_t>(euler_.size());
        euler_.push_back(c);
        stack.push_back({c, b.nodes[c].next.cbegin()});
    }
    if (next_rank != m() + 1 || preorder_.size() != cnt)
        throw std::logic_error("suffix tree finalize incomplete");

    // Subtree aggregates over real leaves, bottom-up.
    count_.assign(cnt, 0);
    range_lo_.assign(cnt, kNoNode);
    range_hi_.assign(cnt, 0);
    min1_.assign(cnt, kNoNode);
    min2_.assign(cnt, kNoNode);
    for (auto it = preorder_.rbegin(); it != preorder_.rend(); ++it) {
        uint32_t v = *it;
        if (children_[v].empty() && leaf_suffix_[v] <= m()) {
            count_[v] = 1;
            range_lo_[v] = range_hi_[v] = isa_[leaf_suffix_[v]];
            min1_[v] = leaf_suffix_[v];
        }
        uint32_t par = parent_[v];
        if (par == kNoNode) continue;
        count_[par] += count_[v];
        if (count_[v] > 0) {
            range_lo_[par] = std::min(range_lo_[par], range_lo_[v]);
            range_hi_[par] = std::max(range_hi_[par], range_hi_[v]);
        }
        // Merge the two smallest suffix starts.
        for (uint32_t cand : {min1_[v], min2_[v]}) {
            if (cand == kNoNode) break;
            if (cand < min1_[par]) {
                min2_[par] = min1_[par];
                min1_[par] = cand;
            } else if (cand < min2_[par]) {
                min2_[par] = cand;
            }
        }
    }
    for (uint32_t v = 0; v < cnt; ++v)
        if (range_lo_[v] == kNoNode) range_lo_[v] = 1;  // empty interval (1, 0)

    dollar_depth_.assign(cnt, 0);
    for (uint32_t v : preorder_) {
        uint32_t d = (parent_[v] == kNoNode) ? 0 : dollar_depth_[parent_[v]];
        if (children_[v].count(kTerminator)) d = depth_[v];
        dollar_depth_[v] = d;
    }

    build_lca();
}

void SuffixTree::build_lca() {
    const size_t e = euler_.size();
    uint32_t levels = std::bit_width(e) + 1;
    sparse_.assign(levels, {});
    sparse_[0] = euler_;
    for (uint32_t k = 1; (1u << k) <= e; ++k) {
        size_t half = 1u << (k - 1);
        sparse_[k].resize(e - (1u << k) + 1);
        for (size_t i = 0; i + (1u << k) <= e; ++i) {
            uint32_t a = sparse_[k - 1][i], b2 = sparse_[k - 1][i + half];
            sparse_[k][i] = tdepth_[a] <= tdepth_[b2] ? a : b2;
        }
    }
}

uint32_t SuffixTree::lca(uint32_t a, uint32_t b) const {
    uint32_t i = first_[a], j = first_[b];
    if (i > j) std::swap(i, j);
    uint32_t k = std::bit_width(j - i + 1) - 1;
    uint32_t u = sparse_[k][i], v = sparse_[k][j + 1 - (1u << k)];
    return tdepth_[u] <= tdepth_[v] ? u : v;
}

uint32_t SuffixTree::leafptr(uint32_t v) const {
    if (count_[v] == 0) return kNoNode;
    return sa_[range_lo_[v]];
}

namespace {

std::vector<uint32_t> failure_periods(std::string_view s) {
    const size_t n = s.size();
    std::vector<uint32_t> fail(n + 1, 0), per(n + 1, 0);
    for (size_t i = 1; i < n; ++i) {
        uint32_t k = fail[i];
        while (k > 0 && s[i] != s[k]) k = fail[k];
        if (s[i] == s[k]) ++k;
        fail[i + 1] = k;
    }
    for (size_t len = 1; len <= n; ++len) per[len] = static_cast<uint32_t>(len - fail[len]);
    return per;
}

std::vector<WaQuery> wa_queries_of(const std::vector<std::pair<uint32_t, WaQuery>>& tagged) {
    std::vector<WaQuery> qs;
    qs.reserve(tagged.size());
    for (const auto& t : tagged) qs.push_back(t.second);
    return qs;
}

const std::string& require_nonempty(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty pattern");
    return s;
}

WaStructure depth_wa(const SuffixTree& t, Counters* counters) {
    std::vector<uint32_t> par(t.node_count());
    std::vector<uint64_t> wt(t.node_count());
    for (uint32_t v = 0; v < t.node_count(); ++v) {
        par[v] = t.parent(v);
        wt[v] = t.depth(v);
    }
    return WaStructure::build(std::move(par), std::move(wt), 64, counters);
}

}  // namespace

PatternIndex::PatternIndex(std::string pattern, Counters* counters)
    : p_(std::move(pattern)),
      m_(static_cast<uint32_t>(p_.size())),
      counters_(counters),
      st_(require_nonempty(p_)),
      rst_(std::string(p_.rbegin(), p_.rend())) {
    wa_ = depth_wa(st_, counters_);
    rwa_ = depth_wa(rst_, counters_);

    pref_period_ = failure_periods(p_);
    std::vector<uint32_t> rev_per = failure_periods(std::string(p_.rbegin(), p_.rend()));
    suf_period_.assign(m_ + 2, 0);
    for (uint32_t k = 1; k <= m_; ++k) suf_period_[k] = rev_per[m_ - k + 1];

    for (uint32_t i = m_; i >= 1; --i) first_pos_[static_cast<uint8_t>(p_[i - 1])] = i;
}

uint32_t PatternIndex::lcp(uint32_t i, uint32_t j) const {
    if (i < 1 || j < 1 || i > m_ + 1 || j > m_ + 1) throw std::invalid_argument("lcp position");
    count_events(counters_, &Counters::lcp_calls);
    if (i == m_ + 1 || j == m_ + 1) return 0;
    if (i == j) return m_ - i + 1;
    return st_.depth(st_.lca(st_.leaf_of(i), st_.leaf_of(j)));
}

uint32_t PatternIndex::lcs(uint32_t i, uint32_t j) const {
    if (i > m_ || j > m_) throw std::invalid_argument("lcs position");
    count_events(counters_, &Counters::lcp_calls);
    if (i == 0 || j == 0) return 0;
    if (i == j) return i;
    return rst_.depth(rst_.lca(rst_.leaf_of(m_ - i + 1), rst_.leaf_of(m_ - j + 1)));
}

void PatternIndex::check_ref(SubstringRef ref) const {
    if (ref.empty()) return;
    if (ref.start < 1 || ref.end > m_ || ref.start > ref.end)
        throw std::invalid_argument("substring reference out of range");
}

WaQuery PatternIndex::locate_query(SubstringRef ref) const {
    check_ref(ref);
    if (ref.empty()) throw std::invalid_argument("cannot locate empty substring");
    return WaQuery{st_.leaf_of(ref.start), ref.length()};
}

WaQuery PatternIndex::locate_query_rev(SubstringRef ref) const {
    check_ref(ref);
    if (ref.empty()) throw std::invalid_argument("cannot locate empty substring");
    return WaQuery{rst_.leaf_of(m_ - ref.end + 1), ref.length()};
}

std::vector<PatternIndex::PrefSufResult> PatternIndex::batched_pref_suf(
    const std::vector<PrefSufRequest>& reqs) const {
    std::vector<PrefSufResult> out(reqs.size());
    std::vector<std::pair<uint32_t, WaQuery>> fwd, rev;
    for (uint32_t i = 0; i < reqs.size(); ++i) {
        const auto& r = reqs[i];
        check_ref(r.ref);
        if (r.ref.empty()) continue;
        uint64_t len = r.ref.length();
        if (r.want_pref) {
            // Whole ref already a suffix of p?
            if (lcs(r.ref.end, m_) >= len)
                out[i].pref = static_cast<uint32_t>(len);
            else
                fwd.emplace_back(i, locate_query(r.ref));
        }
        if (r.want_suf) {
            if (lcp(1, r.ref.start) >= len)
                out[i].suf = static_cast<uint32_t>(len);
            else
                rev.emplace_back(i, locate_query_rev(r.ref));
        }
    }
    std::vector<uint32_t> fans = wa_.batched(wa_queries_of(fwd));
    std::vector<uint32_t> rans = rwa_.batched(wa_queries_of(rev));
    for (uint32_t k = 0; k < fwd.size(); ++k) {
        uint32_t i = fwd[k].first;
        uint32_t z = fans[k];
        uint64_t len = reqs[i].ref.length();
        uint32_t q = (st_.depth(z) == len) ? z : st_.parent(z);
        out[i].pref = st_.dollar_depth(q);
    }
    for (uint32_t k = 0; k < rev.size(); ++k) {
        uint32_t i = rev[k].first;
        uint32_t z = rans[k];
        uint64_t len = reqs[i].ref.length();
        uint32_t q = (rst_.depth(z) == len) ? z : rst_.parent(z);
        out[i].suf = rst_.dollar_depth(q);
    }
    return out;
}

}  // namespace slpmatch
