#include "slpmatch/matcher.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace slpmatch {

VirtualConcat::VirtualConcat(PView view, std::array<SubstringRef, 3> parts)
    : view_(view), parts_(parts) {
    cum_[0] = 0;
    for (size_t k = 0; k < 3; ++k) {
        const SubstringRef& p = parts_[k];
        if (!p.empty() && (p.start < 1 || p.end > view_.m))
            throw std::invalid_argument("VirtualConcat: part out of range");
        cum_[k + 1] = cum_[k] + p.length();
    }
}

size_t VirtualConcat::part_of(uint64_t off) const {
    size_t k = 0;
    while (off >= cum_[k + 1]) ++k;
    return k;
}

uint8_t VirtualConcat::at(uint64_t i) const {
    size_t k = part_of(i - 1);
    return view_.at(uint32_t(parts_[k].start + (i - 1 - cum_[k])));
}

uint64_t VirtualConcat::match_prefix_at(SubstringRef sub, uint64_t off) const {
    const uint64_t need = sub.length();
    const uint64_t avail = off <= size() ? size() - off : 0;
    uint64_t got = 0;
    while (got < need && got < avail) {
        const size_t k = part_of(off + got);
        const uint64_t inner = off + got - cum_[k];
        const uint64_t room =
            std::min(need - got, parts_[k].length() - inner);
        const uint32_t l = view_.lcp(uint32_t(sub.start + got),
                                     uint32_t(parts_[k].start + inner));
        const uint64_t step = std::min<uint64_t>(l, room);
        got += step;
        if (step < room) break;
    }
    return got;
}

uint64_t VirtualConcat::lcp_at(uint64_t o1, uint64_t o2) const {
    uint64_t r = 0;
    while (o1 + r < size() && o2 + r < size()) {
        const size_t k1 = part_of(o1 + r);
        const size_t k2 = part_of(o2 + r);
        const uint64_t i1 = o1 + r - cum_[k1];
        const uint64_t i2 = o2 + r - cum_[k2];
        const uint64_t room =
            std::min(parts_[k1].length() - i1, parts_[k2].length() - i2);
        const uint32_t l = view_.lcp(uint32_t(parts_[k1].start + i1),
                                     uint32_t(parts_[k2].start + i2));
        const uint64_t step = std::min<uint64_t>(l, room);
        r += step;
        if (step < room) break;
    }
    return r;
}

uint64_t VirtualConcat::lcs_at(uint64_t e1, uint64_t e2) const {
    uint64_t r = 0;
    while (r < e1 && r < e2) {
        const uint64_t q1 = e1 - r;  // 1-based positions of the next chars
        const uint64_t q2 = e2 - r;
        const size_t k1 = part_of(q1 - 1);
        const size_t k2 = part_of(q2 - 1);
        const uint64_t i1 = q1 - cum_[k1];  // 1-based within the part
        const uint64_t i2 = q2 - cum_[k2];
        const uint64_t room = std::min(i1, i2);
        const uint32_t l = view_.lcs(uint32_t(parts_[k1].start + i1 - 1),
                                     uint32_t(parts_[k2].start + i2 - 1));
        const uint64_t step = std::min<uint64_t>(l, room);
        r += step;
        if (step < room) break;
    }
    return r;
}

namespace {

// One piece of a rule's boundary window, kept as at most three pattern
// substrings. `base` is the piece's offset inside the window, `trim_left`
// the number of characters already cut off the left end; both feed into the
// reported witness offset. `subidx` orders the pieces of a window.
struct Triple {
    std::array<SubstringRef, 3> parts;
    uint64_t base = 0;
    uint64_t trim_left = 0;
    uint32_t rule = 1;
    uint8_t subidx = 0;
    bool alive = true;
};

struct Hit {
    size_t tid = 0;
    uint64_t pos = 0;  // 0-based offset in the current, trimmed triple
};

uint64_t triple_len(const Triple& t) {
    return t.parts[0].length() + t.parts[1].length() + t.parts[2].length();
}

// Occurrence probe when the leading part of `vc` is a prefix of the viewed
// pattern, of length f >= 1, and vc.size() >= m. By periodicity, the only
// possible occurrence starts in [0, f/2] are the multiples of the period d
// of that prefix, and testing the largest feasible one decides them all:
// either it extends, or the observed mismatch pins down the single earlier
// multiple that could still work. Returns a verified occurrence start, or
// nothing, which certifies that no occurrence starts within [0, f/2].
std::optional<uint64_t> case1_round(const VirtualConcat& vc, uint32_t f) {
    const PView& view = vc.view();
    const uint32_t m = view.m;
    const uint64_t len = vc.size();
    const uint32_t d = view.period_prefix(f);
    const uint32_t k = d + view.lcp(1, d + 1);  // longest d-periodic prefix
    const uint64_t amax = std::min<uint64_t>(f / (2ull * d), (len - m) / d);
    const uint64_t pos_hi = amax * d;
    const uint64_t t = vc.match_prefix_at(SubstringRef{1, k}, pos_hi);
    if (t == k) {
        if (k == m) return pos_hi;
        if (vc.match_prefix_at(SubstringRef{k + 1, m}, pos_hi + k) == m - k)
            return pos_hi;
        return std::nullopt;
    }
    // The text is d-periodic on [1, num]; candidates whose k+1st character
    // falls inside that range are dead, which leaves at most one survivor.
    const uint64_t num = pos_hi + t;
    if (num < k) return std::nullopt;
    const uint64_t pos = ((num - k) / d) * d;
    if (k == m) return pos;  // fully periodic pattern fits inside [1, num]
    if (vc.match_prefix_at(SubstringRef{k + 1, m}, pos + k) == m - k)
        return pos;
    return std::nullopt;
}

// Staged occurrence test over a set of triples. Each stage batches its index
// queries across all live triples and the scan stops at the first stage that
// produced a hit, reporting the smallest (rule, subidx) among them.
struct Pipeline {
    const PatternIndex& idx;
    std::vector<Triple>& tris;
    uint32_t m;

    std::optional<Hit> pick(const std::vector<Hit>& hits) const {
        if (hits.empty()) return std::nullopt;
        size_t best = 0;
        for (size_t i = 1; i < hits.size(); ++i) {
            const Triple& a = tris[hits[i].tid];
            const Triple& b = tris[hits[best].tid];
            if (std::make_pair(a.rule, a.subidx) <
                std::make_pair(b.rule, b.subidx))
                best = i;
        }
        return hits[best];
    }

    void prune() {
        for (Triple& t : tris)
            if (t.alive && triple_len(t) < m) t.alive = false;
    }

    // Replaces the leading part by its longest suffix that is a pattern
    // prefix and the trailing part by its longest prefix that is a pattern
    // suffix. No occurrence can reach into the dropped margins, and the
    // kept pieces are rewritten as pattern prefix/suffix references.
    void normalize_ends() {
        std::vector<PatternIndex::PrefSufRequest> reqs;
        std::vector<size_t> who;
        for (size_t i = 0; i < tris.size(); ++i) {
            if (!tris[i].alive) continue;
            reqs.push_back({tris[i].parts[0], false, true});
            reqs.push_back({tris[i].parts[2], true, false});
            who.push_back(i);
        }
        const auto res = idx.batched_pref_suf(reqs);
        for (size_t k = 0; k < who.size(); ++k) {
            Triple& t = tris[who[k]];
            const uint32_t keep0 = res[2 * k].suf;
            t.trim_left += t.parts[0].length() - keep0;
            t.parts[0] = keep0 ? SubstringRef{1, keep0} : kEmptyRef;
            const uint32_t keep2 = res[2 * k + 1].pref;
            t.parts[2] = keep2 ? SubstringRef{m - keep2 + 1, m} : kEmptyRef;
        }
        prune();
    }

    // Shrinks leading parts below m/4. A fruitless round certifies that no
    // occurrence starts in the first half of the leading part, so that half
    // can be trimmed; two rounds always suffice.
    std::optional<Hit> front_loop() {
        const PView fwd{&idx, false, m};
        for (int iter = 0;; ++iter) {
            std::vector<size_t> act;
            for (size_t i = 0; i < tris.size(); ++i)
                if (tris[i].alive && 4 * tris[i].parts[0].length() > m)
                    act.push_back(i);
            if (act.empty()) return std::nullopt;
            if (iter >= 3)
                throw std::logic_error("matcher: leading part failed to shrink");
            std::vector<Hit> hits;
            for (size_t i : act) {
                const VirtualConcat vc(fwd, tris[i].parts);
                if (auto g = case1_round(vc, uint32_t(tris[i].parts[0].length())))
                    hits.push_back({i, *g});
            }
            if (auto h = pick(hits)) return h;
            std::vector<PatternIndex::PrefSufRequest> reqs;
            for (size_t i : act) {
                const SubstringRef r = tris[i].parts[0];
                const uint32_t keep = uint32_t(r.length()) / 2;
                const SubstringRef half =
                    keep ? SubstringRef{r.end - keep + 1, r.end} : kEmptyRef;
                reqs.push_back({half, false, true});
            }
            const auto res = idx.batched_pref_suf(reqs);
            for (size_t k = 0; k < act.size(); ++k) {
                Triple& t = tris[act[k]];
                const uint32_t keep = res[k].suf;
                t.trim_left += t.parts[0].length() - keep;
                t.parts[0] = keep ? SubstringRef{1, keep} : kEmptyRef;
            }
            prune();
        }
    }

    // Mirror image of front_loop for the trailing parts; trimming happens on
    // the right, so witness offsets are unaffected.
    std::optional<Hit> back_loop() {
        const PView mir{&idx, true, m};
        for (int iter = 0;; ++iter) {
            std::vector<size_t> act;
            for (size_t i = 0; i < tris.size(); ++i)
                if (tris[i].alive && 4 * tris[i].parts[2].length() > m)
                    act.push_back(i);
            if (act.empty()) return std::nullopt;
            if (iter >= 3)
                throw std::logic_error("matcher: trailing part failed to shrink");
            std::vector<Hit> hits;
            for (size_t i : act) {
                const Triple& t = tris[i];
                const VirtualConcat vc(mir, {mir.to_view(t.parts[2]),
                                             mir.to_view(t.parts[1]),
                                             mir.to_view(t.parts[0])});
                if (auto g = case1_round(vc, uint32_t(t.parts[2].length())))
                    hits.push_back({i, vc.size() - *g - m});
            }
            if (auto h = pick(hits)) return h;
            std::vector<PatternIndex::PrefSufRequest> reqs;
            for (size_t i : act) {
                const SubstringRef r = tris[i].parts[2];
                const uint32_t keep = uint32_t(r.length()) / 2;
                const SubstringRef half =
                    keep ? SubstringRef{r.start, r.start + keep - 1} : kEmptyRef;
                reqs.push_back({half, true, false});
            }
            const auto res = idx.batched_pref_suf(reqs);
            for (size_t k = 0; k < act.size(); ++k) {
                Triple& t = tris[act[k]];
                const uint32_t keep = res[k].pref;
                t.parts[2] = keep ? SubstringRef{m - keep + 1, m} : kEmptyRef;
            }
            prune();
        }
    }

    // Direct check of the single candidate that puts the middle part at
    // pattern position q1: the pattern head must close the leading part and
    // the pattern tail must fit into the trailing part.
    std::optional<uint64_t> covering_direct(const Triple& t, uint32_t q1) const {
        const uint64_t lu = t.parts[0].length();
        const uint64_t lv = t.parts[1].length();
        const uint64_t lx = t.parts[2].length();
        if (q1 > lu + 1) return std::nullopt;
        if (q1 >= 2 && idx.lcs(q1 - 1, uint32_t(lu)) < q1 - 1)
            return std::nullopt;
        const int64_t tail = int64_t(m) - q1 - int64_t(lv) + 1;
        if (tail > 0) {
            if (uint64_t(tail) > lx) return std::nullopt;
            if (idx.lcp(uint32_t(q1 + lv), m - uint32_t(lx) + 1) <
                uint64_t(tail))
                return std::nullopt;
        }
        return lu - (q1 - 1);
    }

    // Candidates whose middle-part placements repeat with period d: aligns
    // the pattern's maximal d-periodic window around its leftmost middle
    // occurrence with the text's window around the middle part. A prefix
    // before the window forces the leftmost alignment, a suffix after it the
    // rightmost one; the survivor is verified in full.
    std::optional<uint64_t> covering_run(const Triple& t, uint32_t q,
                                         uint32_t d) const {
        const uint64_t lu = t.parts[0].length();
        const uint64_t lv = t.parts[1].length();
        const uint32_t el = (q >= 2) ? idx.lcs(q - 1, q + d - 1) : 0;
        const uint32_t er = idx.lcp(uint32_t(q + lv - d), uint32_t(q + lv));
        const uint64_t slen = lv + el + er;
        const uint64_t rlen = q - el - 1;
        const uint64_t tlen = m - (q + lv + er - 1);
        const PView fwd{&idx, false, m};
        const VirtualConcat vc(fwd, t.parts);
        const uint64_t fl = vc.lcs_at(lu, lu + d);
        const uint64_t fr = vc.lcp_at(lu + lv - d, lu + lv);
        const uint64_t zlen = fl + lv + fr;
        if (zlen < slen) return std::nullopt;
        const int64_t pi0 = int64_t(fl) - int64_t(el);
        int64_t pi;
        if (rlen > 0) {
            pi = 0;
        } else if (tlen > 0) {
            pi = int64_t(zlen - slen);
        } else {
            pi = pi0 % int64_t(d);
            if (pi < 0) pi += d;
        }
        if ((pi - pi0) % int64_t(d) != 0 || pi > int64_t(zlen - slen))
            return std::nullopt;
        const int64_t i = int64_t(lu - fl) + pi - int64_t(rlen);
        if (i < 0 || uint64_t(i) + m > triple_len(t)) return std::nullopt;
        if (vc.match_prefix_at(SubstringRef{1, m}, uint64_t(i)) != m)
            return std::nullopt;
        return uint64_t(i);
    }

    // Leading and trailing parts are at most m/4 long here, so the middle
    // part has length at least m/2. Occurrences either end in the middle
    // part, start in it, or cover it whole; the first two reduce to single
    // conclusive rounds, the third to at most one candidate placement.
    std::optional<Hit> case_two() {
        std::vector<size_t> act;
        for (size_t i = 0; i < tris.size(); ++i)
            if (tris[i].alive) act.push_back(i);
        if (act.empty()) return std::nullopt;

        std::vector<PatternIndex::PrefSufRequest> reqs;
        for (size_t i : act) reqs.push_back({tris[i].parts[1], true, true});
        const auto ps = idx.batched_pref_suf(reqs);

        const PView fwd{&idx, false, m};
        const PView mir{&idx, true, m};

        std::vector<Hit> hits;
        for (size_t k = 0; k < act.size(); ++k) {
            const Triple& t = tris[act[k]];
            const uint64_t lu = t.parts[0].length();
            const uint32_t plen = ps[k].pref;
            if (lu + plen < m) continue;
            const SubstringRef head{m - plen + 1, m};
            const VirtualConcat vc(
                mir, {mir.to_view(head), mir.to_view(t.parts[0]), kEmptyRef});
            if (auto g = case1_round(vc, plen))
                hits.push_back({act[k], lu + plen - *g - m});
        }
        if (auto h = pick(hits)) return h;

        hits.clear();
        for (size_t k = 0; k < act.size(); ++k) {
            const Triple& t = tris[act[k]];
            const uint64_t lv = t.parts[1].length();
            const uint64_t lx = t.parts[2].length();
            const uint32_t slen = ps[k].suf;
            if (slen + lx < m) continue;
            const VirtualConcat vc(
                fwd, {SubstringRef{1, slen}, t.parts[2], kEmptyRef});
            if (auto g = case1_round(vc, slen))
                hits.push_back({act[k], t.parts[0].length() + (lv - slen) + *g});
        }
        if (auto h = pick(hits)) return h;

        hits.clear();
        std::vector<WaQuery> wq;
        for (size_t i : act) wq.push_back(idx.locate_query(tris[i].parts[1]));
        const auto zv = idx.wa().batched(wq);
        for (size_t k = 0; k < act.size(); ++k) {
            const Triple& t = tris[act[k]];
            const uint64_t lv = t.parts[1].length();
            const SuffixTree& st = idx.tree();
            const uint32_t count = st.subtree_count(zv[k]);
            const uint32_t q1 = st.min1(zv[k]);
            std::optional<uint64_t> got;
            if (count == 1) {
                got = covering_direct(t, q1);
            } else {
                const uint32_t d = st.min2(zv[k]) - q1;
                if (2ull * d > lv)
                    got = covering_direct(t, q1);
                else
                    got = covering_run(t, q1, d);
            }
            if (got) hits.push_back({act[k], *got});
        }
        return pick(hits);
    }

    std::optional<Hit> run() {
        normalize_ends();
        if (auto h = front_loop()) return h;
        if (auto h = back_loop()) return h;
        return case_two();
    }
};

constexpr uint64_t kExactCap = uint64_t(1) << 62;

// 0-based start of the recorded instance of rule r inside the expansion of
// rule 1, following the referrer chain; empty once any prefix length
// saturates the cap.
std::optional<uint64_t> rule_position(const Slp& slp,
                                      const std::vector<uint64_t>& exact,
                                      uint32_t r) {
    uint64_t pos = 0;
    for (uint32_t a = r; a != 1;) {
        const Slp::Referrer& ref = slp.referrer(a);
        if (ref.right_side) {
            const uint64_t left_len = exact[slp.rule(ref.rule).left];
            if (left_len >= kExactCap) return std::nullopt;
            pos = sat_add(pos, left_len, kExactCap);
            if (pos >= kExactCap) return std::nullopt;
        }
        a = ref.rule;
    }
    return pos;
}

}  // namespace

Matcher::Matcher(std::string pattern, Counters* counters)
    : pi_(std::move(pattern), counters), ci_(pi_) {}

std::vector<NonterminalInfo> Matcher::infos(const Slp& slp) const {
    std::vector<NonterminalInfo> info(slp.size() + 1);
    struct Pend {
        uint32_t rule;
        int kind;  // 0: both occur, 1: only left occurs, 2: only right
    };
    for (const std::vector<uint32_t>& layer : slp.layers()) {
        std::vector<ConcatIndex::Query> qs;
        std::vector<Pend> pend;
        for (uint32_t r : layer) {
            const Slp::Rule& rl = slp.rule(r);
            NonterminalInfo& out = info[r];
            if (rl.terminal) {
                const uint32_t fp = pi_.first_pos(rl.byte);
                if (fp) {
                    out.occurs = true;
                    out.s = {fp, fp};
                } else {
                    out.x = out.y = out.u = out.v = kEmptyRef;
                }
                continue;
            }
            const NonterminalInfo& lhs = info[rl.left];
            const NonterminalInfo& rhs = info[rl.right];
            if (lhs.occurs && rhs.occurs) {
                pend.push_back({r, 0});
                qs.push_back({lhs.s, rhs.s});
            } else if (lhs.occurs) {
                pend.push_back({r, 1});
                qs.push_back({lhs.s, rhs.x});
            } else if (rhs.occurs) {
                pend.push_back({r, 2});
                qs.push_back({lhs.v, rhs.s});
            } else {
                out.x = lhs.x;
                out.y = lhs.y;
                out.u = rhs.u;
                out.v = rhs.v;
            }
        }
        const auto res = ci_.batched(qs);
        for (size_t i = 0; i < pend.size(); ++i) {
            const Slp::Rule& rl = slp.rule(pend[i].rule);
            const NonterminalInfo& lhs = info[rl.left];
            const NonterminalInfo& rhs = info[rl.right];
            NonterminalInfo& out = info[pend[i].rule];
            const std::optional<uint32_t>& o = res[i];
            switch (pend[i].kind) {
                case 0:
                    if (o) {
                        out.occurs = true;
                        const uint32_t len =
                            uint32_t(lhs.s.length() + rhs.s.length());
                        out.s = {*o + 1, *o + len};
                    } else {
                        out.x = lhs.s;
                        out.y = rhs.s;
                        out.u = lhs.s;
                        out.v = rhs.s;
                    }
                    break;
                case 1:
                    // The right side does not occur, so neither does the
                    // whole rule; only the prefix pair needs gluing.
                    out.u = rhs.u;
                    out.v = rhs.v;
                    if (o) {
                        const uint32_t len =
                            uint32_t(lhs.s.length() + rhs.x.length());
                        out.x = {*o + 1, *o + len};
                        out.y = rhs.y;
                    } else {
                        out.x = lhs.s;
                        out.y = rhs.x;
                    }
                    break;
                case 2:
                    out.x = lhs.x;
                    out.y = lhs.y;
                    if (o) {
                        const uint32_t len =
                            uint32_t(lhs.v.length() + rhs.s.length());
                        out.u = lhs.u;
                        out.v = {*o + 1, *o + len};
                    } else {
                        out.u = lhs.v;
                        out.v = rhs.s;
                    }
                    break;
            }
        }
    }
    return info;
}

MatchResult Matcher::match(const Slp& slp) const {
    const uint32_t m = pi_.m();
    MatchResult out;
    const std::vector<uint64_t> capped = slp.lengths(4ull * m + 4);
    if (capped[1] < m) return out;

    if (m == 1) {
        for (uint32_t r = 1; r <= slp.size(); ++r) {
            const Slp::Rule& rl = slp.rule(r);
            if (rl.terminal && rl.byte == uint8_t(pi_.at(1))) {
                out.found = true;
                out.witness_rule = r;
                out.witness_offset = 0;
                out.occurrence =
                    rule_position(slp, slp.lengths(kExactCap), r);
                return out;
            }
        }
        return out;
    }

    const std::vector<NonterminalInfo> info = infos(slp);

    // Boundary windows: for each binary rule, the suffix cover of the left
    // child glued to the prefix cover of the right child. If the two middle
    // pieces occur together in the pattern the window keeps one piece,
    // otherwise it splits into two overlapping triples.
    std::vector<Triple> tris;
    struct PendQ {
        uint32_t rule;
        SubstringRef u, v, x, y;
    };
    std::vector<PendQ> pq;
    std::vector<ConcatIndex::Query> qs;
    for (uint32_t r = 1; r <= slp.size(); ++r) {
        const Slp::Rule& rl = slp.rule(r);
        if (rl.terminal) continue;
        const NonterminalInfo& lhs = info[rl.left];
        const NonterminalInfo& rhs = info[rl.right];
        const SubstringRef u = lhs.occurs ? kEmptyRef : lhs.u;
        const SubstringRef v = lhs.occurs ? lhs.s : lhs.v;
        const SubstringRef x = rhs.occurs ? rhs.s : rhs.x;
        const SubstringRef y = rhs.occurs ? kEmptyRef : rhs.y;
        if (v.empty() && x.empty())
            tris.push_back({{u, y, kEmptyRef}, 0, 0, r, 0, true});
        else if (v.empty())
            tris.push_back({{u, x, y}, 0, 0, r, 0, true});
        else if (x.empty())
            tris.push_back({{u, v, y}, 0, 0, r, 0, true});
        else {
            pq.push_back({r, u, v, x, y});
            qs.push_back({v, x});
        }
    }
    const auto glue = ci_.batched(qs);
    for (size_t i = 0; i < pq.size(); ++i) {
        const PendQ& q = pq[i];
        if (glue[i]) {
            const uint32_t len = uint32_t(q.v.length() + q.x.length());
            const SubstringRef w{*glue[i] + 1, *glue[i] + len};
            tris.push_back({{q.u, w, q.y}, 0, 0, q.rule, 0, true});
        } else {
            tris.push_back({{q.u, q.v, q.x}, 0, 0, q.rule, 0, true});
            tris.push_back({{q.v, q.x, q.y}, q.u.length(), 0, q.rule, 1, true});
        }
    }

    Pipeline pipe{pi_, tris, m};
    const std::optional<Hit> hit = pipe.run();
    if (!hit) return out;

    const Triple& t = tris[hit->tid];
    out.found = true;
    out.witness_rule = t.rule;
    out.witness_offset = t.base + t.trim_left + hit->pos;

    const Slp::Rule& rl = slp.rule(t.rule);
    const NonterminalInfo& lhs = info[rl.left];
    const uint64_t cover =
        lhs.occurs ? lhs.s.length() : lhs.u.length() + lhs.v.length();
    const std::vector<uint64_t> exact = slp.lengths(kExactCap);
    if (const auto start = rule_position(slp, exact, t.rule)) {
        if (exact[rl.left] < kExactCap) {
            uint64_t pos = sat_add(*start, exact[rl.left], kExactCap);
            if (pos < kExactCap) {
                pos = pos - cover + out.witness_offset;
                if (pos < kExactCap) out.occurrence = pos;
            }
        }
    }
    return out;
}

std::optional<uint64_t> Matcher::test_triple(SubstringRef a, SubstringRef b,
                                             SubstringRef c) const {
    for (const SubstringRef r : {a, b, c})
        if (!r.empty() && (r.start < 1 || r.end > pi_.m()))
            throw std::invalid_argument("test_triple: reference out of range");
    std::vector<Triple> tris{{{a, b, c}, 0, 0, 1, 0, true}};
    Pipeline pipe{pi_, tris, pi_.m()};
    const std::optional<Hit> hit = pipe.run();
    if (!hit) return std::nullopt;
    return tris[hit->tid].trim_left + hit->pos;
}

}  // namespace slpmatch
