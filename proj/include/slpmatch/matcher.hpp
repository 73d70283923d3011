#ifndef SLPMATCH_MATCHER_HPP
#define SLPMATCH_MATCHER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slpmatch/common.hpp"
#include "slpmatch/concat_engine.hpp"
#include "slpmatch/pattern_index.hpp"
#include "slpmatch/slp.hpp"

namespace slpmatch {

// Matching summary for one rule. When the expansion occurs in the pattern,
// `s` references one such occurrence and has the expansion's exact length.
// Otherwise the rule keeps two cover pairs: string(x)string(y) is a prefix of
// the expansion, at least as long as every expansion prefix that is a pattern
// suffix (only lengths up to m-1 matter); (u, v) is the mirrored pair for
// expansion suffixes that are pattern prefixes.
struct NonterminalInfo {
    bool occurs = false;
    SubstringRef s;
    SubstringRef x, y;
    SubstringRef u, v;
};

struct MatchResult {
    bool found = false;
    // Rule whose boundary window contains the reported occurrence (for a
    // one-byte pattern, the terminal rule itself) and the 0-based offset of
    // the occurrence inside that window.
    uint32_t witness_rule = 0;
    uint64_t witness_offset = 0;
    // 0-based position inside the expansion of rule 1; empty when the exact
    // arithmetic would overflow the supported range (lengths beyond 2^62).
    std::optional<uint64_t> occurrence;
};

// The pattern, or its reversal, addressed 1-based without materializing the
// reversed bytes. All queries are answered by the underlying index.
struct PView {
    const PatternIndex* idx = nullptr;
    bool mirrored = false;
    uint32_t m = 0;

    uint8_t at(uint32_t i) const { return idx->at(mirrored ? m - i + 1 : i); }
    // Suffix-vs-suffix comparison in view coordinates, i, j in 1..m+1.
    uint32_t lcp(uint32_t i, uint32_t j) const {
        return mirrored ? idx->lcs(m - i + 1, m - j + 1) : idx->lcp(i, j);
    }
    // Prefix-vs-prefix comparison (longest common suffix), i, j in 0..m.
    uint32_t lcs(uint32_t i, uint32_t j) const {
        return mirrored ? idx->lcp(m - i + 1, m - j + 1) : idx->lcs(i, j);
    }
    // Shortest period of the first `len` viewed characters, len in 1..m.
    uint32_t period_prefix(uint32_t len) const {
        return mirrored ? idx->suf_period(m - len + 1) : idx->pref_period(len);
    }
    // Maps a forward reference to the reference of the same bytes reversed.
    SubstringRef to_view(SubstringRef fwd) const {
        if (fwd.empty()) return kEmptyRef;
        return mirrored ? SubstringRef{m - fwd.end + 1, m - fwd.start + 1} : fwd;
    }
};

// Concatenation of at most three pattern substrings under a view. Nothing is
// materialized; every comparison costs O(1) index queries because each step
// consumes a whole part of one operand.
class VirtualConcat {
  public:
    VirtualConcat(PView view, std::array<SubstringRef, 3> parts);

    const PView& view() const { return view_; }
    uint64_t size() const { return cum_[3]; }
    uint8_t at(uint64_t i) const;  // 1-based, i <= size()

    // Characters of view substring `sub` matched against position off
    // (0-based) onward; stops at the first mismatch or at either end.
    uint64_t match_prefix_at(SubstringRef sub, uint64_t off) const;
    // Longest common prefix of the suffixes starting at 0-based offsets.
    uint64_t lcp_at(uint64_t o1, uint64_t o2) const;
    // Longest common suffix of the prefixes ending at lengths e1, e2.
    uint64_t lcs_at(uint64_t e1, uint64_t e2) const;

  private:
    size_t part_of(uint64_t off) const;

    PView view_;
    std::array<SubstringRef, 3> parts_;
    std::array<uint64_t, 4> cum_{};
};

// Decides whether the pattern occurs in the expansion of a straight-line
// program, in time linear in the program size after the one-off pattern
// preprocessing. The witness is deterministic: among all rules whose
// boundary window contains an occurrence, the test reports the smallest
// (rule, window piece) the staged scan reaches first.
class Matcher {
  public:
    explicit Matcher(std::string pattern, Counters* counters = nullptr);
    Matcher(const Matcher&) = delete;
    Matcher& operator=(const Matcher&) = delete;

    const PatternIndex& index() const { return pi_; }
    const ConcatIndex& concat() const { return ci_; }

    MatchResult match(const Slp& slp) const;

    // Per-rule summaries, indexed by rule id ([0] unused). Exposed for
    // inspection; match() recomputes them internally.
    std::vector<NonterminalInfo> infos(const Slp& slp) const;

    // Occurrence test on the concatenation string(a)string(b)string(c);
    // returns a 0-based offset of some verified occurrence of the pattern.
    std::optional<uint64_t> test_triple(SubstringRef a, SubstringRef b,
                                        SubstringRef c) const;

  private:
    PatternIndex pi_;
    ConcatIndex ci_;
};

}  // namespace slpmatch

#endif
