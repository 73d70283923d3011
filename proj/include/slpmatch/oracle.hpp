#ifndef SLPMATCH_ORACLE_HPP
#define SLPMATCH_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "slpmatch/wordram.hpp"

namespace slpmatch {

// Brute-force reference implementations. Everything here is quadratic-ish and
// exists to check the real structures on small inputs.
namespace oracle {

std::optional<size_t> first_occurrence(std::string_view text, std::string_view pat);

// First 0-based occurrence position of an arbitrary query string in `text`,
// answered from a precomputed map over all substrings of `text`.
class SubstringMap {
  public:
    explicit SubstringMap(std::string text);
    SubstringMap(const SubstringMap&) = delete;  // keys view into text_
    SubstringMap& operator=(const SubstringMap&) = delete;
    std::optional<uint32_t> first(std::string_view s) const;
    const std::string& text() const { return text_; }

  private:
    std::string text_;
    std::unordered_map<std::string_view, uint32_t> first_;
};

// Furthest-from-u (nearest-root) ancestor v of u, u included, with
// weight[v] >= k; kNoNode when k > weight[u]. parent[root] == kNoNode.
uint32_t weighted_ancestor(const std::vector<uint32_t>& parent,
                           const std::vector<uint64_t>& weight, uint32_t u, uint64_t k);

// Longest common prefix of the 1-based suffixes s[i..] and s[j..].
size_t lcp(std::string_view s, size_t i, size_t j);
// Longest common suffix of the 1-based prefixes s[..i] and s[..j].
size_t lcs(std::string_view s, size_t i, size_t j);

// table[k-1] = shortest period of s[1..k], k = 1..|s|.
std::vector<uint32_t> pref_periods(std::string_view s);
// table[k-1] = shortest period of s[k..|s|].
std::vector<uint32_t> suf_periods(std::string_view s);

// For u = p[a..b] (1-based): longest prefix of u that is a suffix of p and
// longest suffix of u that is a prefix of p.
std::pair<uint32_t, uint32_t> pref_suf(std::string_view p, uint32_t a, uint32_t b);

// Exact counting + a contained witness for closed rectangles, via cumulative
// counts over the compressed coordinates.
class GridCounter {
  public:
    explicit GridCounter(const std::vector<MicroGrid::Point>& pts);
    size_t count(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const;
    // Inclusive rectangle given as 0-based ranks into the sorted distinct
    // coordinate values; skips the coordinate lookups of count().
    size_t count_rank(size_t xa, size_t xb, size_t ya, size_t yb) const {
        return pre_[xb + 1][yb + 1] - pre_[xa][yb + 1] - pre_[xb + 1][ya] + pre_[xa][ya];
    }
    bool contains_point(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2,
                        const MicroGrid::Point& p) const;

  private:
    std::vector<uint64_t> xs_, ys_;  // sorted distinct coords
    std::vector<std::vector<uint32_t>> pre_;  // pre_[i][j] = #points with rank < (i, j)
    std::vector<MicroGrid::Point> pts_;
};

}  // namespace oracle
}  // namespace slpmatch

#endif
