#ifndef SLPMATCH_WORDRAM_HPP
#define SLPMATCH_WORDRAM_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "slpmatch/common.hpp"

namespace slpmatch {

// Static predecessor structure over a small sorted set of machine words.
// rank(x) = |{k in keys : k <= x}|, select(i) = i-th smallest key (1-based).
// When all keys fit in b bits and s*(b+1) <= 64, ranks are answered with a
// single packed parallel comparison; otherwise a 256-way bucket index on the
// top bits of the key range narrows the search to one bucket, finished by a
// branch-free binary search.
class SmallPredSet {
  public:
    SmallPredSet() = default;
    // keys must be strictly increasing; size is capped at 64*64.
    static SmallPredSet build(std::vector<uint64_t> sorted_keys);

    size_t size() const { return keys_.size(); }
    size_t rank(uint64_t x) const;                         // #{k <= x}
    size_t rank_less(uint64_t x) const;                    // #{k <  x}
    uint64_t select(size_t i) const;                       // 1-based, throws when out of range
    const std::vector<uint64_t>& keys() const { return keys_; }

  private:
    std::vector<uint64_t> keys_;
    uint64_t packed_ = 0;      // keys in s fields of width_ bits each
    uint64_t high_bits_ = 0;   // the per-field sentinel bit
    uint64_t repl_unit_ = 0;   // 1 in the low bit of every field
    uint32_t width_ = 0;       // field width b+1
    uint32_t key_bits_ = 0;    // b
    bool use_packed_ = false;
    uint32_t bucket_shift_ = 0;
    std::vector<uint16_t> bucket_off_;  // 257 prefix counts by key >> shift
};

// Stable LSD radix sort over byte digits. Sorts pairs by .first, keeps .second
// (payload tag) attached; throws when a key exceeds `universe`.
void radix_sort_pairs(std::vector<std::pair<uint64_t, uint64_t>>& items, uint64_t universe,
                      Counters* counters = nullptr);
std::vector<uint64_t> radix_sorted(std::vector<uint64_t> xs, uint64_t universe,
                                   Counters* counters = nullptr);

// Sorted static list answering batched predecessor queries. Keys are grouped
// into blocks of w = 64; a query batch (itself sorted) is merged against the
// block heads, then finished inside a single block each.
class BlockedPredList {
  public:
    BlockedPredList() = default;
    static BlockedPredList build(std::vector<uint64_t> sorted_keys);

    size_t size() const { return keys_.size(); }
    // xs must be sorted ascending; result[i] = #{k <= xs[i]}.
    std::vector<size_t> batched_rank(const std::vector<uint64_t>& xs) const;
    uint64_t key_at(size_t idx) const { return keys_[idx]; }  // 0-based

  private:
    std::vector<uint64_t> keys_;
    std::vector<uint64_t> block_heads_;
    std::vector<SmallPredSet> blocks_;
};

// Static 2-D point set of at most 64 points; reports some point inside an
// axis-aligned rectangle. Built via reduction to rank space, a g x g box
// decomposition (g = ceil(sqrt(s))), packed occupancy words per slice and for
// the middle boxes, and least-bit extraction to decode a hit.
class MicroGrid {
  public:
    struct Point {
        uint64_t x = 0;
        uint64_t y = 0;
        friend bool operator==(const Point&, const Point&) = default;
    };

    MicroGrid() = default;
    static MicroGrid build(std::vector<Point> points);  // throws when > 64 points

    size_t size() const { return pts_.size(); }
    // Inclusive rectangle; throws when x1 > x2 or y1 > y2.
    std::optional<Point> query(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const;

  private:
    struct Slice {
        uint64_t word = 0;        // bit (band_off * g + local_rank)
        SmallPredSet reranked;    // global ranks of the re-ranked axis, ascending
    };

    size_t count_le_x(uint64_t q) const;
    size_t count_le_y(uint64_t q) const;
    std::optional<uint32_t> slice_hit(const Slice& s, size_t g_lo, size_t g_hi, size_t off_lo,
                                      size_t off_hi) const;

    std::vector<Point> pts_;
    std::vector<uint32_t> point_by_xrank_, point_by_yrank_;
    std::vector<uint32_t> yrank_of_xrank_;
    SmallPredSet xvals_, yvals_;               // distinct coordinate values
    std::vector<uint32_t> xcnt_, ycnt_;        // points with coord <= value, cumulative
    std::vector<uint8_t> band_of_;             // rank (1-based) -> band index
    uint32_t g_ = 1;
    uint64_t row_unit_ = 0;                    // bit l*g for each row l
    uint64_t box_word_ = 0;                    // bit (Y * g + X)
    std::vector<uint32_t> box_rep_;            // one point id per occupied box
    std::vector<Slice> vslice_, hslice_;
};

}  // namespace slpmatch

#endif
