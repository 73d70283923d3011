#include "slpmatch/wordram.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace slpmatch {

namespace {

constexpr uint64_t low_bits(uint32_t k) { return k >= 64 ? ~0ull : (1ull << k) - 1; }

template <typename T, typename KeyFn>
void lsd_passes(std::vector<T>& items, uint64_t universe, KeyFn key) {
    for (const T& it : items)
        if (key(it) > universe) throw std::invalid_argument("radix_sort: key exceeds universe");
    uint32_t passes = 1;
    while (passes < 8 && (universe >> (8 * passes)) != 0) ++passes;
    std::vector<T> tmp(items.size());
    for (uint32_t pass = 0; pass < passes; ++pass) {
        size_t cnt[257] = {};
        const uint32_t sh = 8 * pass;
        for (const T& it : items) ++cnt[((key(it) >> sh) & 0xff) + 1];
        for (int d = 0; d < 256; ++d) cnt[d + 1] += cnt[d];
        for (const T& it : items) tmp[cnt[(key(it) >> sh) & 0xff]++] = it;
        items.swap(tmp);
    }
}

}  // namespace

SmallPredSet SmallPredSet::build(std::vector<uint64_t> sorted_keys) {
    if (sorted_keys.size() > 64 * 64)
        throw std::invalid_argument("SmallPredSet: more than w^2 keys");
    for (size_t i = 1; i < sorted_keys.size(); ++i)
        if (sorted_keys[i] <= sorted_keys[i - 1])
            throw std::invalid_argument("SmallPredSet: keys not strictly increasing");
    SmallPredSet s;
    s.keys_ = std::move(sorted_keys);
    if (s.keys_.empty()) return s;
    s.key_bits_ = static_cast<uint32_t>(std::bit_width(s.keys_.back()));
    s.width_ = s.key_bits_ + 1;
    if (s.keys_.size() * s.width_ <= 64) {
        s.use_packed_ = true;
        for (size_t i = 0; i < s.keys_.size(); ++i) {
            const uint32_t off = static_cast<uint32_t>(i) * s.width_;
            s.packed_ |= s.keys_[i] << off;
            s.high_bits_ |= 1ull << (off + s.key_bits_);
            s.repl_unit_ |= 1ull << off;
        }
    } else {
        s.bucket_shift_ = s.key_bits_ > 8 ? s.key_bits_ - 8 : 0;
        s.bucket_off_.assign(257, 0);
        for (uint64_t k : s.keys_) ++s.bucket_off_[(k >> s.bucket_shift_) + 1];
        for (size_t b = 1; b <= 256; ++b) s.bucket_off_[b] += s.bucket_off_[b - 1];
    }
    return s;
}

size_t SmallPredSet::rank(uint64_t x) const {
    if (keys_.empty()) return 0;
    if (use_packed_) {
        if (key_bits_ < 64 && (x >> key_bits_) != 0) return keys_.size();
        const uint64_t x_rep = x * repl_unit_;
        const uint64_t cmp = ((x_rep | high_bits_) - packed_) & high_bits_;
        return static_cast<size_t>(std::popcount(cmp));
    }
    // Bucket by the top bits, then a branch-free binary search inside the
    // bucket (usually 0-2 keys).
    const uint64_t hb = x >> bucket_shift_;
    if (hb >= 256) return keys_.size();
    const size_t lo = bucket_off_[hb], hi = bucket_off_[hb + 1];
    const uint64_t* base = keys_.data() + lo;
    size_t n = hi - lo;
    while (n > 1) {
        const size_t half = n / 2;
        base += (base[half - 1] <= x) ? half : 0;
        n -= half;
    }
    return static_cast<size_t>(base - keys_.data()) + (n == 1 && *base <= x ? 1 : 0);
}

size_t SmallPredSet::rank_less(uint64_t x) const { return x == 0 ? 0 : rank(x - 1); }

uint64_t SmallPredSet::select(size_t i) const {
    if (i == 0 || i > keys_.size()) throw std::out_of_range("SmallPredSet::select");
    return keys_[i - 1];
}

void radix_sort_pairs(std::vector<std::pair<uint64_t, uint64_t>>& items, uint64_t universe,
                      Counters* counters) {
    count_events(counters, &Counters::sort_calls);
    lsd_passes(items, universe, [](const std::pair<uint64_t, uint64_t>& p) { return p.first; });
}

std::vector<uint64_t> radix_sorted(std::vector<uint64_t> xs, uint64_t universe,
                                   Counters* counters) {
    count_events(counters, &Counters::sort_calls);
    lsd_passes(xs, universe, [](uint64_t x) { return x; });
    return xs;
}

BlockedPredList BlockedPredList::build(std::vector<uint64_t> sorted_keys) {
    for (size_t i = 1; i < sorted_keys.size(); ++i)
        if (sorted_keys[i] <= sorted_keys[i - 1])
            throw std::invalid_argument("BlockedPredList: keys not strictly increasing");
    BlockedPredList b;
    b.keys_ = std::move(sorted_keys);
    for (size_t i = 0; i < b.keys_.size(); i += 64) {
        const size_t e = std::min(i + 64, b.keys_.size());
        b.block_heads_.push_back(b.keys_[i]);
        b.blocks_.push_back(
            SmallPredSet::build(std::vector<uint64_t>(b.keys_.begin() + i, b.keys_.begin() + e)));
    }
    return b;
}

std::vector<size_t> BlockedPredList::batched_rank(const std::vector<uint64_t>& xs) const {
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i] < xs[i - 1]) throw std::invalid_argument("batched_rank: queries not sorted");
    std::vector<size_t> out(xs.size(), 0);
    if (keys_.empty()) return out;
    size_t bi = 0;
    for (size_t q = 0; q < xs.size(); ++q) {
        while (bi + 1 < blocks_.size() && block_heads_[bi + 1] <= xs[q]) ++bi;
        out[q] = bi * 64 + blocks_[bi].rank(xs[q]);
    }
    return out;
}

MicroGrid MicroGrid::build(std::vector<Point> points) {
    if (points.size() > 64) throw std::invalid_argument("MicroGrid: more than 64 points");
    MicroGrid gr;
    gr.pts_ = std::move(points);
    const size_t s = gr.pts_.size();
    while (static_cast<size_t>(gr.g_) * gr.g_ < s) ++gr.g_;

    std::vector<uint32_t> xorder(s), yorder(s);
    for (size_t i = 0; i < s; ++i) xorder[i] = yorder[i] = static_cast<uint32_t>(i);
    std::stable_sort(xorder.begin(), xorder.end(),
                     [&](uint32_t a, uint32_t b) { return gr.pts_[a].x < gr.pts_[b].x; });
    std::stable_sort(yorder.begin(), yorder.end(),
                     [&](uint32_t a, uint32_t b) { return gr.pts_[a].y < gr.pts_[b].y; });
    gr.point_by_xrank_ = xorder;
    gr.point_by_yrank_ = yorder;
    std::vector<uint32_t> xrank_of(s), yrank_of(s);  // 1-based ranks
    for (size_t r = 0; r < s; ++r) xrank_of[xorder[r]] = static_cast<uint32_t>(r + 1);
    for (size_t r = 0; r < s; ++r) yrank_of[yorder[r]] = static_cast<uint32_t>(r + 1);
    gr.yrank_of_xrank_.resize(s);
    for (size_t r = 0; r < s; ++r) gr.yrank_of_xrank_[r] = yrank_of[xorder[r]];

    // Distinct coordinate values with cumulative point counts (leading zero
    // so a rank indexes the count array directly), mapping real coordinates
    // onto the closed rank-space rectangle.
    std::vector<uint64_t> xv, yv;
    gr.xcnt_.assign(1, 0);
    gr.ycnt_.assign(1, 0);
    for (size_t r = 0; r < s; ++r) {
        const uint64_t v = gr.pts_[xorder[r]].x;
        if (xv.empty() || xv.back() != v) {
            xv.push_back(v);
            gr.xcnt_.push_back(static_cast<uint32_t>(r + 1));
        } else {
            gr.xcnt_.back() = static_cast<uint32_t>(r + 1);
        }
    }
    for (size_t r = 0; r < s; ++r) {
        const uint64_t v = gr.pts_[yorder[r]].y;
        if (yv.empty() || yv.back() != v) {
            yv.push_back(v);
            gr.ycnt_.push_back(static_cast<uint32_t>(r + 1));
        } else {
            gr.ycnt_.back() = static_cast<uint32_t>(r + 1);
        }
    }
    gr.xvals_ = SmallPredSet::build(std::move(xv));
    gr.yvals_ = SmallPredSet::build(std::move(yv));

    const uint32_t g = gr.g_;
    for (uint32_t l = 0; l < g; ++l) gr.row_unit_ |= 1ull << (l * g);
    gr.band_of_.assign(s + 1, 0);
    for (size_t r = 1; r <= s; ++r) gr.band_of_[r] = static_cast<uint8_t>((r - 1) / g);
    gr.box_rep_.assign(static_cast<size_t>(g) * g, kNoNode);
    for (size_t r = 0; r < s; ++r) {
        const uint32_t bx = static_cast<uint32_t>(r) / g;
        const uint32_t by = (gr.yrank_of_xrank_[r] - 1) / g;
        const uint32_t bit = by * g + bx;
        gr.box_word_ |= 1ull << bit;
        if (gr.box_rep_[bit] == kNoNode) gr.box_rep_[bit] = gr.point_by_xrank_[r];
    }

    gr.vslice_.resize(g);
    gr.hslice_.resize(g);
    for (uint32_t band = 0; band < g; ++band) {
        // x-band `band`: points with x-rank in [band*g+1, band*g+g], re-ranked by y.
        std::vector<std::pair<uint64_t, uint32_t>> members;  // (y-rank, x-offset)
        for (uint32_t off = 0; off < g; ++off) {
            const size_t xr0 = static_cast<size_t>(band) * g + off;
            if (xr0 >= s) break;
            members.emplace_back(gr.yrank_of_xrank_[xr0], off);
        }
        std::sort(members.begin(), members.end());
        std::vector<uint64_t> ranks;
        Slice& vs = gr.vslice_[band];
        for (size_t l = 0; l < members.size(); ++l) {
            vs.word |= 1ull << (l * g + members[l].second);
            ranks.push_back(members[l].first);
        }
        vs.reranked = SmallPredSet::build(std::move(ranks));

        // y-band `band`, re-ranked by x.
        members.clear();
        for (uint32_t off = 0; off < g; ++off) {
            const size_t yr0 = static_cast<size_t>(band) * g + off;
            if (yr0 >= s) break;
            members.emplace_back(xrank_of[gr.point_by_yrank_[yr0]], off);
        }
        std::sort(members.begin(), members.end());
        ranks.clear();
        Slice& hs = gr.hslice_[band];
        for (size_t l = 0; l < members.size(); ++l) {
            hs.word |= 1ull << (l * g + members[l].second);
            ranks.push_back(members[l].first);
        }
        hs.reranked = SmallPredSet::build(std::move(ranks));
    }
    return gr;
}

size_t MicroGrid::count_le_x(uint64_t q) const { return xcnt_[xvals_.rank(q)]; }

size_t MicroGrid::count_le_y(uint64_t q) const { return ycnt_[yvals_.rank(q)]; }

std::optional<uint32_t> MicroGrid::slice_hit(const Slice& s, size_t lo_rank, size_t hi_rank,
                                             size_t off_lo, size_t off_hi) const {
    // Rows are local re-ranks [cnt_lo, cnt_hi), columns are in-band offsets.
    const size_t cnt_lo = s.reranked.rank(lo_rank == 0 ? 0 : lo_rank - 1);
    const size_t cnt_hi = s.reranked.rank(hi_rank);
    if (cnt_hi <= cnt_lo || off_lo > off_hi) return std::nullopt;
    const uint64_t rows_sel =
        (row_unit_ & low_bits(static_cast<uint32_t>((cnt_hi - cnt_lo) * g_))) << (cnt_lo * g_);
    const uint64_t row_bits = low_bits(static_cast<uint32_t>(off_hi - off_lo + 1)) << off_lo;
    const uint64_t hits = s.word & (rows_sel * row_bits);
    if (hits == 0) return std::nullopt;
    return static_cast<uint32_t>(std::countr_zero(hits));
}

std::optional<MicroGrid::Point> MicroGrid::query(uint64_t x1, uint64_t x2, uint64_t y1,
                                                 uint64_t y2) const {
    if (x1 > x2 || y1 > y2) throw std::invalid_argument("MicroGrid::query: inverted rectangle");
    // Closed rectangle -> closed rank-space rectangle [a1,a2] x [b1,b2], 1-based.
    const size_t a1 = (x1 == 0 ? 0 : count_le_x(x1 - 1)) + 1;
    const size_t a2 = count_le_x(x2);
    const size_t b1 = (y1 == 0 ? 0 : count_le_y(y1 - 1)) + 1;
    const size_t b2 = count_le_y(y2);
    if (a1 > a2 || b1 > b2) return std::nullopt;

    const uint32_t g = g_;
    const size_t bx1 = band_of_[a1], bx2 = band_of_[a2];
    const size_t by1 = band_of_[b1], by2 = band_of_[b2];

    // Interior first: boxes fully inside in both axes decide most fat
    // rectangles with one multiplication.
    const ptrdiff_t fx_lo = static_cast<ptrdiff_t>(a1 == bx1 * g + 1 ? bx1 : bx1 + 1);
    const ptrdiff_t fx_hi = static_cast<ptrdiff_t>(bx2) - (a2 == bx2 * g + g ? 0 : 1);
    const ptrdiff_t fy_lo = static_cast<ptrdiff_t>(b1 == by1 * g + 1 ? by1 : by1 + 1);
    const ptrdiff_t fy_hi = static_cast<ptrdiff_t>(by2) - (b2 == by2 * g + g ? 0 : 1);
    if (fx_lo <= fx_hi && fy_lo <= fy_hi) {
        const uint64_t rows_sel =
            (row_unit_ & low_bits(static_cast<uint32_t>((fy_hi - fy_lo + 1) * g)))
            << (fy_lo * g);
        const uint64_t cols = low_bits(static_cast<uint32_t>(fx_hi - fx_lo + 1)) << fx_lo;
        const uint64_t hits = box_word_ & (rows_sel * cols);
        if (hits != 0) {
            const uint32_t bit = static_cast<uint32_t>(std::countr_zero(hits));
            return pts_[box_rep_[bit]];
        }
    }
    // Boundary x-bands, full y-range.
    for (const size_t bx : {bx1, bx2}) {
        const size_t lo = std::max(a1, bx * g + 1), hi = std::min(a2, bx * g + g);
        if (auto bit = slice_hit(vslice_[bx], b1, b2, lo - (bx * g + 1), hi - (bx * g + 1))) {
            const size_t xr = bx * g + (*bit % g) + 1;
            const Point& p = pts_[point_by_xrank_[xr - 1]];
            return p;
        }
        if (bx2 == bx1) break;
    }
    // Boundary y-bands, full x-range.
    for (const size_t by : {by1, by2}) {
        const size_t lo = std::max(b1, by * g + 1), hi = std::min(b2, by * g + g);
        if (auto bit = slice_hit(hslice_[by], a1, a2, lo - (by * g + 1), hi - (by * g + 1))) {
            const size_t yr = by * g + (*bit % g) + 1;
            const Point& p = pts_[point_by_yrank_[yr - 1]];
            return p;
        }
        if (by2 == by1) break;
    }
    return std::nullopt;
}

}  // namespace slpmatch
