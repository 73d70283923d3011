#ifndef SLPMATCH_COMMON_HPP
#define SLPMATCH_COMMON_HPP

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace slpmatch {

constexpr uint32_t kNoNode = std::numeric_limits<uint32_t>::max();

// Reference to p[start..end], 1-based inclusive; (1,0) is the empty substring.
struct SubstringRef {
    uint32_t start = 1;
    uint32_t end = 0;

    constexpr size_t length() const { return end >= start ? end - start + 1 : 0; }
    constexpr bool empty() const { return end < start; }
    friend constexpr bool operator==(const SubstringRef&, const SubstringRef&) = default;
};

inline constexpr SubstringRef kEmptyRef{1, 0};

// Position in a compacted trie: on the edge into `below`, at string depth `depth`.
// The position is an explicit node exactly when depth equals below's string depth.
struct Locator {
    uint32_t below = kNoNode;
    uint32_t depth = 0;
};

struct CounterSnapshot {
    uint64_t wa_queries = 0;
    uint64_t concat_queries = 0;
    uint64_t lcp_calls = 0;
    uint64_t sort_calls = 0;
};

// Relaxed atomics so that concurrent query batches on shared indexes stay race-free.
struct Counters {
    std::atomic<uint64_t> wa_queries{0};
    std::atomic<uint64_t> concat_queries{0};
    std::atomic<uint64_t> lcp_calls{0};
    std::atomic<uint64_t> sort_calls{0};

    void reset() {
        wa_queries = 0;
        concat_queries = 0;
        lcp_calls = 0;
        sort_calls = 0;
    }
    CounterSnapshot snapshot() const {
        return CounterSnapshot{wa_queries.load(), concat_queries.load(), lcp_calls.load(),
                               sort_calls.load()};
    }
};

inline void count_events(Counters* c, std::atomic<uint64_t> Counters::*field, uint64_t v = 1) {
    if (c != nullptr && v != 0) (c->*field).fetch_add(v, std::memory_order_relaxed);
}

// Saturating addition clamped at `cap`.
inline uint64_t sat_add(uint64_t a, uint64_t b, uint64_t cap) {
    if (a >= cap || b >= cap || a + b >= cap) return cap;
    return a + b;
}

}  // namespace slpmatch

#endif
