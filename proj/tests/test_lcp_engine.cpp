#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "slpmatch/lcp_engine.hpp"
#include "slpmatch/pattern_index.hpp"

using namespace slpmatch;

namespace {

std::string random_string(std::mt19937_64& rng, size_t len, int sigma) {
    std::string s(len, 'a');
    for (auto& c : s) c = char('a' + rng() % sigma);
    return s;
}

size_t lcp_chars(std::string_view a, std::string_view b) {
    size_t t = 0;
    while (t < a.size() && t < b.size() && a[t] == b[t]) ++t;
    return t;
}

// Longest prefix of q shared with any member suffix, by direct comparison.
std::pair<uint32_t, size_t> naive_reach(const std::string& p,
                                        const std::vector<uint32_t>& members,
                                        std::string_view q) {
    size_t best = 0;
    uint32_t who = members.front();
    for (uint32_t s : members) {
        size_t t = lcp_chars(q, std::string_view(p).substr(s - 1));
        if (t > best) {
            best = t;
            who = s;
        }
    }
    return {who, best};
}

uint32_t ceil_log2(uint32_t v) {
    uint32_t r = 0;
    while ((uint32_t(1) << r) < v) ++r;
    return r;
}

// The node whose edge covers string depth d on the root path of `leaf`.
uint32_t node_covering(const SuffixTrie& trie, uint32_t leaf, uint32_t d) {
    uint32_t v = leaf;
    while (trie.parent(v) != kNoNode && trie.depth(trie.parent(v)) >= d)
        v = trie.parent(v);
    return v;
}

}  // namespace

TEST_CASE("rooted lookups agree with direct comparison") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 24; ++rep) {
        std::string p = random_string(rng, 1 + rng() % 40, 1 + rep % 3);
        uint32_t m = uint32_t(p.size());
        PatternIndex idx(p);

        std::vector<uint32_t> members;
        for (uint32_t s = 1; s <= m; ++s)
            if (rep % 3 == 0 || rng() % 3 != 0) members.push_back(s);
        if (members.empty()) members.push_back(1 + uint32_t(rng() % m));
        SuffixTrie trie(idx, members, false, false);
        CHECK(trie.member_count() == members.size());

        std::vector<SubstringRef> qs;
        for (uint32_t a = 1; a <= m; ++a)
            for (uint32_t b = a; b <= m; ++b) qs.push_back({a, b});
        auto got = trie.rooted_batch(qs);
        REQUIRE(got.size() == qs.size());
        for (size_t i = 0; i < qs.size(); ++i) {
            std::string_view q =
                std::string_view(p).substr(qs[i].start - 1, qs[i].length());
            auto [who, best] = naive_reach(p, members, q);
            REQUIRE(got[i].t == best);
            REQUIRE(got[i].member != kNoNode);
            // The reported member must realize the reach.
            size_t check =
                lcp_chars(q, std::string_view(p).substr(got[i].member - 1));
            REQUIRE(check == best);
            (void)who;
        }
    }
}

TEST_CASE("unrooted lookups resume from arbitrary positions") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 16; ++rep) {
        std::string p = random_string(rng, 2 + rng() % 36, 1 + rep % 3);
        uint32_t m = uint32_t(p.size());
        PatternIndex idx(p);

        std::vector<uint32_t> members;
        for (uint32_t s = 1; s <= m; ++s)
            if (rep % 2 == 0 || rng() % 4 != 0) members.push_back(s);
        if (members.empty()) members.push_back(1);
        SuffixTrie trie(idx, members, true, true);

        std::vector<std::pair<Locator, SubstringRef>> qs;
        std::vector<std::string> combined;
        for (int i = 0; i < 300; ++i) {
            uint32_t s = members[rng() % members.size()];
            uint32_t d = uint32_t(rng() % (m - s + 2));  // 0..|suffix|
            uint32_t below = node_covering(trie, trie.leaf_by_suffix(s), d);
            uint32_t a = 1 + uint32_t(rng() % m);
            uint32_t b = a + uint32_t(rng() % (m - a + 1));
            if (rng() % 8 == 0) {
                a = 1;
                b = 0;  // empty query
            }
            qs.push_back({Locator{below, d}, SubstringRef{a, b}});
            combined.push_back(p.substr(s - 1, d) +
                               p.substr(a - 1, b >= a ? b - a + 1 : 0));
        }
        auto got = trie.unrooted_batch(qs);
        REQUIRE(got.size() == qs.size());
        for (size_t i = 0; i < qs.size(); ++i) {
            auto [who, best] = naive_reach(p, members, combined[i]);
            REQUIRE(got[i].depth == best);
            REQUIRE(got[i].member != kNoNode);
            size_t check = lcp_chars(std::string_view(combined[i]),
                                     std::string_view(p).substr(got[i].member - 1));
            REQUIRE(check == got[i].depth);
            (void)who;
        }
    }
}

TEST_CASE("light transitions above any member stay logarithmic") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 20; ++rep) {
        int sigma = 1 + rep % 4;
        std::string p = random_string(rng, 1 + rng() % 60, sigma);
        PatternIndex idx(p);
        std::vector<uint32_t> members;
        for (uint32_t s = 1; s <= idx.m(); ++s) members.push_back(s);
        SuffixTrie trie(idx, members, true, true);
        CHECK(trie.max_light_transitions() <= ceil_log2(trie.member_count()));
    }
}

TEST_CASE("member bookkeeping and bad inputs") {
    PatternIndex idx("abaab");
    SuffixTrie trie(idx, {1, 3, 5}, true, true);
    CHECK(trie.member_count() == 3);
    CHECK(trie.leaf_by_suffix(3) != kNoNode);
    CHECK(trie.leaf_by_suffix(2) == kNoNode);
    CHECK(trie.member_at(trie.leaf_by_suffix(5)) == 5);
    CHECK(trie.depth(trie.leaf_by_suffix(1)) == 5);

    CHECK_THROWS_AS(SuffixTrie(idx, {0}, false, false), std::invalid_argument);
    CHECK_THROWS_AS(SuffixTrie(idx, {6}, false, false), std::invalid_argument);
    CHECK_THROWS_AS(SuffixTrie(idx, {2, 2}, false, false), std::invalid_argument);

    SuffixTrie norooted(idx, {1, 2}, false, false);
    CHECK_THROWS_AS((void)norooted.unrooted_batch({{Locator{0, 0}, kEmptyRef}}),
                    std::logic_error);
}
