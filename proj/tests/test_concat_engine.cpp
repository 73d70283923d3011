#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "slpmatch/concat_engine.hpp"
#include "slpmatch/oracle.hpp"
#include "slpmatch/pattern_index.hpp"

using namespace slpmatch;

namespace {

std::string random_string(std::mt19937_64& rng, size_t len, int sigma) {
    std::string s(len, 'a');
    for (auto& c : s) c = char('a' + rng() % sigma);
    return s;
}

std::string_view slice(const std::string& p, SubstringRef r) {
    return r.empty() ? std::string_view{}
                     : std::string_view(p).substr(r.start - 1, r.length());
}

// Every (u, v) pair of substring references, including the empty one.
void check_all_pairs(const std::string& p) {
    PatternIndex idx(p);
    ConcatIndex ci(idx);
    oracle::SubstringMap map(p);
    uint32_t m = uint32_t(p.size());

    std::vector<SubstringRef> refs = {kEmptyRef};
    for (uint32_t a = 1; a <= m; ++a)
        for (uint32_t b = a; b <= m; ++b) refs.push_back({a, b});

    std::vector<ConcatIndex::Query> batch;
    std::vector<std::pair<SubstringRef, SubstringRef>> pairs;
    std::string buf;
    for (SubstringRef u : refs)
        for (SubstringRef v : refs) {
            batch.push_back({u, v});
            pairs.push_back({u, v});
        }
    auto got = ci.batched(batch);
    REQUIRE(got.size() == batch.size());
    for (size_t i = 0; i < batch.size(); ++i) {
        auto [u, v] = pairs[i];
        buf.assign(slice(p, u));
        buf.append(slice(p, v));
        auto expect = map.first(buf);
        REQUIRE(got[i].has_value() == expect.has_value());
        if (got[i]) REQUIRE(p.compare(*got[i], buf.size(), buf) == 0);
    }
}

}  // namespace

TEST_CASE("fixed concatenation answers on abaab") {
    PatternIndex idx("abaab");
    ConcatIndex ci(idx);

    auto at = [&](SubstringRef u, SubstringRef v) { return ci.query_one(u, v); };
    CHECK(at({1, 2}, {3, 5}) == 0);              // "ab" + "aab" = p itself
    CHECK_FALSE(at({2, 3}, {2, 3}).has_value()); // "baba" does not occur
    CHECK(at({2, 3}, {4, 5}) == 1);              // "ba" + "ab" = "baab"
    CHECK(at(kEmptyRef, {2, 4}) == 1);           // "baa"
    CHECK(at({2, 4}, kEmptyRef) == 1);
    CHECK(at(kEmptyRef, kEmptyRef) == 0);
    CHECK(at({1, 5}, kEmptyRef) == 0);
    CHECK_FALSE(at({1, 5}, {1, 1}).has_value()); // longer than p

    CHECK(ci.frequent_threshold() >= 1);
    CHECK(ci.sample_stride() >= 1);
}

TEST_CASE("exhaustive pairs on small fixed patterns") {
    check_all_pairs("abaab");
    check_all_pairs("aaaaaaaa");          // single-letter: everything frequent
    check_all_pairs("ababababab");        // period 2 throughout
    check_all_pairs("abcabcabcab");       // period 3
    check_all_pairs("z");                 // one char
    check_all_pairs("abcdefgh");          // all distinct: everything rare
}

TEST_CASE("exhaustive pairs on random patterns") {
    std::mt19937_64 rng(59);
    for (int rep = 0; rep < 14; ++rep) {
        int sigma = 1 + rep % 4;
        std::string p = random_string(rng, 1 + rng() % 28, sigma);
        check_all_pairs(p);
    }
    // Periodic with seeded defects: exercises long runs in the grids.
    for (int rep = 0; rep < 6; ++rep) {
        std::string block = random_string(rng, 1 + rng() % 3, 2);
        std::string p;
        while (p.size() < 24) p += block;
        p[rng() % p.size()] = char('a' + rng() % 2);
        check_all_pairs(p);
    }
}

TEST_CASE("single queries match batched answers") {
    std::mt19937_64 rng(61);
    std::string p = random_string(rng, 40, 2);
    PatternIndex idx(p);
    ConcatIndex ci(idx);
    std::vector<ConcatIndex::Query> batch;
    for (int i = 0; i < 500; ++i) {
        uint32_t a = 1 + uint32_t(rng() % 40);
        uint32_t b = a + uint32_t(rng() % (40 - a + 1));
        uint32_t c = 1 + uint32_t(rng() % 40);
        uint32_t d = c + uint32_t(rng() % (40 - c + 1));
        batch.push_back({{a, b}, {c, d}});
    }
    auto got = ci.batched(batch);
    for (size_t i = 0; i < batch.size(); ++i)
        CHECK(got[i] == ci.query_one(batch[i].u, batch[i].v));
}
