#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "slpmatch/generator.hpp"
#include "slpmatch/slp.hpp"

using namespace slpmatch;

TEST_CASE("fibonacci-like programs") {
    Slp fib7 = Slp::parse_string(gen::fibonacci(7));
    CHECK(fib7.size() == 7);
    CHECK(fib7.expand(100) == "abaababaabaab");
    CHECK(fib7.heights()[1] == 5);
    CHECK(fib7.layers().size() == 6);

    CHECK(Slp::parse_string(gen::fibonacci(3)).expand(10) == "ab");
    CHECK(Slp::parse_string(gen::fibonacci(4)).expand(10) == "aba");
    CHECK(Slp::parse_string(gen::fibonacci(5)).expand(10) == "abaab");
    CHECK_THROWS_AS((void)gen::fibonacci(2), std::invalid_argument);
}

TEST_CASE("doubling programs") {
    CHECK(Slp::parse_string(gen::power(1)).expand(10) == "a");
    CHECK(Slp::parse_string(gen::power(5)).expand(100) == std::string(16, 'a'));
    Slp p41 = Slp::parse_string(gen::power(41));
    CHECK(p41.size() == 41);
    CHECK(p41.lengths(uint64_t(1) << 62)[1] == (uint64_t(1) << 40));
    CHECK_THROWS_AS((void)gen::power(0), std::invalid_argument);
}

TEST_CASE("random binary programs parse, reach every rule, and are deterministic") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        for (uint32_t sigma : {1u, 2u, 4u}) {
            uint32_t n = 2 * sigma + uint32_t(seed % 25);
            std::string t = gen::random_binary(n, sigma, seed);
            CHECK(t == gen::random_binary(n, sigma, seed));
            // parse_string enforces reachability and reference order.
            Slp s = Slp::parse_string(t);
            CHECK(s.size() == n);
        }
    }
    CHECK(gen::random_binary(40, 2, 1) != gen::random_binary(40, 2, 2));
    CHECK_THROWS_AS((void)gen::random_binary(3, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)gen::random_binary(60, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)gen::random_binary(60, 27, 1), std::invalid_argument);
}

TEST_CASE("skewed chains have linear length and maximal depth") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        for (uint32_t sigma : {1u, 2u, 3u}) {
            uint32_t n = 2 * sigma + 1 + uint32_t(seed % 30);
            std::string t = gen::skewed_chain(n, sigma, seed);
            CHECK(t == gen::skewed_chain(n, sigma, seed));
            Slp s = Slp::parse_string(t);
            CHECK(s.expand(1u << 16).size() == n - sigma + 1);
            CHECK(s.heights()[1] == n - sigma);
        }
    }
    CHECK_THROWS_AS((void)gen::skewed_chain(4, 2, 1), std::invalid_argument);
}

TEST_CASE("shape dispatch") {
    CHECK(gen::generate("fibonacci", 7, 2, 1) == gen::fibonacci(7));
    CHECK(gen::generate("power", 9, 2, 1) == gen::power(9));
    CHECK(gen::generate("random-binary", 20, 2, 3) == gen::random_binary(20, 2, 3));
    CHECK(gen::generate("skewed-chain", 21, 2, 3) == gen::skewed_chain(21, 2, 3));
    CHECK_THROWS_AS((void)gen::generate("spiral", 9, 2, 1), std::invalid_argument);
}
