#ifndef SLPMATCH_GENERATOR_HPP
#define SLPMATCH_GENERATOR_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace slpmatch {

// Test-instance generators. Each returns a program in the SLP text format
// (parseable by Slp::parse_string); determinism is per (shape, parameters).
namespace gen {

// Fibonacci-style program: rule i -> rule(i+1) rule(i+2), the last two rules
// are the terminals 'a' and 'b'. n = 7 expands to "abaababaabaab". Needs
// n >= 3 so that both terminals are reachable.
std::string fibonacci(uint32_t n);

// Doubling program for a^(2^(n-1)): rule i -> rule(i+1) rule(i+1), rule n is
// the terminal 'a'. Needs n >= 1.
std::string power(uint32_t n);

// Random binary DAG over the alphabet {'a', ...} of size sigma (1..26).
// Every rule below the start gets a uniformly chosen parent slot among the
// earlier binary rules, so the whole program is reachable. Needs n >= 2*sigma.
std::string random_binary(uint32_t n, uint32_t sigma, uint64_t seed);

// Left-leaning chain: rule i -> rule(i+1) terminal. Expansion length stays
// linear in n while the derivation (and referrer) depth is maximal, the
// worst case for position reconstruction. Needs n >= 2*sigma + 1.
std::string skewed_chain(uint32_t n, uint32_t sigma, uint64_t seed);

// Dispatch by shape name: "fibonacci", "power", "random-binary",
// "skewed-chain". Unknown names throw std::invalid_argument.
std::string generate(std::string_view shape, uint32_t n, uint32_t sigma, uint64_t seed);

}  // namespace gen
}  // namespace slpmatch

#endif
