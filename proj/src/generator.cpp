#include "slpmatch/generator.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace slpmatch {
namespace gen {

namespace {

void check_sigma(uint32_t sigma) {
    if (sigma < 1 || sigma > 26)
        throw std::invalid_argument("gen: alphabet size must be in [1, 26]");
}

std::string render(uint32_t n, const std::vector<std::string>& lines) {
    std::string out = std::to_string(n);
    out += '\n';
    for (const std::string& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

std::string binary_line(uint32_t j, uint32_t k) {
    return "N " + std::to_string(j) + ' ' + std::to_string(k);
}

std::string terminal_line(char c) { return std::string("T ") + c; }

uint64_t pick(std::mt19937_64& rng, uint64_t lo, uint64_t hi) {
    return std::uniform_int_distribution<uint64_t>(lo, hi)(rng);
}

}  // namespace

std::string fibonacci(uint32_t n) {
    if (n < 3) throw std::invalid_argument("gen: fibonacci shape needs n >= 3");
    std::vector<std::string> lines;
    lines.reserve(n);
    for (uint32_t i = 1; i + 2 <= n; ++i) lines.push_back(binary_line(i + 1, i + 2));
    lines.push_back(terminal_line('a'));
    lines.push_back(terminal_line('b'));
    return render(n, lines);
}

std::string power(uint32_t n) {
    if (n < 1) throw std::invalid_argument("gen: power shape needs n >= 1");
    std::vector<std::string> lines;
    lines.reserve(n);
    for (uint32_t i = 1; i < n; ++i) lines.push_back(binary_line(i + 1, i + 1));
    lines.push_back(terminal_line('a'));
    return render(n, lines);
}

std::string random_binary(uint32_t n, uint32_t sigma, uint64_t seed) {
    check_sigma(sigma);
    if (n < 2 * sigma)
        throw std::invalid_argument("gen: random-binary shape needs n >= 2*sigma");
    std::mt19937_64 rng(seed);
    const uint32_t nbin = n - sigma;  // rules 1..nbin binary, the rest terminals

    // Two child slots per binary rule. Each rule j >= 2 claims a uniformly
    // random free slot of an earlier binary rule, which makes every rule
    // reachable from rule 1; leftover slots get arbitrary later rules.
    std::vector<std::array<uint32_t, 2>> child(nbin + 1, {0, 0});
    std::vector<std::pair<uint32_t, uint32_t>> avail;  // (rule, slot index)
    for (uint32_t j = 2; j <= n; ++j) {
        if (j - 1 <= nbin) {
            avail.push_back({j - 1, 0});
            avail.push_back({j - 1, 1});
        }
        size_t at = size_t(pick(rng, 0, avail.size() - 1));
        auto [rule, slot] = avail[at];
        avail[at] = avail.back();
        avail.pop_back();
        child[rule][slot] = j;
    }
    for (auto [rule, slot] : avail)
        child[rule][slot] = uint32_t(pick(rng, rule + 1, n));

    std::vector<std::string> lines;
    lines.reserve(n);
    for (uint32_t i = 1; i <= nbin; ++i) {
        uint32_t a = child[i][0], b = child[i][1];
        if (pick(rng, 0, 1)) std::swap(a, b);
        lines.push_back(binary_line(a, b));
    }
    for (uint32_t t = 0; t < sigma; ++t) lines.push_back(terminal_line(char('a' + t)));
    return render(n, lines);
}

std::string skewed_chain(uint32_t n, uint32_t sigma, uint64_t seed) {
    check_sigma(sigma);
    if (n < 2 * sigma + 1)
        throw std::invalid_argument("gen: skewed-chain shape needs n >= 2*sigma + 1");
    std::mt19937_64 rng(seed);
    const uint32_t nbin = n - sigma;

    // rights[i] is the terminal hanging off chain rule i. The first sigma
    // spots cycle through all terminals so none is left unreferenced.
    std::vector<uint32_t> rights(nbin + 1, 0);
    std::vector<uint32_t> first(sigma);
    for (uint32_t t = 0; t < sigma; ++t) first[t] = nbin + 1 + t;
    std::shuffle(first.begin(), first.end(), rng);
    for (uint32_t i = 1; i < nbin; ++i)
        rights[i] = i <= sigma ? first[i - 1] : uint32_t(pick(rng, nbin + 1, n));

    std::vector<std::string> lines;
    lines.reserve(n);
    for (uint32_t i = 1; i < nbin; ++i) lines.push_back(binary_line(i + 1, rights[i]));
    lines.push_back(binary_line(uint32_t(pick(rng, nbin + 1, n)),
                                uint32_t(pick(rng, nbin + 1, n))));
    for (uint32_t t = 0; t < sigma; ++t) lines.push_back(terminal_line(char('a' + t)));
    return render(n, lines);
}

std::string generate(std::string_view shape, uint32_t n, uint32_t sigma, uint64_t seed) {
    if (shape == "fibonacci") return fibonacci(n);
    if (shape == "power") return power(n);
    if (shape == "random-binary") return random_binary(n, sigma, seed);
    if (shape == "skewed-chain") return skewed_chain(n, sigma, seed);
    throw std::invalid_argument("gen: unknown shape '" + std::string(shape) + "'");
}

}  // namespace gen
}  // namespace slpmatch
