#ifndef SLPMATCH_SLP_HPP
#define SLPMATCH_SLP_HPP

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slpmatch/common.hpp"

namespace slpmatch {

// Parse failure for the rule-list text format; `line` is 1-based.
class SlpParseError : public std::runtime_error {
  public:
    SlpParseError(size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    size_t line() const { return line_; }

  private:
    size_t line_;
};

// Straight-line program over bytes. Rule 1 is the start symbol; a binary rule
// may only reference rules with strictly larger indices, so evaluation order
// is n .. 1. Every rule must be reachable from the start.
//
// Text format: first line is n, then one rule per line, in index order:
//   T <byte>     byte is a printable character, or \xHH for any value
//   N <j> <k>    concatenation val(j) val(k), with i < j, k <= n
class Slp {
  public:
    struct Rule {
        bool terminal = false;
        uint8_t byte = 0;
        uint32_t left = 0;
        uint32_t right = 0;
    };
    // Some rule referencing i (i > 1), and on which side; used to walk from a
    // rule up to the start symbol.
    struct Referrer {
        uint32_t rule = 0;
        bool right_side = false;
    };

    static Slp parse(std::istream& in);
    static Slp parse_string(const std::string& text);
    static Slp parse_file(const std::string& path);

    uint32_t size() const { return static_cast<uint32_t>(rules_.size()) - 1; }
    const Rule& rule(uint32_t i) const { return rules_[i]; }
    const Referrer& referrer(uint32_t i) const { return referrer_[i]; }

    // Rule lengths clamped at cap; lengths[0] is unused.
    std::vector<uint64_t> lengths(uint64_t cap) const;
    // Height 0 for terminals, 1 + max of children otherwise.
    std::vector<uint32_t> heights() const;
    // layers()[k] lists the rules of height k, so children of a rule always
    // live in strictly earlier layers.
    std::vector<std::vector<uint32_t>> layers() const;

    std::string expand(uint64_t limit) const;  // throws when val(1) is longer
    std::string expand_prefix(uint64_t max_bytes, bool& truncated) const;
    std::string to_text() const;

  private:
    std::vector<Rule> rules_;        // 1-based, rules_[0] unused
    std::vector<Referrer> referrer_;
};

}  // namespace slpmatch

#endif
