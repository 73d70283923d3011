#include "slpmatch/slp.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace slpmatch {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

uint32_t parse_u32(const std::string& tok, size_t line, const char* what) {
    uint32_t v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw SlpParseError(line, std::string("invalid ") + what + " '" + tok + "'");
    return v;
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

uint8_t parse_byte(const std::string& tok, size_t line) {
    if (tok.size() == 1) {
        const unsigned char c = static_cast<unsigned char>(tok[0]);
        if (c >= 0x21 && c <= 0x7e && c != '\\') return c;
        throw SlpParseError(line, "byte '" + tok + "' must be printable or \\xHH");
    }
    if (tok.size() == 4 && tok[0] == '\\' && (tok[1] == 'x' || tok[1] == 'X')) {
        const int hi = hex_digit(tok[2]), lo = hex_digit(tok[3]);
        if (hi >= 0 && lo >= 0) return static_cast<uint8_t>(hi * 16 + lo);
    }
    throw SlpParseError(line, "invalid byte token '" + tok + "'");
}

}  // namespace

Slp Slp::parse(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

Slp Slp::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse(in);
}

Slp Slp::parse_string(const std::string& text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        if (nl == std::string::npos) nl = text.size();
        std::string line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = nl + 1;
    }
    while (!lines.empty() && split_ws(lines.back()).empty()) lines.pop_back();

    if (lines.empty()) throw SlpParseError(1, "empty input");
    const auto head = split_ws(lines[0]);
    if (head.size() != 1) throw SlpParseError(1, "expected rule count");
    const uint32_t n = parse_u32(head[0], 1, "rule count");
    if (n == 0) throw SlpParseError(1, "program must have at least one rule");
    if (lines.size() < static_cast<size_t>(n) + 1)
        throw SlpParseError(lines.size() + 1, "unexpected end of input, expected " +
                                                  std::to_string(n) + " rules");
    if (lines.size() > static_cast<size_t>(n) + 1)
        throw SlpParseError(n + 2, "trailing content after last rule");

    Slp slp;
    slp.rules_.resize(n + 1);
    slp.referrer_.resize(n + 1);
    for (uint32_t i = 1; i <= n; ++i) {
        const size_t ln = i + 1;
        const auto toks = split_ws(lines[ln - 1]);
        if (toks.empty()) throw SlpParseError(ln, "missing rule");
        Rule& r = slp.rules_[i];
        if (toks[0] == "T") {
            if (toks.size() != 2) throw SlpParseError(ln, "terminal rule needs one byte token");
            r.terminal = true;
            r.byte = parse_byte(toks[1], ln);
        } else if (toks[0] == "N") {
            if (toks.size() != 3) throw SlpParseError(ln, "binary rule needs two references");
            r.left = parse_u32(toks[1], ln, "reference");
            r.right = parse_u32(toks[2], ln, "reference");
            for (const uint32_t ref : {r.left, r.right}) {
                if (ref == 0 || ref > n)
                    throw SlpParseError(ln, "reference to undefined rule " + std::to_string(ref));
                if (ref <= i)
                    throw SlpParseError(ln, "reference to rule " + std::to_string(ref) +
                                                " violates ascending order");
            }
        } else {
            throw SlpParseError(ln, "unknown rule kind '" + toks[0] + "'");
        }
    }

    std::vector<char> seen(n + 1, 0);
    std::vector<uint32_t> stack = {1};
    seen[1] = 1;
    while (!stack.empty()) {
        const uint32_t i = stack.back();
        stack.pop_back();
        const Rule& r = slp.rules_[i];
        if (r.terminal) continue;
        if (!seen[r.left]) {
            seen[r.left] = 1;
            slp.referrer_[r.left] = {i, false};
            stack.push_back(r.left);
        }
        if (!seen[r.right]) {
            seen[r.right] = 1;
            slp.referrer_[r.right] = {i, true};
            stack.push_back(r.right);
        }
    }
    for (uint32_t i = 1; i <= n; ++i)
        if (!seen[i])
            throw SlpParseError(i + 1, "rule " + std::to_string(i) + " is unreachable");
    return slp;
}

std::vector<uint64_t> Slp::lengths(uint64_t cap) const {
    const uint32_t n = size();
    std::vector<uint64_t> len(n + 1, 0);
    for (uint32_t i = n; i >= 1; --i) {
        const Rule& r = rules_[i];
        len[i] = r.terminal ? 1 : sat_add(len[r.left], len[r.right], cap);
    }
    return len;
}

std::vector<uint32_t> Slp::heights() const {
    const uint32_t n = size();
    std::vector<uint32_t> h(n + 1, 0);
    for (uint32_t i = n; i >= 1; --i) {
        const Rule& r = rules_[i];
        h[i] = r.terminal ? 0 : 1 + std::max(h[r.left], h[r.right]);
    }
    return h;
}

std::vector<std::vector<uint32_t>> Slp::layers() const {
    const auto h = heights();
    const uint32_t hmax = *std::max_element(h.begin() + 1, h.end());
    std::vector<std::vector<uint32_t>> out(hmax + 1);
    for (uint32_t i = 1; i <= size(); ++i) out[h[i]].push_back(i);
    return out;
}

std::string Slp::expand_prefix(uint64_t max_bytes, bool& truncated) const {
    truncated = false;
    std::string out;
    std::vector<uint32_t> stack = {1};
    while (!stack.empty()) {
        const uint32_t i = stack.back();
        stack.pop_back();
        const Rule& r = rules_[i];
        if (r.terminal) {
            if (out.size() >= max_bytes) {
                truncated = true;
                return out;
            }
            out.push_back(static_cast<char>(r.byte));
        } else {
            stack.push_back(r.right);
            stack.push_back(r.left);
        }
    }
    return out;
}

std::string Slp::expand(uint64_t limit) const {
    bool truncated = false;
    std::string out = expand_prefix(limit, truncated);
    if (truncated) throw std::runtime_error("expansion exceeds " + std::to_string(limit) + " bytes");
    return out;
}

std::string Slp::to_text() const {
    std::string out = std::to_string(size());
    out.push_back('\n');
    static const char* hex = "0123456789abcdef";
    for (uint32_t i = 1; i <= size(); ++i) {
        const Rule& r = rules_[i];
        if (r.terminal) {
            out += "T ";
            if (r.byte >= 0x21 && r.byte <= 0x7e && r.byte != '\\') {
                out.push_back(static_cast<char>(r.byte));
            } else {
                out += "\\x";
                out.push_back(hex[r.byte >> 4]);
                out.push_back(hex[r.byte & 0xf]);
            }
        } else {
            out += "N " + std::to_string(r.left) + " " + std::to_string(r.right);
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace slpmatch
