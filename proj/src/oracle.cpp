#include "slpmatch/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace slpmatch {
namespace oracle {

std::optional<size_t> first_occurrence(std::string_view text, std::string_view pat) {
    const size_t pos = text.find(pat);
    if (pos == std::string_view::npos) return std::nullopt;
    return pos;
}

SubstringMap::SubstringMap(std::string text) : text_(std::move(text)) {
    const std::string_view t = text_;
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t len = 1; i + len <= t.size(); ++len)
            first_.try_emplace(t.substr(i, len), static_cast<uint32_t>(i));
}

std::optional<uint32_t> SubstringMap::first(std::string_view s) const {
    if (s.empty()) return 0;
    const auto it = first_.find(s);
    if (it == first_.end()) return std::nullopt;
    return it->second;
}

uint32_t weighted_ancestor(const std::vector<uint32_t>& parent,
                           const std::vector<uint64_t>& weight, uint32_t u, uint64_t k) {
    if (k > weight[u]) return kNoNode;
    uint32_t best = u;
    for (uint32_t v = u; v != kNoNode; v = parent[v])
        if (weight[v] >= k) best = v;
    return best;
}

size_t lcp(std::string_view s, size_t i, size_t j) {
    size_t t = 0;
    while (i - 1 + t < s.size() && j - 1 + t < s.size() && s[i - 1 + t] == s[j - 1 + t]) ++t;
    return t;
}

size_t lcs(std::string_view s, size_t i, size_t j) {
    size_t t = 0;
    while (t < i && t < j && s[i - 1 - t] == s[j - 1 - t]) ++t;
    return t;
}

std::vector<uint32_t> pref_periods(std::string_view s) {
    std::vector<uint32_t> out(s.size(), 0);
    for (size_t k = 1; k <= s.size(); ++k) {
        for (size_t d = 1; d <= k; ++d) {
            bool ok = true;
            for (size_t i = 0; i + d < k; ++i)
                if (s[i] != s[i + d]) {
                    ok = false;
                    break;
                }
            if (ok) {
                out[k - 1] = static_cast<uint32_t>(d);
                break;
            }
        }
    }
    return out;
}

std::vector<uint32_t> suf_periods(std::string_view s) {
    std::string rev(s.rbegin(), s.rend());
    std::vector<uint32_t> rp = pref_periods(rev);
    std::vector<uint32_t> out(s.size(), 0);
    for (size_t k = 1; k <= s.size(); ++k) out[k - 1] = rp[s.size() - k];
    return out;
}

std::pair<uint32_t, uint32_t> pref_suf(std::string_view p, uint32_t a, uint32_t b) {
    const std::string_view u = b >= a ? p.substr(a - 1, b - a + 1) : std::string_view{};
    uint32_t pref = 0, suf = 0;
    for (size_t len = u.size(); len >= 1; --len)
        if (p.size() >= len && p.substr(p.size() - len) == u.substr(0, len)) {
            pref = static_cast<uint32_t>(len);
            break;
        }
    for (size_t len = u.size(); len >= 1; --len)
        if (p.size() >= len && p.substr(0, len) == u.substr(u.size() - len)) {
            suf = static_cast<uint32_t>(len);
            break;
        }
    return {pref, suf};
}

GridCounter::GridCounter(const std::vector<MicroGrid::Point>& pts) : pts_(pts) {
    for (const auto& p : pts) {
        xs_.push_back(p.x);
        ys_.push_back(p.y);
    }
    std::sort(xs_.begin(), xs_.end());
    xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
    std::sort(ys_.begin(), ys_.end());
    ys_.erase(std::unique(ys_.begin(), ys_.end()), ys_.end());
    pre_.assign(xs_.size() + 1, std::vector<uint32_t>(ys_.size() + 1, 0));
    for (const auto& p : pts) {
        const size_t xi = std::lower_bound(xs_.begin(), xs_.end(), p.x) - xs_.begin();
        const size_t yi = std::lower_bound(ys_.begin(), ys_.end(), p.y) - ys_.begin();
        ++pre_[xi + 1][yi + 1];
    }
    for (size_t i = 1; i <= xs_.size(); ++i)
        for (size_t j = 1; j <= ys_.size(); ++j)
            pre_[i][j] += pre_[i - 1][j] + pre_[i][j - 1] - pre_[i - 1][j - 1];
}

size_t GridCounter::count(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2) const {
    if (x1 > x2 || y1 > y2) throw std::invalid_argument("GridCounter: inverted rectangle");
    const size_t xa = std::lower_bound(xs_.begin(), xs_.end(), x1) - xs_.begin();
    const size_t xb = std::upper_bound(xs_.begin(), xs_.end(), x2) - xs_.begin();
    const size_t ya = std::lower_bound(ys_.begin(), ys_.end(), y1) - ys_.begin();
    const size_t yb = std::upper_bound(ys_.begin(), ys_.end(), y2) - ys_.begin();
    return pre_[xb][yb] - pre_[xa][yb] - pre_[xb][ya] + pre_[xa][ya];
}

bool GridCounter::contains_point(uint64_t x1, uint64_t x2, uint64_t y1, uint64_t y2,
                                 const MicroGrid::Point& p) const {
    if (p.x < x1 || p.x > x2 || p.y < y1 || p.y > y2) return false;
    return std::find(pts_.begin(), pts_.end(), p) != pts_.end();
}

}  // namespace oracle
}  // namespace slpmatch
