#include "gsns/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace gsns {

BinaryMask BinaryMask::from_set(const std::vector<int>& positions, int horizon) {
    if (horizon < 1) throw std::invalid_argument("BinaryMask: horizon must be >= 1");
    BinaryMask m;
    m.bits.assign(static_cast<std::size_t>(horizon), 0);
    for (int p : positions) {
        if (p >= 0 && p < horizon) m.bits[static_cast<std::size_t>(p)] = 1;
    }
    return m;
}

double mask_density(const BinaryMask& mask) {
    if (mask.bits.empty()) throw std::invalid_argument("mask_density: empty mask");
    long count = 0;
    for (auto b : mask.bits) count += b;
    return static_cast<double>(count) / static_cast<double>(mask.bits.size());
}

double cylinder_frequency(const BinaryMask& mask) { return mask_density(mask); }

PatternFamily::PatternFamily(int n, int r, std::vector<std::vector<int>> words)
    : n_(n), r_(r), words_(std::move(words)) {
    if (n < 1) throw std::invalid_argument("PatternFamily: n must be >= 1");
    if (r < 2) throw std::invalid_argument("PatternFamily: alphabet size must be >= 2");
    if (words_.empty()) throw std::invalid_argument("PatternFamily: no words");
    for (const auto& w : words_) {
        if (static_cast<int>(w.size()) != n) throw std::invalid_argument("PatternFamily: word length != n");
        for (int s : w) {
            if (s < 1 || s > r) throw std::invalid_argument("PatternFamily: symbol outside {1..r}");
        }
    }
    std::sort(words_.begin(), words_.end());
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

namespace {

int symbol_bits(int r) {
    int b = 1;
    while ((1 << b) < r) ++b;  // symbols stored as s-1 in [0, r)
    return b;
}

}  // namespace

bool is_fully_traced(const PatternFamily& family, const std::vector<int>& coords) {
    const int r = family.r();
    for (int c : coords) {
        if (c < 1 || c > family.n()) throw std::invalid_argument("is_fully_traced: coordinate outside {1..n}");
    }
    if (coords.empty()) return true;  // the empty cube has one element, hit by any word

    // |R| must reach r^|J| for the restriction to be onto.
    double needed = 1.0;
    for (std::size_t i = 0; i < coords.size(); ++i) needed *= r;
    if (needed > static_cast<double>(family.words().size())) return false;
    const auto target = static_cast<std::uint64_t>(needed);

    const int bits = symbol_bits(r);
    if (bits * static_cast<int>(coords.size()) <= 64) {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(family.words().size() * 2);
        for (const auto& w : family.words()) {
            std::uint64_t key = 0;
            for (int c : coords) {
                key = (key << bits) | static_cast<std::uint64_t>(w[static_cast<std::size_t>(c - 1)] - 1);
            }
            seen.insert(key);
            if (seen.size() == target) return true;
        }
        return false;
    }
    std::set<std::vector<int>> seen;
    for (const auto& w : family.words()) {
        std::vector<int> proj;
        proj.reserve(coords.size());
        for (int c : coords) proj.push_back(w[static_cast<std::size_t>(c - 1)]);
        seen.insert(std::move(proj));
        if (seen.size() == target) return true;
    }
    return false;
}

namespace {

// Depth-first, include-branch first: among equal-cardinality sets this visits
// them in lexicographic order, so keeping the first strict improvement yields
// the lexicographically smallest maximum.
void search(const PatternFamily& family, int next, std::vector<int>& current,
            std::vector<int>& best, int depth_cap) {
    const int n = family.n();
    const int remaining = n - next + 1;
    if (static_cast<int>(current.size()) + remaining <= static_cast<int>(best.size())) return;
    if (next > n) return;
    if (static_cast<int>(current.size()) < depth_cap) {
        current.push_back(next);
        if (is_fully_traced(family, current)) {
            if (current.size() > best.size()) best = current;
            search(family, next + 1, current, best, depth_cap);
        }
        current.pop_back();
    }
    search(family, next + 1, current, best, depth_cap);
}

}  // namespace

std::vector<int> find_free_set(const PatternFamily& family) {
    if (family.n() > 24) throw std::invalid_argument("find_free_set: exact search capped at n = 24");
    // r^|J| <= |R| bounds the answer.
    const int cap = static_cast<int>(std::floor(std::log(static_cast<double>(family.words().size())) /
                                                std::log(static_cast<double>(family.r())) +
                                                1e-12));
    std::vector<int> current, best;
    search(family, 1, current, best, std::min(cap, family.n()));
    return best;
}

}  // namespace gsns
