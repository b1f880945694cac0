#pragma once

#include <cstdint>
#include <vector>

namespace gsns {

/// Finite word over an alphabet {1, ..., r} on an explicit sorted index set.
struct Word {
    std::vector<int> domain;
    std::vector<int> symbols;
};

/// 0/1 sequence over a finite horizon; encodes a subset of the nonnegative
/// integers as the positions holding 1.
struct BinaryMask {
    std::vector<std::uint8_t> bits;

    int horizon() const { return static_cast<int>(bits.size()); }
    static BinaryMask from_set(const std::vector<int>& positions, int horizon);
};

/// Fraction of ones over the horizon.
double mask_density(const BinaryMask& mask);

/// Occupation frequency of the one-cylinder; by definition identical to
/// mask_density, kept under its own name so reports can use either language.
double cylinder_frequency(const BinaryMask& mask);

/// A set of full-domain words over {1..r}^{1..n}, deduplicated.
class PatternFamily {
public:
    PatternFamily(int n, int r, std::vector<std::vector<int>> words);

    int n() const { return n_; }
    int r() const { return r_; }
    const std::vector<std::vector<int>>& words() const { return words_; }

private:
    int n_, r_;
    std::vector<std::vector<int>> words_;
};

/// True iff restricting the family to the coordinates in J (1-based, subset
/// of {1..n}) yields every word of {1..r}^J.
bool is_fully_traced(const PatternFamily& family, const std::vector<int>& coords);

/// Exact maximum-cardinality fully-traced coordinate set, ties broken by the
/// lexicographically smallest sorted index list. Branch-and-bound over
/// subsets; untraced sets prune all supersets. n is capped at 24.
std::vector<int> find_free_set(const PatternFamily& family);

}  // namespace gsns
