#pragma once

// Finite subsets of 2^{<w} with their rank structure: rank, height, leaves,
// successor relation, symmetry, full-tree isomorphism, and the selection of
// pairwise incomparable representatives from disjoint antichain families.

#include <optional>
#include <vector>

#include "rakelab/binstr.hpp"

namespace rakelab {

struct member_not_found : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct precondition_violated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A finite set of binary strings, kept sorted length-lexicographically.
///
/// TreeSet is a value: equality is set equality, and every derived quantity
/// (rank, height, leaves, ...) is a function of the element set alone.
/// The rank of s in S is the number of proper prefixes of s lying in S.
class TreeSet {
   public:
    TreeSet() = default;
    explicit TreeSet(std::vector<BinStr> elems);

    [[nodiscard]] static TreeSet of(std::initializer_list<const char*> words);

    [[nodiscard]] const std::vector<BinStr>& elems() const noexcept { return elems_; }
    [[nodiscard]] std::size_t size() const noexcept { return elems_.size(); }
    [[nodiscard]] bool empty() const noexcept { return elems_.empty(); }
    [[nodiscard]] bool contains(const BinStr& s) const noexcept;

    [[nodiscard]] TreeSet with(const BinStr& s) const;
    [[nodiscard]] bool subset_of(const TreeSet& other) const noexcept;

    /// rank_S(s) = |{t in S : t proper prefix of s}|. Throws member_not_found
    /// if s is not in the set.
    [[nodiscard]] unsigned rank(const BinStr& s) const;

    /// {s in S : rank(s) < n}.
    [[nodiscard]] TreeSet restrict_rank(unsigned n) const;

    /// 0 for the empty set, otherwise max rank + 1.
    [[nodiscard]] unsigned height() const;

    /// Elements with a rank exactly one higher extending s.
    [[nodiscard]] TreeSet successors(const BinStr& s) const;

    /// Elements with no successor in the set.
    [[nodiscard]] TreeSet leaves() const;

    /// Rank-0 elements (more than one means the set is not rooted).
    [[nodiscard]] TreeSet roots() const;
    [[nodiscard]] bool rooted() const { return roots().size() == 1; }

    /// Equal-rank elements all have the same number of successors.
    [[nodiscard]] bool is_symmetric() const;

    /// Returns n if (S, prefix-order) is isomorphic to the complete binary
    /// tree of height n (so |S| = 2^n - 1); nullopt otherwise. The empty set
    /// yields 0.
    [[nodiscard]] std::optional<unsigned> iso_to_full() const;

    /// True when every pair of elements is incomparable.
    [[nodiscard]] bool is_antichain() const;

    friend bool operator==(const TreeSet& a, const TreeSet& b) noexcept {
        return a.elems_ == b.elems_;
    }
    friend bool operator!=(const TreeSet& a, const TreeSet& b) noexcept { return !(a == b); }
    friend bool operator<(const TreeSet& a, const TreeSet& b) noexcept;

   private:
    std::vector<BinStr> elems_;  // sorted length-lex, no duplicates
};

/// Selects pairwise incomparable representatives s_i in families[i].
///
/// Preconditions: the families are pairwise disjoint antichains, each of size
/// at least families.size(). The algorithm repeatedly takes a maximal-rank
/// element of the union (ties broken length-lex least), assigns it to its
/// family, removes everything comparable with it, and recurses on the rest.
std::vector<BinStr> incomparable_selection(const std::vector<TreeSet>& families);

/// Brute-force existence oracle for the same problem: backtracking over all
/// choices. Independent of incomparable_selection; used to cross-check it.
std::optional<std::vector<BinStr>> incomparable_selection_exists(
    const std::vector<TreeSet>& families);

}  // namespace rakelab
