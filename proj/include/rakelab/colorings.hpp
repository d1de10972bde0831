#pragma once

// Colorings of 2^{<w} with exact decision oracles on the "pattern" class:
// a finite binary decision set plus one eventual behavior per decision leaf.
// On this class, density of a color above a string, monochromatic
// extendability, and full-range computations are all decidable, which is
// what lets every downstream construction be verified exactly.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "rakelab/treeset.hpp"

namespace rakelab {

using Color = std::uint32_t;
using ColorSet = std::set<Color>;

/// Behavior of a coloring on the cone of proper extensions of a decision
/// leaf.
///
///   Constant(c)        the whole cone is colored c
///   LengthMod(p,wheel) s is colored wheel[|s| mod p]
///   LastBit            s is colored by its final bit
///   SpineZero(a,b)     the all-zeros continuation of the leaf is colored a,
///                      everything off that spine is colored b
///
/// Two color sets matter per behavior. values() is the recurrent set: the
/// colors found in every tail of every sub-cone (these are the colors that
/// can be dense, and the colors a full monochromatic tree can use).
/// occurring() additionally includes colors that appear but only along a
/// single branch (the spine color). The two coincide except for SpineZero.
struct ConeBehavior {
    struct Constant {
        Color c = 0;
    };
    struct LengthMod {
        unsigned period = 1;
        std::vector<Color> wheel;  // size == period
    };
    struct LastBit {};
    struct SpineZero {
        Color spine = 0;
        Color off = 1;
    };

    std::variant<Constant, LengthMod, LastBit, SpineZero> kind{Constant{}};

    [[nodiscard]] static ConeBehavior constant(Color c) { return {Constant{c}}; }
    [[nodiscard]] static ConeBehavior length_mod(std::vector<Color> wheel) {
        ConeBehavior b;
        b.kind = LengthMod{static_cast<unsigned>(wheel.size()), std::move(wheel)};
        return b;
    }
    [[nodiscard]] static ConeBehavior last_bit() { return {LastBit{}}; }
    [[nodiscard]] static ConeBehavior spine_zero(Color spine, Color off) {
        return {SpineZero{spine, off}};
    }

    /// Color of a proper extension s of the governing leaf.
    [[nodiscard]] Color apply(const BinStr& leaf, const BinStr& s) const;

    [[nodiscard]] ColorSet values() const;     // recurrent set
    [[nodiscard]] ColorSet occurring() const;  // occurrence set

    [[nodiscard]] unsigned period() const {
        if (const auto* lm = std::get_if<LengthMod>(&kind)) return lm->period;
        return 1;
    }

    friend bool operator==(const ConeBehavior& a, const ConeBehavior& b);
};

/// A total coloring of 2^{<w} with a finite decision region.
///
/// Invariants: the decision set is nonempty, prefix-closed, and every element
/// has 0 or 2 children in it; every string is either in the decision set or
/// properly extends exactly one of its leaves; all colors are < palette.
class PatternColoring {
   public:
    PatternColoring() = default;
    PatternColoring(Color palette, std::map<BinStr, Color> table,
                    std::map<BinStr, ConeBehavior> behaviors);

    [[nodiscard]] static PatternColoring constant(Color palette, Color c);
    /// Decision set {<>}, one cone behavior everywhere above the root.
    [[nodiscard]] static PatternColoring single_cone(Color palette, Color root_color,
                                                     ConeBehavior b);

    [[nodiscard]] Color palette() const noexcept { return palette_; }
    [[nodiscard]] const std::map<BinStr, Color>& table() const noexcept { return table_; }
    [[nodiscard]] const std::map<BinStr, ConeBehavior>& behaviors() const noexcept {
        return behaviors_;
    }
    [[nodiscard]] TreeSet decision_set() const;
    [[nodiscard]] std::vector<BinStr> decision_leaves() const;
    [[nodiscard]] unsigned max_decision_length() const noexcept { return max_len_; }

    /// lcm of all LengthMod periods (at least 1).
    [[nodiscard]] unsigned period_lcm() const;

    [[nodiscard]] Color eval(const BinStr& s) const;

    /// The unique decision leaf governing a string outside the decision set.
    [[nodiscard]] const BinStr& governing_leaf(const BinStr& s) const;

    /// Exact range over all of 2^{<w}.
    [[nodiscard]] ColorSet range() const;

    /// Colors occurring anywhere in the reflexive cone above s.
    [[nodiscard]] ColorSet cone_colors(const BinStr& s) const;

    /// True iff f(t) = c for every t extending s (reflexively).
    [[nodiscard]] bool cone_constant(const BinStr& s, Color c) const;

    friend bool operator==(const PatternColoring& a, const PatternColoring& b);

   private:
    void validate() const;

    Color palette_ = 1;
    std::map<BinStr, Color> table_;
    std::map<BinStr, ConeBehavior> behaviors_;
    unsigned max_len_ = 0;
};

/// True iff {t : f(t) = c} is dense above s, i.e. every extension of s has a
/// further extension colored c. Decided exactly: c must be recurrent in every
/// decision-leaf cone that meets the cone of s.
bool dense_above(const PatternColoring& f, Color c, const BinStr& s);

/// {c : dense_above(f, c, s)}. May be empty when incompatible cones lie above
/// s; it is always nonempty once s is inside a single decision-leaf cone.
ColorSet recurrent_colors(const PatternColoring& f, const BinStr& s);

/// True iff some extension of s opens a cone with no occurrence of c at all
/// (the avoidance test driving the W-set construction).
bool avoidable_above(const PatternColoring& f, Color c, const BinStr& s);

/// Least length of a string at or above s colored c; nullopt when c never
/// occurs above s. Exact and cheap (no tree walk).
std::optional<unsigned> min_occurrence_length(const PatternColoring& f, Color c, const BinStr& s);

/// Decides whether some H isomorphic to the full binary tree, monochromatic
/// for f with color c, has exactly S as its first height(S) ranks. S must be
/// full-tree shaped (or empty).
bool mono_extendable(const PatternColoring& f, const TreeSet& S, Color c);

/// All S isomorphic to 2^{<n}, monochromatic with color c, every element
/// extending root_bound with length <= len_bound. Deterministic length-lex
/// ordering of the result.
std::vector<TreeSet> enumerate_mono(const PatternColoring& f, const BinStr& root_bound, unsigned n,
                                    unsigned len_bound, Color c);

/// Existence-only variant of enumerate_mono (least witness, or nullopt),
/// computed by a bottom-up table over the bounded string universe.
std::optional<TreeSet> exists_mono(const PatternColoring& f, const BinStr& root_bound, unsigned n,
                                   unsigned len_bound, Color c);

/// The finite density check used as the independent acceptance oracle:
/// for all t >= s with |t| <= big_bound there is r >= t with |r| <=
/// big_bound + period_slack and f(r) = c. With big_bound = max decision
/// length + 4 and period_slack = lcm of periods this is sound and complete
/// for the pattern class.
bool dense_above_bruteforce(const PatternColoring& f, Color c, const BinStr& s,
                            unsigned big_bound, unsigned period_slack);

/// Least length-lex string at or above s with f-value c. Requires c to be
/// reachable above s (callers guarantee density); throws after a depth cap
/// otherwise.
BinStr least_colored_at_or_above(const PatternColoring& f, const BinStr& s, Color c);

/// Least length-lex proper extension of s with f-value c.
BinStr least_colored_above(const PatternColoring& f, const BinStr& s, Color c);

// ---------------------------------------------------------------------------
// Program colorings: pointwise budgeted evaluation, no exact oracles.
// ---------------------------------------------------------------------------

struct FiniteOmegaTree;  // defined in problems.hpp

/// A deterministic budgeted coloring program. Only pointwise evaluation is
/// offered; density questions are not decidable here, so verifiers treat
/// these instances as only partially checkable.
class ProgramColoring {
   public:
    struct ConstantProg {
        Color c = 0;
    };
    /// Membership coloring of the branch-code tree of an omega-tree: strings
    /// parse as 0-blocks separated by 1s; complete blocks decode via the
    /// Cantor pairing to a (tree node, spoiler) pair sequence.
    struct RMembershipProg {
        std::shared_ptr<const FiniteOmegaTree> tree;
    };
    struct PatternProg {
        PatternColoring f;
    };

    std::variant<ConstantProg, RMembershipProg, PatternProg> prog{ConstantProg{}};
    Color declared_palette = 1;

    /// Deterministic evaluation; returns nullopt when the step budget is
    /// exhausted (inconclusive, never wrong).
    [[nodiscard]] std::optional<Color> eval(const BinStr& s, std::uint64_t budget) const;
};

/// Cantor pairing (a+b)(a+b+1)/2 + b with its inverse; used by branch codes.
std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t n);

}  // namespace rakelab
