#pragma once

// Rake machinery: W-sets of eventually-avoidable colors (exact and staged),
// good rakes of unbounded height built lazily block by block, finite
// truncation by exhaustive sub-tree search, and the labeling/extraction
// procedure that pulls a monochromatic full tree out of a finite rake.

#include <mutex>

#include "rakelab/problems.hpp"

namespace rakelab {

// ---------------------------------------------------------------------------
// W-sets
// ---------------------------------------------------------------------------

struct WResult {
    ColorSet W;
    BinStr tau;
    std::uint64_t stop_stage = 0;
    // (stage, adopted tau, W after the stage) for every stage that changed
    // something; entry 0 records the start.
    std::vector<std::tuple<std::uint64_t, BinStr, ColorSet>> trace;
};

/// The stagewise construction of the set of colors eventually avoidable above
/// sigma: at stage s, scan strings with index < s extending the current tau;
/// if some c in C \ W has no occurrence at all above such a candidate, adopt
/// the least candidate and enumerate every such c. Runs until no remaining
/// color is avoidable above tau. Exact on pattern colorings.
WResult compute_W(const PatternColoring& f, const ColorSet& C, const BinStr& sigma);

/// A stage-u approximation of compute_W: the avoidance test only sees
/// occurrences up to depth u and the construction runs u stages. Converges to
/// the exact result (same adoptions, same stop stage) as u grows.
WResult compute_W_staged(const PatternColoring& f, const ColorSet& C, const BinStr& sigma,
                         std::uint64_t u);

/// Stream of finite approximations V_u to a W-set, with the nonemptiness
/// repair: whenever the raw approximation would cover all of C, the element
/// whose membership changed most recently (least such on ties, or the least
/// element outright) is removed, so C \ V_u is never empty. Tracks last-change
/// stages. The default schedule is the staged construction above; tests may
/// inject an explicit schedule.
class StagedW {
   public:
    StagedW(const PatternColoring& f, ColorSet C, BinStr sigma);
    StagedW(ColorSet C, std::vector<ColorSet> schedule);

    /// V_u for the next u (starting at u = 0).
    ColorSet next();
    [[nodiscard]] std::uint64_t stage() const noexcept { return u_; }

   private:
    ColorSet raw(std::uint64_t u);

    const PatternColoring* f_ = nullptr;
    ColorSet C_;
    BinStr sigma_;
    std::vector<ColorSet> schedule_;
    std::map<Color, std::uint64_t> last_change_;
    std::optional<ColorSet> prev_raw_;
    std::uint64_t u_ = 0;
};

// ---------------------------------------------------------------------------
// Rakes
// ---------------------------------------------------------------------------

/// A finite rake: per block, the chains of |C| nodes in construction order.
/// Chain q of block b+1 descends from chain q / (|C|+1) of block b. The node
/// at position i of a chain has rank b|C| + i and color C[i].
struct FiniteRake {
    std::vector<Color> C;                              // sorted, distinct
    std::vector<std::vector<std::vector<BinStr>>> blocks;

    [[nodiscard]] unsigned k() const noexcept { return static_cast<unsigned>(C.size()); }
    [[nodiscard]] unsigned height() const noexcept {
        return static_cast<unsigned>(blocks.size() * C.size());
    }
    [[nodiscard]] const BinStr& root() const { return blocks.front().front().front(); }
    [[nodiscard]] TreeSet node_set() const;
    /// Leaves in length-lex order (the top node of each last-block chain).
    [[nodiscard]] std::vector<BinStr> leaves() const;
    [[nodiscard]] std::uint64_t block_of(const BinStr& node) const;

    friend bool operator==(const FiniteRake& a, const FiniteRake& b) {
        return a.C == b.C && a.blocks == b.blocks;
    }
};

/// Checks the five rake clauses on an arbitrary node set: rooted, symmetric,
/// rank residue i colored C[i], one successor off block ends, 0 or |C|+1
/// successors at block ends.
bool validate_rake(const PatternColoring& f, const std::vector<Color>& C, const TreeSet& nodes);

/// A lazily grown rake of unbounded height with memoized blocks. Block
/// generation is deterministic (length-lex searches, canonical fan-out
/// stems), so concurrent readers observe one block sequence.
class LazyRake {
   public:
    LazyRake(PatternColoring f, std::vector<Color> C, BinStr root);

    [[nodiscard]] const std::vector<Color>& C() const noexcept { return C_; }
    [[nodiscard]] const BinStr& root() const noexcept { return root_; }

    /// Blocks 0..m-1 as a finite rake (the rank < m|C| truncation).
    [[nodiscard]] FiniteRake truncate(unsigned m);

   private:
    void grow_to(unsigned m);

    PatternColoring f_;
    std::vector<Color> C_;
    BinStr root_;
    std::vector<std::vector<std::vector<BinStr>>> blocks_;
    std::mutex mu_;
};

/// Good-rake construction: C is the range of f minus the avoidable colors
/// above the empty string, the root is the least C[0]-colored string at or
/// above the stage witness tau, and every color of C is dense above it.
struct GoodRake {
    ColorSet C;
    WResult w;
    std::shared_ptr<LazyRake> rake;
};
GoodRake build_good_rake(const PatternColoring& f);

// ---------------------------------------------------------------------------
// Truncation and extraction
// ---------------------------------------------------------------------------

/// All S inside a finite rake with rk_S = bl_R, fixed rank residue, height
/// exactly m = height(R)/|C| (the sub-trees the compactness argument ranges
/// over). Length-lex order of serialized node sets.
std::vector<TreeSet> enumerate_subrake_trees(const FiniteRake& R);

/// The four defining clauses of "S sits in R as a block-per-rank full tree".
bool is_subrake(const TreeSet& S, const FiniteRake& R);

struct TruncationResult {
    FiniteRake rake;
    unsigned m = 0;
};

/// Least m >= 1 such that every height-m sub-tree of the m-block truncation
/// satisfies phi ("the functional halts on it"). phi must be monotone under
/// end-extension, which the registry tree functionals are. Throws
/// budget_exceeded past m_cap.
TruncationResult truncate_rake(LazyRake& R, const Functional& phi, unsigned m_cap = 8);

/// Reverse-rank labeling: leaves get their assigned colors, chain nodes copy
/// their unique successor, fan-out nodes take the least color shared by two
/// successors (pigeonhole on |C|+1 successors over |C| colors).
std::map<BinStr, Color> g_labeling(const FiniteRake& R,
                                   const std::map<BinStr, Color>& leaf_colors);

struct Extraction {
    Color color = 0;
    TreeSet S;
};

/// The uniform extraction procedure: label, take the root color c, and embed
/// a height-m full tree through the c-nodes of the rake (shortest matching
/// nodes, fan-outs through the two shortest c-labeled successor chains).
/// Guarantees S is a sub-rake tree, monochromatic with color c, and every
/// rake leaf extending a leaf of S carries leaf color c.
Extraction extract_mono(const PatternColoring& f, const FiniteRake& R,
                        const std::map<BinStr, Color>& leaf_colors);

}  // namespace rakelab
