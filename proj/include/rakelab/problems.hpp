#pragma once

// The catalog of instance-solution problems: desk-scale instance encodings
// with exact semantics, solution certificates, verifiers, and direct solvers.
// Infinite objects are always represented by finite descriptions whose
// meaning is exactly computable (eventually periodic words, co-enumerations
// with explicit tails, finite trees with an optional designated branch).

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>

#include "rakelab/colorings.hpp"

namespace rakelab {

struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Co-enumerations of Pi^0_1 subsets of omega
// ---------------------------------------------------------------------------

/// A total enumeration e of the complement of a set A <= omega, given by a
/// finite stage list followed by an exact tail. A = {x : x+1 not in ran(e)}.
///
/// Tails: Stabilized emits 0 forever (nothing further excluded, so A is
/// cofinite); Exhaustive emits 1,2,3,... in order (A is empty); CoCones
/// enumerates, in increasing order, the complement of a finite union of
/// string cones (optionally color-tagged and pair-coded), which is what the
/// coloring-to-choice reductions produce.
struct CoEnum {
    struct Stabilized {};
    struct Exhaustive {};
    struct CoCones {
        bool pair_coded = false;                         // members are <tag, index> pair codes
        std::vector<std::pair<Color, BinStr>> roots;     // tagged cone roots
    };

    std::vector<std::uint64_t> stages;
    std::variant<Stabilized, Exhaustive, CoCones> tail{Stabilized{}};

    /// e(s).
    [[nodiscard]] std::uint64_t at(std::uint64_t s) const;

    /// Exact membership in the represented set A.
    [[nodiscard]] bool member(std::uint64_t x) const;
};

/// Least x with x+1 not among the first s enumerated values.
std::uint64_t ell(const CoEnum& e, std::uint64_t s);

struct DecideA {
    bool empty = true;
    std::uint64_t witness = 0;  // least member when nonempty (= lim_s ell(s))
};

/// Exact emptiness / least-member oracle for the represented set.
DecideA decide_A(const CoEnum& e);

/// Least stage from which ell has reached its final value (requires A != empty).
std::uint64_t ell_stabilization_stage(const CoEnum& e);

// ---------------------------------------------------------------------------
// Eventually periodic colorings / membership words on omega
// ---------------------------------------------------------------------------

struct OmegaColoring {
    std::vector<Color> prefix;
    std::vector<Color> period;  // nonempty

    [[nodiscard]] Color at(std::uint64_t x) const {
        if (x < prefix.size()) return prefix[x];
        return period[(x - prefix.size()) % period.size()];
    }
    [[nodiscard]] ColorSet range() const;
    [[nodiscard]] ColorSet period_colors() const { return {period.begin(), period.end()}; }

    // Membership-word view (colors restricted to {0,1}).
    [[nodiscard]] bool is_bit_word() const;
    [[nodiscard]] bool member(std::uint64_t x) const { return at(x) == 1; }
    [[nodiscard]] bool infinite_set() const { return period_colors().count(1) != 0; }

    friend bool operator==(const OmegaColoring& a, const OmegaColoring& b) {
        return a.prefix == b.prefix && a.period == b.period;
    }
};

// ---------------------------------------------------------------------------
// Delta^0_2 colorings with exact stabilization data
// ---------------------------------------------------------------------------

/// A limit coloring n |-> lim_t stage(n, t). The limit word is explicit and
/// the per-n stabilization stage is computable: stage(n, t) equals the limit
/// from t_n on, equals a tabulated override below t_n when present, and
/// otherwise defaults to k-1 ("not yet settled").
struct LimitColoring {
    Color k = 1;
    OmegaColoring limit;
    std::vector<std::uint64_t> stab_prefix;
    std::uint64_t stab_coef = 0;  // t_n = stab_coef * n + stab_off beyond the prefix
    std::uint64_t stab_off = 0;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Color> overrides;

    [[nodiscard]] std::uint64_t stab(std::uint64_t n) const {
        if (n < stab_prefix.size()) return stab_prefix[n];
        return stab_coef * n + stab_off;
    }
    [[nodiscard]] Color stage(std::uint64_t n, std::uint64_t t) const {
        auto it = overrides.find({n, t});
        if (it != overrides.end()) return it->second;
        if (t >= stab(n)) return limit.at(n);
        return k - 1;
    }
};

// ---------------------------------------------------------------------------
// Desk-scale trees on omega^{<omega}
// ---------------------------------------------------------------------------

/// A finite prefix-closed set of omega-strings, optionally grown by one
/// designated computable branch (eventually periodic). Membership is
/// decidable and well-foundedness is read off the growth rule.
struct FiniteOmegaTree {
    struct None {};
    struct InfinitePath {
        std::vector<unsigned> stem;
        std::vector<unsigned> cycle;  // nonempty

        [[nodiscard]] unsigned at(std::size_t i) const {
            if (i < stem.size()) return stem[i];
            return cycle[(i - stem.size()) % cycle.size()];
        }
    };

    std::vector<std::vector<unsigned>> elems;  // sorted, prefix-closed, contains <>
    std::variant<None, InfinitePath> growth{None{}};

    void validate() const;
    [[nodiscard]] bool member(const std::vector<unsigned>& alpha) const;
    [[nodiscard]] bool well_founded() const { return std::holds_alternative<None>(growth); }
};

// ---------------------------------------------------------------------------
// Problem identifiers
// ---------------------------------------------------------------------------

enum class ProblemKind {
    RT1,
    TT1,
    D2,
    CN,
    TCN,
    STCN,
    IsFinite,
    WF,
    V0,
    V1,
    V2,
    V3,
    V4,
    TT1Ext,
    FO,
};

/// How the number of colors is communicated for RT1/TT1-style problems:
/// a fixed k baked into the problem, an explicitly declared bound, or no
/// bound at all (finite range promised).
enum class BoundMode { Fixed, Declared, Unbounded };

struct ProblemId {
    ProblemKind kind = ProblemKind::RT1;
    BoundMode bound = BoundMode::Fixed;
    unsigned k = 2;                          // for Fixed-mode and D2/TT1Ext
    std::shared_ptr<ProblemId> fo_inner;     // for FO(P)

    [[nodiscard]] std::string str() const;
    [[nodiscard]] static ProblemId parse(const std::string& text);

    [[nodiscard]] static ProblemId fixed(ProblemKind kind, unsigned k) {
        return {kind, BoundMode::Fixed, k, nullptr};
    }
    [[nodiscard]] static ProblemId plain(ProblemKind kind) {
        return {kind, BoundMode::Fixed, 0, nullptr};
    }
    [[nodiscard]] static ProblemId declared(ProblemKind kind) {
        return {kind, BoundMode::Declared, 0, nullptr};
    }
    [[nodiscard]] static ProblemId unbounded(ProblemKind kind) {
        return {kind, BoundMode::Unbounded, 0, nullptr};
    }
    [[nodiscard]] static ProblemId first_order(const ProblemId& inner);

    friend bool operator==(const ProblemId& a, const ProblemId& b);
};

/// Registers the derived problem FO(P) of a base problem: instances are
/// triples <A, Delta, Gamma> over the functional registry, solutions are the
/// values Gamma(A, y)(0) over P-solutions y.
ProblemId make_first_order(const ProblemId& base);

// ---------------------------------------------------------------------------
// Budgeted oracle functionals
// ---------------------------------------------------------------------------

/// Name-tagged budgeted programs over an oracle and an input index.
///
/// Use convention: a functional that halts on a finite tree-set reads the
/// oracle only up to the length of its shortest leaf, so end-extensions
/// (new elements extending leaves) never change the output.
struct Functional {
    enum class Kind { Identity, Root, Antichain, ConstVal, Min };

    Kind kind = Kind::Identity;
    unsigned j = 2;            // Antichain width
    std::uint64_t v = 0;       // ConstVal payload

    [[nodiscard]] static Functional identity() { return {Kind::Identity, 0, 0}; }
    [[nodiscard]] static Functional root() { return {Kind::Root, 0, 0}; }
    [[nodiscard]] static Functional antichain(unsigned j) { return {Kind::Antichain, j, 0}; }
    [[nodiscard]] static Functional const_val(std::uint64_t v) { return {Kind::ConstVal, 0, v}; }
    [[nodiscard]] static Functional min() { return {Kind::Min, 0, 0}; }

    [[nodiscard]] std::string name() const;
    [[nodiscard]] static Functional by_name(const std::string& text);

    /// Exact halting test on a finite tree-set oracle.
    [[nodiscard]] bool halts_on(const TreeSet& S) const;

    /// Output (at index 0) on a finite tree-set oracle; nullopt = diverges.
    [[nodiscard]] std::optional<std::uint64_t> value_on(const TreeSet& S) const;

    /// Output on an omega membership word (Min / ConstVal).
    [[nodiscard]] std::optional<std::uint64_t> value_on_word(const OmegaColoring& M) const;
};

/// Positional tuple code over string indices: sum of (index_i + 1) * 2^(16 i).
/// Injective for up to 4 strings of index < 2^15 - 1; recorded in the format
/// docs, not claimed canonical.
std::uint64_t tuple_code(const std::vector<BinStr>& strings);
std::vector<BinStr> tuple_decode(std::uint64_t code);

// ---------------------------------------------------------------------------
// Instances and certificates
// ---------------------------------------------------------------------------

struct Instance;

/// Payload of a TT1/V/TT1Ext-style instance: a coloring of 2^{<w}, either a
/// pattern coloring (exact oracles) or a budgeted program coloring.
struct TreeColoringInstance {
    std::variant<PatternColoring, ProgramColoring> f;
    std::optional<unsigned> declared_bound;  // for the "+" forms
    BinStr sigma;                            // TT1Ext only

    [[nodiscard]] bool is_pattern() const {
        return std::holds_alternative<PatternColoring>(f);
    }
    [[nodiscard]] const PatternColoring& pattern() const {
        return std::get<PatternColoring>(f);
    }
};

struct OmegaInstance {
    OmegaColoring g;
    std::optional<unsigned> declared_bound;
};

struct FOInstance {
    std::shared_ptr<Instance> A;
    Functional delta;
    Functional gamma;
};

struct Instance {
    ProblemId pid;
    std::variant<TreeColoringInstance, OmegaInstance, CoEnum, LimitColoring, FiniteOmegaTree,
                 FOInstance>
        payload;
};

struct TT1Cert {
    TreeSet prefix;
    Color color = 0;
    std::vector<std::pair<BinStr, BinStr>> evidence;  // (solution leaf, decision leaf)
};
struct WordCert {
    OmegaColoring word;  // membership word of an infinite set
};
struct NatCert {
    std::int64_t value = 0;  // -1 allowed (strong choice flags emptiness)
};
struct PairCert {
    Color i = 0;
    BinStr sigma;
};

struct SolutionCert {
    std::variant<TT1Cert, WordCert, NatCert, PairCert> body;
};

enum class Verdict { Verified, Refuted, Unverifiable };

/// Exact verification wherever the instance encodings allow it; program
/// colorings only get their certificate prefix checked pointwise and are
/// reported Unverifiable when that partial check passes.
Verdict verify(const Instance& inst, const SolutionCert& cert, std::uint64_t budget = 100000);

// ---------------------------------------------------------------------------
// Direct solvers
// ---------------------------------------------------------------------------

/// Dense-or-cone solver: the length-lex least (sigma, i) with color i dense
/// above sigma, materialized as a certified prefix of the given rank.
TT1Cert solve_tt1(const PatternColoring& f, unsigned prefix_rank = 2);

/// Greedy certified prefix of the given rank for a color known to be dense
/// above sigma, with per-leaf continuation evidence.
TT1Cert build_mono_prefix(const PatternColoring& f, const BinStr& sigma, Color color,
                          unsigned prefix_rank);

/// Least color occurring in the period, with the membership word of its
/// positions.
WordCert solve_rt1(const OmegaColoring& g);

/// 1 if well-founded, 0 otherwise.
int solve_wf(const FiniteOmegaTree& T);

/// Solves any supported problem, producing a certificate that verify accepts.
SolutionCert solve(const Instance& inst, std::uint64_t budget = 100000);

/// Bounded enumeration of all valid certificates of an instance (the brute
/// force used by reduction verification). Bounds are interpreted per problem
/// family: string/word lengths and tree heights.
std::vector<SolutionCert> enumerate_certs(const Instance& inst, unsigned len_bound,
                                          unsigned height_bound, std::uint64_t value_bound);

}  // namespace rakelab
