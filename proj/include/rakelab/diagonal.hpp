#pragma once

// The constructive adversary against candidate uniform reductions from the
// omega pigeonhole problem with k colors to the tree pigeonhole problem with
// j < k colors: stage by stage it pumps the candidate with c-constant
// extensions, extracts a confirmed monochromatic prefix, and either certifies
// that the confirmed color is excluded above some string (advancing the
// stage) or wins outright by exhibiting a defeating coloring.

#include "rakelab/reductions.hpp"

namespace rakelab {

/// A candidate pair (forward coloring transducer, backward set map).
///
/// White-box candidates expose their forward output on every "floor-good"
/// tail family (g extends alpha, all later values exceed the floor) as a
/// single pattern coloring, which is what makes the exclusion step exactly
/// decidable. Black-box candidates only admit pointwise budgeted runs, so the
/// adversary can never certify a defeat against them.
struct Candidate {
    enum class Kind { Parity, LevelCap, SolverPair };

    Kind kind = Kind::Parity;
    unsigned k = 2;
    unsigned j = 1;
    bool black_box = false;

    [[nodiscard]] std::string name() const;
    [[nodiscard]] static Candidate by_name(const std::string& text, unsigned k, unsigned j,
                                           bool black_box);

    /// Forward output on every coloring extending alpha whose tail values all
    /// exceed floor. Throws when the family is not single-valued (not a
    /// legal white-box query for this candidate).
    [[nodiscard]] PatternColoring family_coloring(const std::vector<Color>& alpha,
                                                  Color floor) const;

    /// Backward map: 1/0 membership answer of the claimed solution set at x,
    /// given the forward oracle view and a finite solution prefix.
    [[nodiscard]] std::optional<int> psi(const OmegaColoring& g_view, const TreeSet& S,
                                         std::uint64_t x, std::uint64_t budget) const;
};

struct AdversaryStage {
    std::vector<Color> alpha;  // alpha_c at stage start
    BinStr sigma;              // sigma_c at stage start
    std::uint64_t m = 0;
    unsigned n = 0;
    TreeSet S;
    BinStr lambda;
    std::uint64_t x = 0;
    bool excluded = false;  // stage ended with a certified exclusion
    BinStr sigma_next;      // the exclusion witness when excluded
};

struct AdversaryTranscript {
    enum class Outcome {
        Falsified,        // defeat certified: a concrete g refutes the pair
        FalsifiedDomain,  // forward output provably leaves the target palette
        Inconclusive,
    };

    Outcome outcome = Outcome::Inconclusive;
    unsigned k = 0;
    unsigned j = 0;
    std::vector<AdversaryStage> stages;
    std::vector<Color> final_alpha;
    OmegaColoring g;  // the defeating (or final) coloring
    std::string note;

    [[nodiscard]] bool falsified() const noexcept {
        return outcome != Outcome::Inconclusive;
    }
};

/// Runs the staged adversary. Requires k > j >= 1. Never returns a falsified
/// verdict that check_transcript cannot re-certify; black-box candidates and
/// correct pairs end Inconclusive.
AdversaryTranscript run_adversary(const Candidate& cand, unsigned k, unsigned j,
                                  std::uint64_t budget = 64);

/// Replays a transcript against the candidate and re-certifies every claim
/// (monotone chains, stage confirmations, exclusion certificates, the final
/// defeat or palette contradiction). Unverifiable for black-box candidates.
Verdict check_transcript(const AdversaryTranscript& t, const Candidate& cand);

}  // namespace rakelab
