#pragma once

// Executable uniform reductions: forward instance maps and backward solution
// maps for every positive reduction in scope, a registry keyed by problem
// pair, and the brute-force round-trip verification harness.

#include <functional>

#include "rakelab/rakes.hpp"

namespace rakelab {

struct Reduction {
    std::string name;
    ProblemId source;
    ProblemId target;
    std::function<Instance(const Instance&)> forward;
    std::function<SolutionCert(const Instance&, const SolutionCert&)> backward;
};

/// All shipped reductions (deterministic order).
std::vector<Reduction> all_reductions();

/// Lookup by problem pair; throws when the pair is not shipped.
Reduction get_reduction(const ProblemId& source, const ProblemId& target);

// ---------------------------------------------------------------------------
// Typed forward/backward maps
// ---------------------------------------------------------------------------

/// f(s) = g(|s|): the level coloring of the tree, as a pattern coloring whose
/// decision set is the complete tree of the prefix depth.
PatternColoring rt1_to_tt1_forward(const OmegaColoring& g);
/// Lengths of the canonical solution through a certified prefix: the prefix
/// lengths together with every later level colored like the certificate.
WordCert rt1_to_tt1_backward(const OmegaColoring& g, const TT1Cert& cert);

/// The ell-driven level-split coloring: children at a level recolor by their
/// last bit exactly when ell changes there.
PatternColoring tcn_to_v0_forward(const CoEnum& e);

/// The spine coloring: the all-zeros spine stays 0; a string hanging off the
/// spine at level s is 0 exactly when ell changes between s and its length.
PatternColoring stcn_to_v2_forward(const CoEnum& e);

/// A = {<i, sigma> : the cone above sigma is constantly i}, co-enumerated via
/// its minimal cone roots.
CoEnum v1_to_tcn_forward(const PatternColoring& f);

/// A = {sigma : the cone above sigma is constantly 1}.
CoEnum v4_to_stcn_forward(const PatternColoring& f);

/// A = the upper bounds of the represented set (cofinite or empty).
CoEnum isfinite_to_stcn_forward(const OmegaColoring& word);

/// Branch-code membership coloring of T * omega^{<w}: f(s) = 0 iff s codes a
/// pair-sequence whose tree half lies in T, padded by zeros.
ProgramColoring wf_to_tt1ext_forward(const FiniteOmegaTree& T);

/// Finite attempt tree for extendability of sigma in f, with a designated
/// infinite branch exactly when an extension exists.
FiniteOmegaTree tt1ext_to_wf_forward(const PatternColoring& f, const BinStr& sigma);

/// The avoider-chain analysis behind the limit coloring: rho_c is the least
/// extension of rho_{c-1} whose cone omits c, when one exists.
struct RhoAnalysis {
    unsigned k = 1;
    Color cstar = 0;                 // eventual value of the limit coloring
    std::vector<BinStr> rho;         // rho_d for d < cstar
    std::vector<std::uint64_t> stab; // N_d: first n from which rho_{d,n} is final
    std::uint64_t prefix_len = 0;    // all levels settled from here on
};
RhoAnalysis analyze_rho(const PatternColoring& f, unsigned k);

LimitColoring tt1k_to_d2k_forward(const PatternColoring& f, unsigned k);
TT1Cert tt1k_to_d2k_backward(const PatternColoring& f, unsigned k, const WordCert& M);

/// The first-order pipeline: claim-stage search (good rake, truncation by the
/// halting predicate, W stabilization stage), staged approximations, and the
/// tuple-coded limit word.
struct FOPipeline {
    ColorSet C;
    FiniteRake R;
    std::uint64_t s = 0;  // stage from which every leaf W-set is complete
    unsigned m = 0;       // truncation height in blocks

    struct Tuple {
        ColorSet C;
        FiniteRake R;
        std::uint64_t s = 0;
        std::vector<Color> leaf_colors;
        bool degenerate = false;  // pre-convergence stage with no rake

        friend bool operator==(const Tuple& a, const Tuple& b) {
            return a.degenerate == b.degenerate && a.C == b.C && a.R == b.R && a.s == b.s &&
                   a.leaf_colors == b.leaf_colors;
        }
    };
    std::vector<Tuple> tuple_by_id;  // intern table, in order of first appearance
    OmegaColoring d;
    std::vector<std::size_t> staged_ids;  // d(t) for t below the stabilization stage
};

FOPipeline fo_tt1n_to_rt1n_pipeline(const PatternColoring& f, const Functional& gamma,
                                    unsigned m_cap = 8);
/// Backward: decode the stable tuple of a homogeneous word, extract the
/// monochromatic sub-tree, and apply gamma to it.
NatCert fo_tt1n_to_rt1n_backward(const PatternColoring& f, const Functional& gamma,
                                 const WordCert& M, unsigned m_cap = 8);

// ---------------------------------------------------------------------------
// Round-trip verification harness
// ---------------------------------------------------------------------------

struct ReductionReport {
    std::string reduction;
    std::size_t instances = 0;
    std::size_t certificates = 0;
    struct Failure {
        std::size_t instance_index;
        std::string what;
    };
    std::vector<Failure> failures;

    [[nodiscard]] bool ok() const noexcept { return failures.empty(); }
};

struct CertBounds {
    unsigned len_bound = 4;
    unsigned height_bound = 2;
    std::uint64_t value_bound = 24;
};

/// For every corpus instance: map it forward, enumerate every valid target
/// certificate within bounds, map each back, and verify it against the source
/// instance. Failures name the instance and certificate.
ReductionReport verify_reduction(const Reduction& r, const std::vector<Instance>& corpus,
                                 const CertBounds& bounds = {});

}  // namespace rakelab
