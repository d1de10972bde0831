#pragma once

// Deterministic instance corpora used by the acceptance suite, the reduction
// harness, and the CLI's built-in corpus mode.

#include "rakelab/problems.hpp"

namespace rakelab::corpus {

/// Structured grid of pattern colorings: every decision-tree shape of the
/// given depth, exhaustive behavior assignments on shapes with at most two
/// leaves, and uniform-plus-single-deviation assignments on the larger
/// shapes. Two decision tables per shape (all zero, varied).
std::vector<PatternColoring> pattern_grid(unsigned max_k, unsigned max_depth,
                                          unsigned max_period);

/// Eventually periodic colorings of omega (prefix <= 3, period <= 3, k <= 3);
/// at least twenty instances.
std::vector<OmegaColoring> rt1_corpus();

/// All co-enumerations with the given stage-list length and value bounds,
/// under both exact tails.
std::vector<CoEnum> coenum_grid(unsigned max_len, unsigned max_val);

/// Bit words for the isFinite problem (finite, empty, cofinal variants).
std::vector<OmegaColoring> bitword_corpus();

/// Small omega-trees, well-founded and not.
std::vector<FiniteOmegaTree> wf_corpus();

}  // namespace rakelab::corpus
