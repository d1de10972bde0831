#pragma once

// Exhaustive-grid kernels behind the acceptance suite. Each kernel exists in
// an OpenMP-parallel variant and a serial reference variant that share the
// per-case check; tests assert the two agree and the bench target compares
// their throughput. Results are deterministic regardless of scheduling:
// counters are reductions and the reported failure is the least case index.

#include <cstdint>
#include <string>

#include "rakelab/treeset.hpp"

namespace rakelab::sweeps {

struct GridStats {
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::int64_t first_failure = -1;  // least failing case index, -1 if none

    friend bool operator==(const GridStats& a, const GridStats& b) {
        return a.cases == b.cases && a.failures == b.failures &&
               a.first_failure == b.first_failure;
    }
};

/// Antichain-selection grid: families of pairwise disjoint antichains with
/// up to four members over strings of length at most six. Checks that the
/// selection algorithm returns pairwise incomparable representatives and that
/// the independent backtracking oracle confirms existence.
GridStats selection_grid(bool parallel);

/// Density-oracle grid: every corpus pattern coloring (depth <= 2, periods
/// <= 3, k <= 3), every color, every string of length <= 4; the exact oracle
/// must agree with the bounded brute-force check everywhere.
GridStats density_grid(bool parallel);

/// Rake extraction grid: k <= 3, up to three blocks, leaf-color assignments
/// enumerated exhaustively up to a case cap; checks every extraction
/// postcondition via independent oracles.
GridStats extract_grid(bool parallel);

/// Use-convention grid: all tree-sets of height <= 3 over strings of length
/// <= 3, all single-node end-extensions, all registry tree functionals;
/// outputs must be extension-stable.
GridStats use_convention_grid(bool parallel);

/// Number of worker threads the parallel variants will use.
unsigned worker_count();

}  // namespace rakelab::sweeps
