#include "rakelab/sweeps.hpp"

#include <algorithm>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rakelab/corpus.hpp"
#include "rakelab/rakes.hpp"

namespace rakelab::sweeps {

namespace {

// Shared driver: run `check` over [0, n) and fold the stats. The parallel
// variant distributes case indices; failure aggregation keeps the least index
// so the outcome is schedule-independent.
GridStats drive(std::uint64_t n, const std::function<bool(std::uint64_t)>& check,
                bool parallel) {
    GridStats stats;
    stats.cases = n;
    std::uint64_t failures = 0;
    std::int64_t first = -1;
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
        {
            std::uint64_t local_failures = 0;
            std::int64_t local_first = -1;
#pragma omp for schedule(dynamic, 16) nowait
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
                if (!check(static_cast<std::uint64_t>(i))) {
                    ++local_failures;
                    if (local_first < 0 || i < local_first) local_first = i;
                }
            }
#pragma omp critical
            {
                failures += local_failures;
                if (local_first >= 0 && (first < 0 || local_first < first)) first = local_first;
            }
        }
#else
        parallel = false;
#endif
    }
    if (!parallel) {
        for (std::uint64_t i = 0; i < n; ++i) {
            if (!check(i)) {
                ++failures;
                if (first < 0) first = static_cast<std::int64_t>(i);
            }
        }
    }
    stats.failures = failures;
    stats.first_failure = first;
    return stats;
}

}  // namespace

unsigned worker_count() {
#ifdef _OPENMP
    return static_cast<unsigned>(omp_get_max_threads());
#else
    return 1;
#endif
}

// ---------------------------------------------------------------------------
// Selection grid
// ---------------------------------------------------------------------------

namespace {

// All antichains with size in [lo, hi] over the 14 nonempty strings of
// length <= 3 (bitmask enumeration).
std::vector<std::vector<BinStr>> antichain_pool(std::size_t lo, std::size_t hi) {
    std::vector<BinStr> universe;
    for (const BinStr& s : all_strings_up_to(3)) {
        if (!s.empty()) universe.push_back(s);
    }
    std::vector<std::vector<BinStr>> pool;
    const unsigned n = static_cast<unsigned>(universe.size());
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
        if (size < lo || size > hi) continue;
        std::vector<BinStr> set;
        bool anti = true;
        for (unsigned i = 0; i < n && anti; ++i) {
            if (!((mask >> i) & 1U)) continue;
            for (const BinStr& prev : set) {
                if (!prev.incomparable_with(universe[i])) {
                    anti = false;
                    break;
                }
            }
            if (anti) set.push_back(universe[i]);
        }
        if (anti) pool.push_back(std::move(set));
    }
    return pool;
}

bool disjoint(const std::vector<BinStr>& a, const std::vector<BinStr>& b) {
    for (const BinStr& x : a) {
        for (const BinStr& y : b) {
            if (x == y) return false;
        }
    }
    return true;
}

std::vector<std::vector<TreeSet>> selection_cases() {
    std::vector<std::vector<TreeSet>> cases;
    // Shift some families deeper (lengths up to 6) by a fixed prefix.
    const BinStr shifts[] = {BinStr{}, BinStr("010")};

    for (unsigned n = 1; n <= 4; ++n) {
        const auto pool = antichain_pool(n, n + 1);
        // Deterministic strides keep the family count per n in the thousands.
        const std::size_t stride = (n <= 2) ? 7 : 1;
        std::size_t emitted = 0;
        const std::size_t cap = 4200;
        std::vector<std::size_t> idx(n, 0);
        // Lexicographic walk over n-tuples of pool indices with pruning.
        std::function<void(std::size_t, std::vector<std::size_t>&)> walk =
            [&](std::size_t depth, std::vector<std::size_t>& acc) {
                if (emitted >= cap) return;
                if (depth == n) {
                    if (((emitted + acc[0]) % stride) == 0 || n >= 3) {
                        for (const BinStr& shift : shifts) {
                            if (emitted >= cap) return;
                            std::vector<TreeSet> fam;
                            for (std::size_t pi : acc) {
                                std::vector<BinStr> elems;
                                for (const BinStr& s : pool[pi]) elems.push_back(shift + s);
                                fam.emplace_back(std::move(elems));
                            }
                            cases.push_back(std::move(fam));
                            ++emitted;
                        }
                    }
                    return;
                }
                for (std::size_t i = (depth == 0 ? 0 : acc[depth - 1] + 1); i < pool.size();
                     ++i) {
                    bool ok = true;
                    for (std::size_t d = 0; d < depth && ok; ++d) {
                        ok = disjoint(pool[acc[d]], pool[i]);
                    }
                    if (!ok) continue;
                    acc.push_back(i);
                    walk(depth + 1, acc);
                    acc.pop_back();
                    if (emitted >= cap) return;
                }
            };
        std::vector<std::size_t> acc;
        walk(0, acc);
    }
    return cases;
}

const std::vector<std::vector<TreeSet>>& selection_case_list() {
    static const auto cases = selection_cases();
    return cases;
}

}  // namespace

GridStats selection_grid(bool parallel) {
    const auto& cases = selection_case_list();
    return drive(
        cases.size(),
        [&](std::uint64_t i) {
            const auto& fam = cases[i];
            std::vector<BinStr> picks;
            try {
                picks = incomparable_selection(fam);
            } catch (const std::exception&) {
                return false;
            }
            if (picks.size() != fam.size()) return false;
            for (std::size_t a = 0; a < picks.size(); ++a) {
                if (!fam[a].contains(picks[a])) return false;
                for (std::size_t b = a + 1; b < picks.size(); ++b) {
                    if (!picks[a].incomparable_with(picks[b])) return false;
                }
            }
            // Independent existence oracle.
            return incomparable_selection_exists(fam).has_value();
        },
        parallel);
}

// ---------------------------------------------------------------------------
// Density grid
// ---------------------------------------------------------------------------

namespace {

struct DensityCase {
    const PatternColoring* f;
    Color c;
    BinStr sigma;
};

struct DensityFixture {
    std::vector<PatternColoring> colorings;
    std::vector<DensityCase> cases;
};

const DensityFixture& density_fixture() {
    static const DensityFixture fixture = [] {
        DensityFixture fx;
        fx.colorings = corpus::pattern_grid(3, 2, 3);
        const auto sigmas = all_strings_up_to(4);
        for (const auto& f : fx.colorings) {
            for (Color c = 0; c < f.palette(); ++c) {
                for (const BinStr& s : sigmas) fx.cases.push_back({&f, c, s});
            }
        }
        return fx;
    }();
    return fixture;
}

// Bounded brute-force density over a precomputed color table: for all t >= s
// with |t| <= big there is r >= t with |r| <= big + slack colored c.
class BruteTable {
   public:
    BruteTable(const PatternColoring& f, unsigned big, unsigned slack)
        : big_(big), total_(big + slack) {
        color_.resize((std::size_t{1} << (total_ + 1)) - 1);
        for (std::size_t i = 0; i < color_.size(); ++i) {
            color_[i] = f.eval(BinStr::from_index(i));
        }
    }

    [[nodiscard]] bool dense(Color c, const BinStr& s) const {
        for (unsigned lt = s.length(); lt <= big_; ++lt) {
            // Extensions of s with length lt form one contiguous index range.
            std::uint64_t value = 0;
            for (unsigned i = 0; i < s.length(); ++i) value = (value << 1) | (s.bit(i) ? 1U : 0U);
            const std::uint64_t lo =
                ((std::uint64_t{1} << lt) - 1) + (value << (lt - s.length()));
            const std::uint64_t cnt = std::uint64_t{1} << (lt - s.length());
            for (std::uint64_t off = 0; off < cnt; ++off) {
                if (!reachable(c, lt, lo + off)) return false;
            }
        }
        return true;
    }

   private:
    [[nodiscard]] bool reachable(Color c, unsigned len_t, std::uint64_t t_index) const {
        const std::uint64_t t_value = t_index - ((std::uint64_t{1} << len_t) - 1);
        for (unsigned lr = len_t; lr <= total_; ++lr) {
            const std::uint64_t lo =
                ((std::uint64_t{1} << lr) - 1) + (t_value << (lr - len_t));
            const std::uint64_t cnt = std::uint64_t{1} << (lr - len_t);
            for (std::uint64_t off = 0; off < cnt; ++off) {
                if (color_[lo + off] == c) return true;
            }
        }
        return false;
    }

    unsigned big_;
    unsigned total_;
    std::vector<Color> color_;
};

}  // namespace

GridStats density_grid(bool parallel) {
    const auto& fx = density_fixture();
    // One brute table per coloring, built once up front.
    std::vector<std::unique_ptr<BruteTable>> tables;
    std::vector<const PatternColoring*> owners;
    tables.reserve(fx.colorings.size());
    for (const auto& f : fx.colorings) {
        tables.push_back(
            std::make_unique<BruteTable>(f, f.max_decision_length() + 4, f.period_lcm()));
        owners.push_back(&f);
    }
    auto table_of = [&](const PatternColoring* f) -> const BruteTable& {
        return *tables[static_cast<std::size_t>(
            std::find(owners.begin(), owners.end(), f) - owners.begin())];
    };
    return drive(
        fx.cases.size(),
        [&](std::uint64_t i) {
            const auto& q = fx.cases[i];
            return dense_above(*q.f, q.c, q.sigma) == table_of(q.f).dense(q.c, q.sigma);
        },
        parallel);
}

// ---------------------------------------------------------------------------
// Extraction grid
// ---------------------------------------------------------------------------

namespace {

struct ExtractCase {
    unsigned k;
    unsigned m;
    std::uint64_t assignment;  // base-|C| code of the leaf colors
};

struct ExtractFixture {
    std::vector<PatternColoring> colorings;         // one per k
    std::vector<std::vector<FiniteRake>> rakes;     // [k-1][m-1]
    std::vector<ExtractCase> cases;
};

const ExtractFixture& extract_fixture() {
    static const ExtractFixture fixture = [] {
        ExtractFixture fx;
        for (unsigned k = 1; k <= 3; ++k) {
            std::vector<Color> wheel;
            for (Color c = 0; c < k; ++c) wheel.push_back(c);
            const PatternColoring f =
                k == 1 ? PatternColoring::constant(1, 0)
                       : PatternColoring::single_cone(k, 0, ConeBehavior::length_mod(wheel));
            fx.colorings.push_back(f);
            GoodRake gr = build_good_rake(fx.colorings.back());
            std::vector<FiniteRake> per_m;
            for (unsigned m = 1; m <= 3; ++m) per_m.push_back(gr.rake->truncate(m));
            fx.rakes.push_back(std::move(per_m));
        }
        const std::uint64_t cap = 20000;
        for (unsigned k = 1; k <= 3; ++k) {
            for (unsigned m = 1; m <= 3; ++m) {
                const auto& R = fx.rakes[k - 1][m - 1];
                const std::size_t leaves = R.leaves().size();
                std::uint64_t total = 1;
                for (std::size_t i = 0; i < leaves; ++i) {
                    total *= k;
                    if (total > cap) break;
                }
                if (total <= cap) {
                    for (std::uint64_t a = 0; a < total; ++a) fx.cases.push_back({k, m, a});
                } else {
                    // Structured deck: constants, single deviations, stripes.
                    std::vector<std::uint64_t> picked;
                    std::uint64_t pow_cache = 1;
                    auto encode = [&](const std::vector<Color>& v) {
                        std::uint64_t code = 0;
                        std::uint64_t base = 1;
                        for (Color c : v) {
                            code += c * base;
                            base *= k;
                        }
                        return code;
                    };
                    (void)pow_cache;
                    for (Color c = 0; c < k; ++c) {
                        picked.push_back(encode(std::vector<Color>(leaves, c)));
                        for (std::size_t i = 0; i < leaves; ++i) {
                            for (Color d = 0; d < k; ++d) {
                                if (d == c) continue;
                                std::vector<Color> v(leaves, c);
                                v[i] = d;
                                picked.push_back(encode(v));
                            }
                        }
                    }
                    for (unsigned stripe = 1; stripe < k; ++stripe) {
                        std::vector<Color> v(leaves);
                        for (std::size_t i = 0; i < leaves; ++i) {
                            v[i] = static_cast<Color>((i * stripe) % k);
                        }
                        picked.push_back(encode(v));
                    }
                    std::sort(picked.begin(), picked.end());
                    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
                    for (std::uint64_t a : picked) fx.cases.push_back({k, m, a});
                }
            }
        }
        return fx;
    }();
    return fixture;
}

}  // namespace

GridStats extract_grid(bool parallel) {
    const auto& fx = extract_fixture();
    return drive(
        fx.cases.size(),
        [&](std::uint64_t i) {
            const auto& q = fx.cases[i];
            const PatternColoring& f = fx.colorings[q.k - 1];
            const FiniteRake& R = fx.rakes[q.k - 1][q.m - 1];
            const auto leaves = R.leaves();
            std::map<BinStr, Color> leaf_colors;
            std::uint64_t a = q.assignment;
            for (const BinStr& leaf : leaves) {
                leaf_colors[leaf] = R.C[a % q.k];
                a /= q.k;
            }
            Extraction ex;
            try {
                ex = extract_mono(f, R, leaf_colors);
            } catch (const std::exception&) {
                return false;
            }
            // Postconditions re-checked through the independent oracles.
            if (!is_subrake(ex.S, R)) return false;
            const auto shape = ex.S.iso_to_full();
            if (!shape || *shape != q.m) return false;
            if (ex.S.size() != (std::size_t{1} << q.m) - 1) return false;
            for (const BinStr& s : ex.S.elems()) {
                if (f.eval(s) != ex.color) return false;
            }
            for (const BinStr& lam : leaves) {
                for (const BinStr& sl : ex.S.leaves().elems()) {
                    if (sl.prefix_of(lam) && leaf_colors.at(lam) != ex.color) return false;
                }
            }
            return true;
        },
        parallel);
}

// ---------------------------------------------------------------------------
// Use-convention grid
// ---------------------------------------------------------------------------

namespace {

struct UseCase {
    TreeSet S;
    Functional phi;
};

const std::vector<UseCase>& use_cases() {
    static const std::vector<UseCase> cases = [] {
        std::vector<UseCase> out;
        const auto universe = all_strings_up_to(3);
        const std::vector<Functional> functionals = {
            Functional::root(), Functional::antichain(2), Functional::antichain(3),
            Functional::const_val(5)};
        for (std::uint32_t mask = 1; mask < (1U << universe.size()); ++mask) {
            std::vector<BinStr> elems;
            for (unsigned i = 0; i < universe.size(); ++i) {
                if ((mask >> i) & 1U) elems.push_back(universe[i]);
            }
            TreeSet S(std::move(elems));
            if (S.height() > 3) continue;
            for (const Functional& phi : functionals) out.push_back({S, phi});
        }
        return out;
    }();
    return cases;
}

}  // namespace

GridStats use_convention_grid(bool parallel) {
    const auto& cases = use_cases();
    return drive(
        cases.size(),
        [&](std::uint64_t i) {
            const auto& q = cases[i];
            if (!q.phi.halts_on(q.S)) return true;  // nothing to preserve
            const auto base = q.phi.value_on(q.S);
            for (const BinStr& leaf : q.S.leaves().elems()) {
                for (bool b : {false, true}) {
                    const TreeSet T = q.S.with(leaf.extended(b));
                    if (q.phi.value_on(T) != base) return false;
                }
            }
            return true;
        },
        parallel);
}

}  // namespace rakelab::sweeps
