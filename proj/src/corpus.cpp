#include "rakelab/corpus.hpp"

#include <algorithm>

namespace rakelab::corpus {

namespace {

// All decision-tree shapes below `node` (each node keeps 0 or 2 children),
// returned as leaf sets.
std::vector<std::vector<BinStr>> subtree_shapes(const BinStr& node, unsigned depth_left) {
    std::vector<std::vector<BinStr>> out{{node}};
    if (depth_left == 0) return out;
    const auto lefts = subtree_shapes(node.extended(false), depth_left - 1);
    const auto rights = subtree_shapes(node.extended(true), depth_left - 1);
    for (const auto& L : lefts) {
        for (const auto& R : rights) {
            std::vector<BinStr> both = L;
            both.insert(both.end(), R.begin(), R.end());
            out.push_back(std::move(both));
        }
    }
    return out;
}

std::vector<std::vector<BinStr>> decision_shapes(unsigned max_depth) {
    auto out = subtree_shapes(BinStr{}, max_depth);
    for (auto& shape : out) std::sort(shape.begin(), shape.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return out;
}

std::vector<ConeBehavior> behavior_set(unsigned k, unsigned max_period) {
    std::vector<ConeBehavior> out;
    for (Color c = 0; c < k; ++c) out.push_back(ConeBehavior::constant(c));
    for (unsigned p = 2; p <= max_period; ++p) {
        std::vector<Color> wheel(p, 0);
        for (;;) {
            bool constant = true;
            for (Color w : wheel) constant = constant && w == wheel[0];
            if (!constant) out.push_back(ConeBehavior::length_mod(wheel));
            unsigned i = 0;
            while (i < p && ++wheel[i] == k) wheel[i++] = 0;
            if (i == p) break;
        }
    }
    if (k >= 2) {
        out.push_back(ConeBehavior::last_bit());
        for (Color a = 0; a < k; ++a) {
            for (Color b = 0; b < k; ++b) {
                if (a != b) out.push_back(ConeBehavior::spine_zero(a, b));
            }
        }
    }
    return out;
}

PatternColoring assemble(unsigned k, const std::vector<BinStr>& leaves,
                         const std::vector<ConeBehavior>& assignment, bool varied_table) {
    std::map<BinStr, Color> table;
    std::map<BinStr, ConeBehavior> behaviors;
    for (std::size_t i = 0; i < leaves.size(); ++i) behaviors[leaves[i]] = assignment[i];
    for (const BinStr& leaf : leaves) {
        for (unsigned n = 0; n <= leaf.length(); ++n) table.emplace(leaf.prefix(n), 0);
    }
    if (varied_table) {
        for (auto& [s, c] : table) {
            unsigned ones = 0;
            for (unsigned i = 0; i < s.length(); ++i) ones += s.bit(i) ? 1 : 0;
            c = (s.length() + ones) % k;
        }
    }
    return PatternColoring(k, std::move(table), std::move(behaviors));
}

void stage_lists_rec(unsigned max_len, unsigned max_val, std::vector<std::uint64_t>& stages,
                     std::vector<CoEnum>& out) {
    {
        CoEnum a;
        a.stages = stages;
        a.tail = CoEnum::Stabilized{};
        out.push_back(std::move(a));
        CoEnum b;
        b.stages = stages;
        b.tail = CoEnum::Exhaustive{};
        out.push_back(std::move(b));
    }
    if (stages.size() >= max_len) return;
    for (std::uint64_t v = 0; v < max_val; ++v) {
        stages.push_back(v);
        stage_lists_rec(max_len, max_val, stages, out);
        stages.pop_back();
    }
}

}  // namespace

std::vector<PatternColoring> pattern_grid(unsigned max_k, unsigned max_depth,
                                          unsigned max_period) {
    std::vector<PatternColoring> out;
    const auto shapes = decision_shapes(max_depth);
    for (unsigned k = 1; k <= max_k; ++k) {
        const auto behaviors = behavior_set(k, max_period);
        for (const auto& leaves : shapes) {
            const std::size_t L = leaves.size();
            std::vector<std::vector<ConeBehavior>> assignments;
            if (L <= 2) {
                std::vector<std::size_t> pick(L, 0);
                for (;;) {
                    std::vector<ConeBehavior> a;
                    for (std::size_t i = 0; i < L; ++i) a.push_back(behaviors[pick[i]]);
                    assignments.push_back(std::move(a));
                    std::size_t i = 0;
                    while (i < L && ++pick[i] == behaviors.size()) pick[i++] = 0;
                    if (i == L) break;
                }
            } else {
                // Uniform base plus one deviating leaf; bases from a pilot
                // set, deviations from the full set.
                std::vector<ConeBehavior> bases;
                for (Color c = 0; c < k; ++c) bases.push_back(ConeBehavior::constant(c));
                if (k >= 2) {
                    bases.push_back(ConeBehavior::length_mod({0, 1}));
                    bases.push_back(ConeBehavior::last_bit());
                }
                for (const auto& base : bases) {
                    assignments.push_back(std::vector<ConeBehavior>(L, base));
                    for (std::size_t i = 0; i < L; ++i) {
                        for (const auto& dev : behaviors) {
                            if (dev == base) continue;
                            std::vector<ConeBehavior> a(L, base);
                            a[i] = dev;
                            assignments.push_back(std::move(a));
                        }
                    }
                }
            }
            for (const auto& a : assignments) {
                for (bool varied : {false, true}) {
                    out.push_back(assemble(k, leaves, a, varied));
                }
            }
        }
    }
    return out;
}

std::vector<OmegaColoring> rt1_corpus() {
    std::vector<OmegaColoring> out;
    out.push_back({{}, {0}});
    out.push_back({{}, {1, 0}});
    out.push_back({{2}, {1, 0}});
    out.push_back({{0, 0, 0}, {1}});
    out.push_back({{2}, {1}});
    out.push_back({{}, {0, 1, 2}});
    out.push_back({{1, 1}, {2, 0, 0}});
    out.push_back({{0, 1, 2}, {2, 2, 1}});
    out.push_back({{}, {1}});
    out.push_back({{1, 0}, {0}});
    // Exhaustive small block: prefix length <= 1, period length <= 2, k = 2.
    for (unsigned pl = 0; pl <= 1; ++pl) {
        for (unsigned ql = 1; ql <= 2; ++ql) {
            for (unsigned pm = 0; pm < (1U << pl); ++pm) {
                for (unsigned qm = 0; qm < (1U << ql); ++qm) {
                    OmegaColoring g;
                    for (unsigned i = 0; i < pl; ++i) g.prefix.push_back((pm >> i) & 1U);
                    for (unsigned i = 0; i < ql; ++i) g.period.push_back((qm >> i) & 1U);
                    out.push_back(std::move(g));
                }
            }
        }
    }
    return out;
}

std::vector<CoEnum> coenum_grid(unsigned max_len, unsigned max_val) {
    std::vector<CoEnum> out;
    std::vector<std::uint64_t> stages;
    stage_lists_rec(max_len, max_val, stages, out);
    return out;
}

std::vector<OmegaColoring> bitword_corpus() {
    return {
        {{}, {0}},            // empty set
        {{1, 0, 1}, {0}},     // finite set {0, 2}
        {{}, {1}},            // all of omega
        {{0, 0, 1}, {0, 1}},  // infinite with a gap pattern
        {{1}, {0}},           // singleton {0}
        {{0, 1, 1, 0}, {0}},  // finite set {1, 2}
    };
}

std::vector<FiniteOmegaTree> wf_corpus() {
    std::vector<FiniteOmegaTree> out;
    {
        FiniteOmegaTree t;
        t.elems = {{}};
        out.push_back(t);
    }
    {
        FiniteOmegaTree t;
        t.elems = {{}, {0}, {1}, {0, 0}, {0, 1}, {2}};
        out.push_back(t);
    }
    {
        // Depth-4 finite comb.
        FiniteOmegaTree t;
        t.elems = {{}, {0}, {0, 1}, {0, 1, 0}, {0, 1, 0, 3}, {5}};
        out.push_back(t);
    }
    {
        FiniteOmegaTree t;
        t.elems = {{}, {1}};
        FiniteOmegaTree::InfinitePath p;
        p.stem = {1, 2};
        p.cycle = {0};
        t.growth = p;
        out.push_back(t);
    }
    {
        FiniteOmegaTree t;
        t.elems = {{}};
        FiniteOmegaTree::InfinitePath p;
        p.cycle = {0, 7};
        t.growth = p;
        out.push_back(t);
    }
    for (auto& t : out) t.validate();
    return out;
}

}  // namespace rakelab::corpus
