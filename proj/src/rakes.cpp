#include "rakelab/rakes.hpp"

#include <algorithm>

namespace rakelab {

// ---------------------------------------------------------------------------
// compute_W
// ---------------------------------------------------------------------------

WResult compute_W(const PatternColoring& f, const ColorSet& C, const BinStr& sigma) {
    if (C.empty()) throw precondition_violated("compute_W: empty color set");
    WResult r;
    r.tau = sigma;
    r.trace.emplace_back(0, sigma, ColorSet{});

    auto avoidable_remaining = [&]() {
        for (Color c : C) {
            if (!r.W.count(c) && avoidable_above(f, c, r.tau)) return true;
        }
        return false;
    };

    std::uint64_t s = 0;
    std::uint64_t last_adoption = 0;
    while (avoidable_remaining()) {
        ++s;
        // Scan candidates with index < s extending the current tau; adopt the
        // least one above which some remaining color has no occurrence.
        for (std::uint64_t idx = 0; idx < s; ++idx) {
            const BinStr cand = BinStr::from_index(idx);
            if (!r.tau.prefix_of(cand)) continue;
            const ColorSet occ = f.cone_colors(cand);
            ColorSet newly;
            for (Color c : C) {
                if (!r.W.count(c) && !occ.count(c)) newly.insert(c);
            }
            if (!newly.empty()) {
                r.tau = cand;
                r.W.insert(newly.begin(), newly.end());
                r.trace.emplace_back(s, r.tau, r.W);
                last_adoption = s;
                break;
            }
        }
    }
    r.stop_stage = last_adoption + 1;
    return r;
}

namespace {

// Occurrence of c at or above s within depth u (the staged avoidance test).
bool occurs_within(const PatternColoring& f, Color c, const BinStr& s, std::uint64_t u) {
    if (s.length() > u) return false;
    const auto len = min_occurrence_length(f, c, s);
    return len && *len <= u;
}

}  // namespace

WResult compute_W_staged(const PatternColoring& f, const ColorSet& C, const BinStr& sigma,
                         std::uint64_t u) {
    WResult r;
    r.tau = sigma;
    r.trace.emplace_back(0, sigma, ColorSet{});
    std::uint64_t last_adoption = 0;
    for (std::uint64_t s = 1; s <= u; ++s) {
        for (std::uint64_t idx = 0; idx < s; ++idx) {
            const BinStr cand = BinStr::from_index(idx);
            if (!r.tau.prefix_of(cand)) continue;
            ColorSet newly;
            for (Color c : C) {
                if (!r.W.count(c) && !occurs_within(f, c, cand, u)) newly.insert(c);
            }
            if (!newly.empty()) {
                r.tau = cand;
                r.W.insert(newly.begin(), newly.end());
                r.trace.emplace_back(s, r.tau, r.W);
                last_adoption = s;
                break;
            }
        }
    }
    r.stop_stage = last_adoption + 1;
    return r;
}

// ---------------------------------------------------------------------------
// StagedW
// ---------------------------------------------------------------------------

StagedW::StagedW(const PatternColoring& f, ColorSet C, BinStr sigma)
    : f_(&f), C_(std::move(C)), sigma_(std::move(sigma)) {}

StagedW::StagedW(ColorSet C, std::vector<ColorSet> schedule)
    : C_(std::move(C)), schedule_(std::move(schedule)) {}

ColorSet StagedW::raw(std::uint64_t u) {
    if (f_) return compute_W_staged(*f_, C_, sigma_, u).W;
    if (schedule_.empty()) return {};
    const std::size_t i = std::min<std::size_t>(u, schedule_.size() - 1);
    return schedule_[i];
}

ColorSet StagedW::next() {
    const std::uint64_t u = u_++;
    ColorSet v = raw(u);
    if (prev_raw_) {
        for (Color c : C_) {
            if (prev_raw_->count(c) != v.count(c)) last_change_[c] = u;
        }
    }
    prev_raw_ = v;
    if (v.size() >= C_.size()) {
        // Nonemptiness repair: drop the least element whose membership
        // changed most recently, or the least element if none has changed.
        Color victim = *C_.begin();
        std::uint64_t best_stage = 0;
        bool found = false;
        for (Color c : C_) {
            const auto it = last_change_.find(c);
            const std::uint64_t st = (it == last_change_.end()) ? 0 : it->second;
            if (!found || st > best_stage) {
                victim = c;
                best_stage = st;
                found = true;
            }
        }
        v.erase(victim);
    }
    return v;
}

// ---------------------------------------------------------------------------
// FiniteRake
// ---------------------------------------------------------------------------

TreeSet FiniteRake::node_set() const {
    std::vector<BinStr> v;
    for (const auto& block : blocks) {
        for (const auto& chain : block) v.insert(v.end(), chain.begin(), chain.end());
    }
    return TreeSet(std::move(v));
}

std::vector<BinStr> FiniteRake::leaves() const {
    std::vector<BinStr> v;
    for (const auto& chain : blocks.back()) v.push_back(chain.back());
    std::sort(v.begin(), v.end());
    return v;
}

std::uint64_t FiniteRake::block_of(const BinStr& node) const {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (const auto& chain : blocks[b]) {
            if (std::find(chain.begin(), chain.end(), node) != chain.end()) return b;
        }
    }
    throw member_not_found("block_of: node not in rake");
}

bool validate_rake(const PatternColoring& f, const std::vector<Color>& C, const TreeSet& nodes) {
    const unsigned k = static_cast<unsigned>(C.size());
    if (k == 0 || nodes.empty()) return false;
    if (!nodes.rooted() || !nodes.is_symmetric()) return false;
    for (const BinStr& s : nodes.elems()) {
        const unsigned r = nodes.rank(s);
        if (f.eval(s) != C[r % k]) return false;
        const std::size_t succ = nodes.successors(s).size();
        if (r % k != k - 1) {
            if (succ != 1) return false;
        } else if (succ != 0 && succ != k + 1) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// LazyRake
// ---------------------------------------------------------------------------

LazyRake::LazyRake(PatternColoring f, std::vector<Color> C, BinStr root)
    : f_(std::move(f)), C_(std::move(C)), root_(std::move(root)) {}

void LazyRake::grow_to(unsigned m) {
    const unsigned k = static_cast<unsigned>(C_.size());
    auto grow_chain = [&](const BinStr& head) {
        std::vector<BinStr> chain{head};
        for (unsigned i = 1; i < k; ++i) {
            chain.push_back(least_colored_above(f_, chain.back(), C_[i]));
        }
        return chain;
    };
    while (blocks_.size() < m) {
        if (blocks_.empty()) {
            blocks_.push_back({grow_chain(root_)});
            continue;
        }
        std::vector<std::vector<BinStr>> next;
        for (const auto& chain : blocks_.back()) {
            const BinStr& top = chain.back();
            // k+1 pairwise incomparable stems below the chain end: 0^i 1 for
            // i < k, then 0^k; heads are the least C[0]-colored extensions.
            for (unsigned i = 0; i <= k; ++i) {
                BinStr stem = top + BinStr::zeros(i);
                if (i < k) stem.push_back(true);
                next.push_back(grow_chain(least_colored_at_or_above(f_, stem, C_[0])));
            }
        }
        blocks_.push_back(std::move(next));
    }
}

FiniteRake LazyRake::truncate(unsigned m) {
    std::lock_guard<std::mutex> lock(mu_);
    grow_to(m);
    FiniteRake r;
    r.C = C_;
    r.blocks.assign(blocks_.begin(), blocks_.begin() + m);
    return r;
}

// ---------------------------------------------------------------------------
// build_good_rake
// ---------------------------------------------------------------------------

GoodRake build_good_rake(const PatternColoring& f) {
    const ColorSet ran = f.range();
    GoodRake out;
    out.w = compute_W(f, ran, BinStr{});
    for (Color c : ran) {
        if (!out.w.W.count(c)) out.C.insert(c);
    }
    if (out.C.empty()) throw precondition_violated("build_good_rake: empty color set");
    std::vector<Color> C(out.C.begin(), out.C.end());
    const BinStr root = least_colored_at_or_above(f, out.w.tau, C.front());
    out.rake = std::make_shared<LazyRake>(f, std::move(C), root);
    return out;
}

// ---------------------------------------------------------------------------
// Sub-rake trees, truncation
// ---------------------------------------------------------------------------

std::vector<TreeSet> enumerate_subrake_trees(const FiniteRake& R) {
    std::vector<TreeSet> out;
    const unsigned k = R.k();
    // Recursive product: at each selected chain pick the residue node, then
    // two distinct child chains.
    struct Rec {
        const FiniteRake& R;
        unsigned residue;
        std::vector<TreeSet> run(std::size_t block, std::size_t chain) const {
            const unsigned kk = R.k();
            const BinStr& node = R.blocks[block][chain][residue];
            if (block + 1 == R.blocks.size()) return {TreeSet{}.with(node)};
            std::vector<TreeSet> out;
            for (unsigned a = 0; a <= kk; ++a) {
                const auto lefts = run(block + 1, chain * (kk + 1) + a);
                for (unsigned b = a + 1; b <= kk; ++b) {
                    const auto rights = run(block + 1, chain * (kk + 1) + b);
                    for (const TreeSet& L : lefts) {
                        for (const TreeSet& Rt : rights) {
                            TreeSet s = L;
                            for (const BinStr& x : Rt.elems()) s = s.with(x);
                            out.push_back(s.with(node));
                        }
                    }
                }
            }
            return out;
        }
    };
    for (unsigned residue = 0; residue < k; ++residue) {
        Rec rec{R, residue};
        auto part = rec.run(0, 0);
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_subrake(const TreeSet& S, const FiniteRake& R) {
    const TreeSet nodes = R.node_set();
    if (!S.subset_of(nodes)) return false;
    const auto shape = S.iso_to_full();
    if (!shape) return false;
    if (*shape > R.blocks.size()) return false;
    const unsigned k = R.k();
    std::optional<unsigned> residue;
    for (const BinStr& s : S.elems()) {
        if (S.rank(s) != R.block_of(s)) return false;
        const unsigned rr = nodes.rank(s) % k;
        if (!residue) {
            residue = rr;
        } else if (*residue != rr) {
            return false;
        }
    }
    return true;
}

TruncationResult truncate_rake(LazyRake& R, const Functional& phi, unsigned m_cap) {
    if (phi.kind == Functional::Kind::Identity || phi.kind == Functional::Kind::Min) {
        throw precondition_violated("truncate_rake: predicate must be a tree-set functional");
    }
    for (unsigned m = 1; m <= m_cap; ++m) {
        const FiniteRake Rm = R.truncate(m);
        bool all = true;
        for (const TreeSet& S : enumerate_subrake_trees(Rm)) {
            if (!phi.halts_on(S)) {
                all = false;
                break;
            }
        }
        if (all) return {Rm, m};
    }
    throw budget_exceeded("truncate_rake: cap reached");
}

// ---------------------------------------------------------------------------
// Labeling and extraction
// ---------------------------------------------------------------------------

std::map<BinStr, Color> g_labeling(const FiniteRake& R,
                                   const std::map<BinStr, Color>& leaf_colors) {
    const unsigned k = R.k();
    const ColorSet cset(R.C.begin(), R.C.end());
    std::map<BinStr, Color> g;
    for (std::size_t b = R.blocks.size(); b-- > 0;) {
        for (std::size_t q = 0; q < R.blocks[b].size(); ++q) {
            const auto& chain = R.blocks[b][q];
            Color value;
            if (b + 1 == R.blocks.size()) {
                auto it = leaf_colors.find(chain.back());
                if (it == leaf_colors.end() || !cset.count(it->second)) {
                    throw precondition_violated("g_labeling: missing or foreign leaf color");
                }
                value = it->second;
            } else {
                // Fan-out: least color carried by two of the k+1 child chains.
                std::map<Color, unsigned> tally;
                for (unsigned i = 0; i <= k; ++i) {
                    tally[g.at(R.blocks[b + 1][q * (k + 1) + i].front())] += 1;
                }
                std::optional<Color> pick;
                for (const auto& [c, n] : tally) {
                    if (n >= 2) {
                        pick = c;
                        break;
                    }
                }
                if (!pick) throw precondition_violated("g_labeling: pigeonhole failure");
                value = *pick;
            }
            for (const BinStr& node : chain) g[node] = value;
        }
    }
    return g;
}

Extraction extract_mono(const PatternColoring& f, const FiniteRake& R,
                        const std::map<BinStr, Color>& leaf_colors) {
    const unsigned k = R.k();
    const auto g = g_labeling(R, leaf_colors);
    const Color c = g.at(R.root());
    const unsigned pos =
        static_cast<unsigned>(std::find(R.C.begin(), R.C.end(), c) - R.C.begin());

    // Embed: per selected chain take its c-colored node; at fan-outs descend
    // through the two shortest c-labeled child chains.
    Extraction out;
    out.color = c;
    struct Item {
        std::size_t block, chain;
    };
    std::vector<Item> todo{{0, 0}};
    while (!todo.empty()) {
        const auto [b, q] = todo.back();
        todo.pop_back();
        out.S = out.S.with(R.blocks[b][q][pos]);
        if (b + 1 == R.blocks.size()) continue;
        std::vector<std::size_t> cands;
        for (unsigned i = 0; i <= k; ++i) {
            const std::size_t child = q * (k + 1) + i;
            if (g.at(R.blocks[b + 1][child].front()) == c) cands.push_back(child);
        }
        if (cands.size() < 2) throw precondition_violated("extract_mono: labeling broken");
        // Two shortest heads, ties length-lex (head order within a block is
        // already deterministic; compare by the head strings).
        std::sort(cands.begin(), cands.end(), [&](std::size_t x, std::size_t y) {
            return R.blocks[b + 1][x].front() < R.blocks[b + 1][y].front();
        });
        todo.push_back({b + 1, cands[0]});
        todo.push_back({b + 1, cands[1]});
    }
    (void)f;
    return out;
}

}  // namespace rakelab
