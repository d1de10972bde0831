#include "rakelab/colorings.hpp"

#include <algorithm>
#include <numeric>

#include "rakelab/problems.hpp"

namespace rakelab {

namespace {

// Is s on the all-zeros continuation of leaf (s properly extends leaf)?
bool on_spine(const BinStr& leaf, const BinStr& s) {
    for (unsigned i = leaf.length(); i < s.length(); ++i) {
        if (s.bit(i)) return false;
    }
    return true;
}

}  // namespace

Color ConeBehavior::apply(const BinStr& leaf, const BinStr& s) const {
    if (const auto* c = std::get_if<Constant>(&kind)) return c->c;
    if (const auto* lm = std::get_if<LengthMod>(&kind)) return lm->wheel[s.length() % lm->period];
    if (std::holds_alternative<LastBit>(kind)) return s.bit(s.length() - 1) ? 1 : 0;
    const auto& sz = std::get<SpineZero>(kind);
    return on_spine(leaf, s) ? sz.spine : sz.off;
}

ColorSet ConeBehavior::values() const {
    if (const auto* c = std::get_if<Constant>(&kind)) return {c->c};
    if (const auto* lm = std::get_if<LengthMod>(&kind)) {
        return {lm->wheel.begin(), lm->wheel.end()};
    }
    if (std::holds_alternative<LastBit>(kind)) return {0, 1};
    return {std::get<SpineZero>(kind).off};
}

ColorSet ConeBehavior::occurring() const {
    ColorSet out = values();
    if (const auto* sz = std::get_if<SpineZero>(&kind)) out.insert(sz->spine);
    return out;
}

bool operator==(const ConeBehavior& a, const ConeBehavior& b) {
    if (a.kind.index() != b.kind.index()) return false;
    if (const auto* ca = std::get_if<ConeBehavior::Constant>(&a.kind)) {
        return ca->c == std::get<ConeBehavior::Constant>(b.kind).c;
    }
    if (const auto* la = std::get_if<ConeBehavior::LengthMod>(&a.kind)) {
        const auto& lb = std::get<ConeBehavior::LengthMod>(b.kind);
        return la->period == lb.period && la->wheel == lb.wheel;
    }
    if (const auto* sa = std::get_if<ConeBehavior::SpineZero>(&a.kind)) {
        const auto& sb = std::get<ConeBehavior::SpineZero>(b.kind);
        return sa->spine == sb.spine && sa->off == sb.off;
    }
    return true;
}

PatternColoring::PatternColoring(Color palette, std::map<BinStr, Color> table,
                                 std::map<BinStr, ConeBehavior> behaviors)
    : palette_(palette), table_(std::move(table)), behaviors_(std::move(behaviors)) {
    validate();
    for (const auto& [s, c] : table_) max_len_ = std::max(max_len_, s.length());
}

PatternColoring PatternColoring::constant(Color palette, Color c) {
    return single_cone(palette, c, ConeBehavior::constant(c));
}

PatternColoring PatternColoring::single_cone(Color palette, Color root_color, ConeBehavior b) {
    std::map<BinStr, Color> table{{BinStr{}, root_color}};
    std::map<BinStr, ConeBehavior> behaviors{{BinStr{}, std::move(b)}};
    return PatternColoring(palette, std::move(table), std::move(behaviors));
}

void PatternColoring::validate() const {
    if (palette_ < 1) throw precondition_violated("PatternColoring: palette must be >= 1");
    if (table_.empty()) throw precondition_violated("PatternColoring: empty decision set");
    if (!table_.count(BinStr{})) {
        throw precondition_violated("PatternColoring: decision set must contain the empty string");
    }
    for (const auto& [s, c] : table_) {
        if (c >= palette_) throw precondition_violated("PatternColoring: color out of palette");
        if (!s.empty() && !table_.count(s.prefix(s.length() - 1))) {
            throw precondition_violated("PatternColoring: decision set not prefix-closed");
        }
        const bool c0 = table_.count(s.extended(false)) != 0;
        const bool c1 = table_.count(s.extended(true)) != 0;
        if (c0 != c1) {
            throw precondition_violated("PatternColoring: decision node with exactly one child");
        }
        if (!c0) {
            if (!behaviors_.count(s)) {
                throw precondition_violated("PatternColoring: decision leaf without behavior");
            }
        } else if (behaviors_.count(s)) {
            throw precondition_violated("PatternColoring: behavior on internal decision node");
        }
    }
    for (const auto& [s, b] : behaviors_) {
        if (!table_.count(s)) {
            throw precondition_violated("PatternColoring: behavior key outside decision set");
        }
        for (Color c : b.occurring()) {
            if (c >= palette_) throw precondition_violated("PatternColoring: cone color");
        }
        if (const auto* lm = std::get_if<ConeBehavior::LengthMod>(&b.kind)) {
            if (lm->wheel.empty() || lm->wheel.size() != lm->period) {
                throw precondition_violated("PatternColoring: malformed wheel");
            }
        }
        if (std::holds_alternative<ConeBehavior::LastBit>(b.kind) && palette_ < 2) {
            throw precondition_violated("PatternColoring: last-bit behavior needs palette >= 2");
        }
    }
}

TreeSet PatternColoring::decision_set() const {
    std::vector<BinStr> v;
    v.reserve(table_.size());
    for (const auto& [s, c] : table_) v.push_back(s);
    return TreeSet(std::move(v));
}

std::vector<BinStr> PatternColoring::decision_leaves() const {
    std::vector<BinStr> v;
    for (const auto& [s, b] : behaviors_) v.push_back(s);
    std::sort(v.begin(), v.end());
    return v;
}

unsigned PatternColoring::period_lcm() const {
    unsigned l = 1;
    for (const auto& [s, b] : behaviors_) l = std::lcm(l, b.period());
    return l;
}

Color PatternColoring::eval(const BinStr& s) const {
    auto it = table_.find(s);
    if (it != table_.end()) return it->second;
    const BinStr& leaf = governing_leaf(s);
    return behaviors_.at(leaf).apply(leaf, s);
}

const BinStr& PatternColoring::governing_leaf(const BinStr& s) const {
    // Longest proper prefix of s among the decision leaves.
    for (unsigned n = std::min(s.length() - 1, max_len_) + 1; n-- > 0;) {
        auto it = behaviors_.find(s.prefix(n));
        if (it != behaviors_.end()) return it->first;
    }
    throw precondition_violated("PatternColoring: no governing leaf for \"" + s.str() + "\"");
}

ColorSet PatternColoring::range() const {
    ColorSet out;
    for (const auto& [s, c] : table_) out.insert(c);
    for (const auto& [s, b] : behaviors_) {
        auto vs = b.occurring();
        out.insert(vs.begin(), vs.end());
    }
    return out;
}

ColorSet PatternColoring::cone_colors(const BinStr& s) const {
    ColorSet out;
    for (const auto& [t, c] : table_) {
        if (s.prefix_of(t)) out.insert(c);
    }
    for (const auto& [leaf, b] : behaviors_) {
        if (!leaf.comparable_with(s)) continue;
        auto vs = b.values();
        out.insert(vs.begin(), vs.end());
        if (const auto* sz = std::get_if<ConeBehavior::SpineZero>(&b.kind)) {
            // The spine color occurs above s only when s meets the spine.
            const bool meets_spine = leaf.prefix_of(s) ? on_spine(leaf, s) : true;
            if (meets_spine) out.insert(sz->spine);
        }
    }
    return out;
}

bool PatternColoring::cone_constant(const BinStr& s, Color c) const {
    const auto cs = cone_colors(s);
    return cs.size() == 1 && *cs.begin() == c;
}

bool dense_above(const PatternColoring& f, Color c, const BinStr& s) {
    for (const auto& [leaf, b] : f.behaviors()) {
        if (leaf.comparable_with(s) && !b.values().count(c)) return false;
    }
    return true;
}

ColorSet recurrent_colors(const PatternColoring& f, const BinStr& s) {
    ColorSet out;
    for (Color c = 0; c < f.palette(); ++c) {
        if (dense_above(f, c, s)) out.insert(c);
    }
    return out;
}

bool avoidable_above(const PatternColoring& f, Color c, const BinStr& s) {
    for (const auto& [leaf, b] : f.behaviors()) {
        if (leaf.comparable_with(s) && !b.values().count(c)) return true;
    }
    return false;
}

std::optional<unsigned> min_occurrence_length(const PatternColoring& f, Color c,
                                              const BinStr& s) {
    std::optional<unsigned> best;
    auto consider = [&](unsigned len) {
        if (!best || len < *best) best = len;
    };
    if (f.eval(s) == c) return s.length();
    for (const auto& [t, col] : f.table()) {
        if (col == c && s.proper_prefix_of(t)) consider(t.length());
    }
    for (const auto& [leaf, b] : f.behaviors()) {
        if (!leaf.comparable_with(s)) continue;
        // Least admissible length of a proper extension of leaf at or above s.
        const unsigned lo = std::max(leaf.length(), s.length()) + 1;
        const bool s_inside = leaf.prefix_of(s);  // s within the cone region
        bool s_on_spine = true;
        if (s_inside) {
            for (unsigned i = leaf.length(); i < s.length(); ++i) {
                if (s.bit(i)) {
                    s_on_spine = false;
                    break;
                }
            }
        }
        if (const auto* cc = std::get_if<ConeBehavior::Constant>(&b.kind)) {
            if (cc->c == c) consider(lo);
        } else if (const auto* lm = std::get_if<ConeBehavior::LengthMod>(&b.kind)) {
            for (unsigned d = 0; d < lm->period; ++d) {
                if (lm->wheel[(lo + d) % lm->period] == c) {
                    consider(lo + d);
                    break;
                }
            }
        } else if (std::holds_alternative<ConeBehavior::LastBit>(b.kind)) {
            if (c <= 1) consider(lo);
        } else {
            const auto& sz = std::get<ConeBehavior::SpineZero>(b.kind);
            if (sz.off == c) consider(lo);  // a 1 can always be placed
            if (sz.spine == c && (!s_inside || s_on_spine)) consider(lo);
        }
    }
    return best;
}

namespace {

// Some decision-leaf cone meeting the cone of s has c among its recurrent
// values; this is exactly the existence of an infinite c-monochromatic full
// tree strictly above s.
bool cone_reachable(const PatternColoring& f, Color c, const BinStr& s) {
    for (const auto& [leaf, b] : f.behaviors()) {
        if (leaf.comparable_with(s) && b.values().count(c)) return true;
    }
    return false;
}

}  // namespace

bool mono_extendable(const PatternColoring& f, const TreeSet& S, Color c) {
    const auto shape = S.iso_to_full();
    if (!shape) throw precondition_violated("mono_extendable: set is not full-tree shaped");
    for (const BinStr& s : S.elems()) {
        if (f.eval(s) != c) return false;
    }
    if (S.empty()) return cone_reachable(f, c, BinStr{});
    for (const BinStr& leaf : S.leaves().elems()) {
        if (!cone_reachable(f, c, leaf)) return false;
    }
    return true;
}

namespace {

void trees_rooted_at(const PatternColoring& f, const BinStr& root, unsigned h, unsigned len_bound,
                     Color c, std::vector<TreeSet>& out, const TreeSet& base) {
    if (h == 1) {
        out.push_back(base.with(root));
        return;
    }
    std::vector<BinStr> cands;
    for (const BinStr& a : all_strings_up_to(len_bound)) {
        if (root.proper_prefix_of(a) && f.eval(a) == c) cands.push_back(a);
    }
    for (std::size_t i = 0; i < cands.size(); ++i) {
        for (std::size_t j = i + 1; j < cands.size(); ++j) {
            if (!cands[i].incomparable_with(cands[j])) continue;
            std::vector<TreeSet> lefts;
            trees_rooted_at(f, cands[i], h - 1, len_bound, c, lefts, base.with(root));
            for (const TreeSet& left : lefts) {
                trees_rooted_at(f, cands[j], h - 1, len_bound, c, out, left);
            }
        }
    }
}

}  // namespace

std::vector<TreeSet> enumerate_mono(const PatternColoring& f, const BinStr& root_bound, unsigned n,
                                    unsigned len_bound, Color c) {
    std::vector<TreeSet> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    for (const BinStr& root : all_strings_up_to(len_bound)) {
        if (root_bound.prefix_of(root) && f.eval(root) == c) {
            trees_rooted_at(f, root, n, len_bound, c, out, TreeSet{});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Bottom-up existence table over the bounded universe of strings of length
// <= len_bound: good marks roots of height-h monochromatic full trees whose
// elements stay within the universe.
struct ExistsDp {
    unsigned len_bound;
    std::vector<Color> color;  // by string index
    std::vector<char> good;

    ExistsDp(const PatternColoring& f, unsigned lb, Color c) : len_bound(lb) {
        const std::size_t total = (std::size_t{1} << (lb + 1)) - 1;
        color.resize(total);
        for (std::size_t i = 0; i < total; ++i) color[i] = f.eval(BinStr::from_index(i));
        good.assign(total, 0);
        for (std::size_t i = 0; i < total; ++i) good[i] = (color[i] == c) ? 1 : 0;
    }

    // One lift: good := "c-colored with an incomparable good pair strictly above".
    void lift(Color c) {
        const std::size_t total = color.size();
        std::vector<char> has(total, 0);
        std::vector<char> pairq(total, 0);
        for (std::size_t i = total; i-- > 0;) {
            const BinStr s = BinStr::from_index(i);
            if (s.length() == len_bound) {
                has[i] = good[i];
                continue;
            }
            const std::size_t i0 = s.extended(false).index();
            const std::size_t i1 = s.extended(true).index();
            has[i] = good[i] || has[i0] || has[i1];
            pairq[i] = pairq[i0] || pairq[i1] || (has[i0] && has[i1]);
        }
        std::vector<char> next(total, 0);
        for (std::size_t i = 0; i < total; ++i) {
            if (color[i] != c) continue;
            const BinStr s = BinStr::from_index(i);
            if (s.length() == len_bound) continue;
            const std::size_t i0 = s.extended(false).index();
            const std::size_t i1 = s.extended(true).index();
            if (pairq[i0] || pairq[i1] || (has[i0] && has[i1])) next[i] = 1;
        }
        good.swap(next);
    }
};

std::vector<char> good_at_height(const PatternColoring& f, unsigned len_bound, Color c,
                                 unsigned h) {
    ExistsDp dp(f, len_bound, c);
    for (unsigned lev = 1; lev < h; ++lev) dp.lift(c);
    return dp.good;
}

TreeSet witness_tree(const PatternColoring& f, const BinStr& root, unsigned h, unsigned len_bound,
                     Color c) {
    TreeSet acc = TreeSet{}.with(root);
    if (h == 1) return acc;
    const auto good = good_at_height(f, len_bound, c, h - 1);
    std::optional<BinStr> a;
    std::optional<BinStr> b;
    for (std::size_t i = 0; i < good.size() && !b; ++i) {
        if (!good[i]) continue;
        const BinStr t = BinStr::from_index(i);
        if (!root.proper_prefix_of(t)) continue;
        if (!a) {
            a = t;
        } else if (a->incomparable_with(t)) {
            b = t;
        }
    }
    if (!a || !b) throw precondition_violated("witness_tree: inconsistent table");
    for (const BinStr& s : witness_tree(f, *a, h - 1, len_bound, c).elems()) acc = acc.with(s);
    for (const BinStr& s : witness_tree(f, *b, h - 1, len_bound, c).elems()) acc = acc.with(s);
    return acc;
}

}  // namespace

std::optional<TreeSet> exists_mono(const PatternColoring& f, const BinStr& root_bound, unsigned n,
                                   unsigned len_bound, Color c) {
    if (n == 0) return TreeSet{};
    if (len_bound > 20) throw precondition_violated("exists_mono: length bound too large");
    const auto good = good_at_height(f, len_bound, c, n);
    for (std::size_t i = 0; i < good.size(); ++i) {
        if (!good[i]) continue;
        const BinStr t = BinStr::from_index(i);
        if (root_bound.prefix_of(t)) return witness_tree(f, t, n, len_bound, c);
    }
    return std::nullopt;
}

bool dense_above_bruteforce(const PatternColoring& f, Color c, const BinStr& s,
                            unsigned big_bound, unsigned period_slack) {
    for (const BinStr& t : all_strings_up_to(big_bound)) {
        if (!s.prefix_of(t)) continue;
        bool found = false;
        for (const BinStr& r : all_strings_up_to(big_bound + period_slack)) {
            if (t.prefix_of(r) && f.eval(r) == c) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

BinStr least_colored_at_or_above(const PatternColoring& f, const BinStr& s, Color c) {
    if (f.eval(s) == c) return s;
    std::vector<BinStr> frontier{s};
    for (unsigned depth = 0; depth + s.length() < BinStr::kMaxLen; ++depth) {
        std::vector<BinStr> next;
        next.reserve(frontier.size() * 2);
        for (const BinStr& t : frontier) {
            for (bool b : {false, true}) {
                BinStr u = t.extended(b);
                if (f.eval(u) == c) return u;
                next.push_back(u);
            }
        }
        frontier.swap(next);
    }
    throw precondition_violated("least_colored_at_or_above: color not reachable");
}

BinStr least_colored_above(const PatternColoring& f, const BinStr& s, Color c) {
    BinStr a = least_colored_at_or_above(f, s.extended(false), c);
    BinStr b = least_colored_at_or_above(f, s.extended(true), c);
    return std::min(a, b);
}

std::optional<Color> ProgramColoring::eval(const BinStr& s, std::uint64_t budget) const {
    if (const auto* cp = std::get_if<ConstantProg>(&prog)) {
        return budget >= 1 ? std::optional<Color>(cp->c) : std::nullopt;
    }
    if (const auto* pp = std::get_if<PatternProg>(&prog)) {
        return budget >= s.length() + 1 ? std::optional<Color>(pp->f.eval(s)) : std::nullopt;
    }
    const auto& rm = std::get<RMembershipProg>(prog);
    std::uint64_t steps = 0;
    std::vector<std::uint64_t> gamma;
    std::uint64_t run = 0;
    for (unsigned i = 0; i < s.length(); ++i) {
        if (++steps > budget) return std::nullopt;
        if (s.bit(i)) {
            gamma.push_back(run);
            run = 0;
        } else {
            ++run;
        }
    }
    std::vector<unsigned> alpha;
    for (std::uint64_t g : gamma) {
        if (++steps > budget) return std::nullopt;
        alpha.push_back(static_cast<unsigned>(cantor_unpair(g).first));
    }
    return rm.tree->member(alpha) ? 0 : 1;
}

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t s = a + b;
    return s * (s + 1) / 2 + b;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t n) {
    std::uint64_t w = 0;
    while ((w + 1) * (w + 2) / 2 <= n) ++w;
    const std::uint64_t t = w * (w + 1) / 2;
    const std::uint64_t b = n - t;
    return {w - b, b};
}

bool operator==(const PatternColoring& a, const PatternColoring& b) {
    return a.palette_ == b.palette_ && a.table_ == b.table_ && a.behaviors_ == b.behaviors_;
}

}  // namespace rakelab
