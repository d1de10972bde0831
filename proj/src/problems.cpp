#include "rakelab/problems.hpp"

#include <algorithm>
#include <numeric>

namespace rakelab {

// ---------------------------------------------------------------------------
// CoEnum
// ---------------------------------------------------------------------------

namespace {

bool cocones_member(const CoEnum::CoCones& cc, std::uint64_t x) {
    if (cc.pair_coded) {
        const auto [tag, idx] = cantor_unpair(x);
        if (idx >= (1ULL << 22)) return false;
        const BinStr s = BinStr::from_index(idx);
        for (const auto& [t, root] : cc.roots) {
            if (t == tag && root.prefix_of(s)) return true;
        }
        return false;
    }
    if (x >= (1ULL << 22)) return false;
    const BinStr s = BinStr::from_index(x);
    for (const auto& [t, root] : cc.roots) {
        if (root.prefix_of(s)) return true;
    }
    return false;
}

}  // namespace

std::uint64_t CoEnum::at(std::uint64_t s) const {
    if (s < stages.size()) return stages[s];
    const std::uint64_t i = s - stages.size();
    if (std::holds_alternative<Stabilized>(tail)) return 0;
    if (std::holds_alternative<Exhaustive>(tail)) return i + 1;
    // CoCones: the i-th non-member in increasing order, offset by one.
    const auto& cc = std::get<CoCones>(tail);
    std::uint64_t seen = 0;
    for (std::uint64_t x = 0;; ++x) {
        if (!cocones_member(cc, x)) {
            if (seen == i) return x + 1;
            ++seen;
        }
    }
}

bool CoEnum::member(std::uint64_t x) const {
    for (std::uint64_t v : stages) {
        if (v == x + 1) return false;
    }
    if (std::holds_alternative<Stabilized>(tail)) return true;
    if (std::holds_alternative<Exhaustive>(tail)) return false;
    return cocones_member(std::get<CoCones>(tail), x);
}

std::uint64_t ell(const CoEnum& e, std::uint64_t s) {
    std::vector<std::uint64_t> seen;
    seen.reserve(s);
    for (std::uint64_t i = 0; i < s; ++i) seen.push_back(e.at(i));
    for (std::uint64_t x = 0;; ++x) {
        if (std::find(seen.begin(), seen.end(), x + 1) == seen.end()) return x;
    }
}

DecideA decide_A(const CoEnum& e) {
    if (std::holds_alternative<CoEnum::Exhaustive>(e.tail)) return {true, 0};
    if (const auto* cc = std::get_if<CoEnum::CoCones>(&e.tail)) {
        if (cc->roots.empty()) return {true, 0};
    }
    for (std::uint64_t x = 0;; ++x) {
        if (e.member(x)) return {false, x};
    }
}

std::uint64_t ell_stabilization_stage(const CoEnum& e) {
    const auto a = decide_A(e);
    if (a.empty) throw precondition_violated("ell_stabilization_stage: empty set");
    for (std::uint64_t s = 0;; ++s) {
        if (ell(e, s) == a.witness) return s;
    }
}

// ---------------------------------------------------------------------------
// OmegaColoring
// ---------------------------------------------------------------------------

ColorSet OmegaColoring::range() const {
    ColorSet out{period.begin(), period.end()};
    out.insert(prefix.begin(), prefix.end());
    return out;
}

bool OmegaColoring::is_bit_word() const {
    auto ok = [](Color c) { return c <= 1; };
    return std::all_of(prefix.begin(), prefix.end(), ok) &&
           std::all_of(period.begin(), period.end(), ok) && !period.empty();
}

// ---------------------------------------------------------------------------
// FiniteOmegaTree
// ---------------------------------------------------------------------------

void FiniteOmegaTree::validate() const {
    if (elems.empty() || !elems.front().empty()) {
        throw precondition_violated("FiniteOmegaTree: must contain the empty string");
    }
    for (const auto& a : elems) {
        if (a.empty()) continue;
        auto parent = a;
        parent.pop_back();
        if (std::find(elems.begin(), elems.end(), parent) == elems.end()) {
            throw precondition_violated("FiniteOmegaTree: not prefix-closed");
        }
    }
    if (const auto* p = std::get_if<InfinitePath>(&growth)) {
        if (p->cycle.empty()) throw precondition_violated("FiniteOmegaTree: empty path cycle");
    }
}

bool FiniteOmegaTree::member(const std::vector<unsigned>& alpha) const {
    if (std::find(elems.begin(), elems.end(), alpha) != elems.end()) return true;
    if (const auto* p = std::get_if<InfinitePath>(&growth)) {
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (alpha[i] != p->at(i)) return false;
        }
        return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// ProblemId
// ---------------------------------------------------------------------------

std::string ProblemId::str() const {
    switch (kind) {
        case ProblemKind::RT1:
        case ProblemKind::TT1: {
            const std::string base = (kind == ProblemKind::RT1) ? "RT1" : "TT1";
            if (bound == BoundMode::Declared) return base + "_+";
            if (bound == BoundMode::Unbounded) return base + "_N";
            return base + "_" + std::to_string(k);
        }
        case ProblemKind::D2:
            return "D2_" + std::to_string(k);
        case ProblemKind::CN:
            return "C_N";
        case ProblemKind::TCN:
            return "TC_N";
        case ProblemKind::STCN:
            return "sTC_N";
        case ProblemKind::IsFinite:
            return "isFinite";
        case ProblemKind::WF:
            return "WF";
        case ProblemKind::V0:
            return "V0";
        case ProblemKind::V1:
            return "V1";
        case ProblemKind::V2:
            return "V2";
        case ProblemKind::V3:
            return "V3";
        case ProblemKind::V4:
            return "V4";
        case ProblemKind::TT1Ext:
            return "TT1Ext_" + std::to_string(k);
        case ProblemKind::FO:
            return "FO(" + fo_inner->str() + ")";
    }
    return "?";
}

ProblemId ProblemId::first_order(const ProblemId& inner) {
    ProblemId p;
    p.kind = ProblemKind::FO;
    p.fo_inner = std::make_shared<ProblemId>(inner);
    return p;
}

ProblemId make_first_order(const ProblemId& base) { return ProblemId::first_order(base); }

ProblemId ProblemId::parse(const std::string& text) {
    auto suffixed = [&](const std::string& base, ProblemKind kind) -> std::optional<ProblemId> {
        if (text.rfind(base + "_", 0) != 0) return std::nullopt;
        const std::string suf = text.substr(base.size() + 1);
        if (suf == "+") return declared(kind);
        if (suf == "N") return unbounded(kind);
        return fixed(kind, static_cast<unsigned>(std::stoul(suf)));
    };
    if (text == "C_N") return plain(ProblemKind::CN);
    if (text == "TC_N") return plain(ProblemKind::TCN);
    if (text == "sTC_N") return plain(ProblemKind::STCN);
    if (text == "isFinite") return plain(ProblemKind::IsFinite);
    if (text == "WF") return plain(ProblemKind::WF);
    if (text == "V0") return plain(ProblemKind::V0);
    if (text == "V1") return plain(ProblemKind::V1);
    if (text == "V2") return plain(ProblemKind::V2);
    if (text == "V3") return plain(ProblemKind::V3);
    if (text == "V4") return plain(ProblemKind::V4);
    if (text.rfind("FO(", 0) == 0 && text.back() == ')') {
        return first_order(parse(text.substr(3, text.size() - 4)));
    }
    if (auto p = suffixed("RT1", ProblemKind::RT1)) return *p;
    if (auto p = suffixed("TT1Ext", ProblemKind::TT1Ext)) return *p;
    if (auto p = suffixed("TT1", ProblemKind::TT1)) return *p;
    if (auto p = suffixed("D2", ProblemKind::D2)) return *p;
    throw std::invalid_argument("unknown problem id: " + text);
}

bool operator==(const ProblemId& a, const ProblemId& b) {
    if (a.kind != b.kind || a.bound != b.bound) return false;
    if (a.kind == ProblemKind::FO) return *a.fo_inner == *b.fo_inner;
    const bool uses_k = a.kind == ProblemKind::RT1 || a.kind == ProblemKind::TT1 ||
                        a.kind == ProblemKind::D2 || a.kind == ProblemKind::TT1Ext;
    return !uses_k || a.bound != BoundMode::Fixed || a.k == b.k;
}

// ---------------------------------------------------------------------------
// Functionals
// ---------------------------------------------------------------------------

std::string Functional::name() const {
    switch (kind) {
        case Kind::Identity:
            return "Identity";
        case Kind::Root:
            return "Root";
        case Kind::Antichain:
            return "Antichain(" + std::to_string(j) + ")";
        case Kind::ConstVal:
            return "Const(" + std::to_string(v) + ")";
        case Kind::Min:
            return "Min";
    }
    return "?";
}

Functional Functional::by_name(const std::string& text) {
    if (text == "Identity") return identity();
    if (text == "Root") return root();
    if (text == "Min") return min();
    if (text.rfind("Antichain(", 0) == 0 && text.back() == ')') {
        return antichain(static_cast<unsigned>(std::stoul(text.substr(10, text.size() - 11))));
    }
    if (text.rfind("Const(", 0) == 0 && text.back() == ')') {
        return const_val(std::stoull(text.substr(6, text.size() - 7)));
    }
    throw std::invalid_argument("unknown functional: " + text);
}

std::uint64_t tuple_code(const std::vector<BinStr>& strings) {
    if (strings.size() > 4) throw precondition_violated("tuple_code: too many strings");
    std::uint64_t code = 0;
    std::uint64_t base = 1;
    for (const BinStr& s : strings) {
        const std::uint64_t idx = s.index();
        if (idx + 1 >= (1ULL << 15)) throw precondition_violated("tuple_code: index too large");
        code += (idx + 1) * base;
        base <<= 16;
    }
    return code;
}

std::vector<BinStr> tuple_decode(std::uint64_t code) {
    std::vector<BinStr> out;
    while (code != 0) {
        const std::uint64_t digit = code & 0xFFFFU;
        if (digit == 0) throw std::invalid_argument("tuple_decode: malformed code");
        out.push_back(BinStr::from_index(digit - 1));
        code >>= 16;
    }
    return out;
}

namespace {

// Lexicographically least j-subset of pairwise incomparable strings within a
// pool scanned in length-lex order.
std::optional<std::vector<BinStr>> least_antichain(const std::vector<BinStr>& pool, unsigned j,
                                                   std::vector<BinStr>& acc, std::size_t from) {
    if (acc.size() == j) return acc;
    for (std::size_t i = from; i < pool.size(); ++i) {
        bool ok = true;
        for (const BinStr& prev : acc) {
            if (!prev.incomparable_with(pool[i])) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        acc.push_back(pool[i]);
        if (auto r = least_antichain(pool, j, acc, i + 1)) return r;
        acc.pop_back();
    }
    return std::nullopt;
}

// Scan members in length-lex order; halt at the first point where some
// j-antichain exists among the members seen, returning the lex least one.
// The halting point bounds the oracle use.
std::optional<std::vector<BinStr>> antichain_value(const TreeSet& S, unsigned j) {
    std::vector<BinStr> seen;
    for (const BinStr& s : S.elems()) {
        seen.push_back(s);
        if (seen.size() < j) continue;
        std::vector<BinStr> acc;
        if (auto r = least_antichain(seen, j, acc, 0)) return r;
    }
    return std::nullopt;
}

}  // namespace

bool Functional::halts_on(const TreeSet& S) const {
    switch (kind) {
        case Kind::Root:
            return !S.empty();
        case Kind::Antichain:
            return antichain_value(S, j).has_value();
        case Kind::ConstVal:
            return true;
        case Kind::Identity:
        case Kind::Min:
            return false;  // not tree-set functionals
    }
    return false;
}

std::optional<std::uint64_t> Functional::value_on(const TreeSet& S) const {
    switch (kind) {
        case Kind::Root:
            if (S.empty()) return std::nullopt;
            return S.elems().front().index();
        case Kind::Antichain: {
            auto r = antichain_value(S, j);
            if (!r) return std::nullopt;
            return tuple_code(*r);
        }
        case Kind::ConstVal:
            return v;
        case Kind::Identity:
        case Kind::Min:
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> Functional::value_on_word(const OmegaColoring& M) const {
    switch (kind) {
        case Kind::Min: {
            if (!M.infinite_set()) {
                for (std::uint64_t x = 0; x < M.prefix.size(); ++x) {
                    if (M.member(x)) return x;
                }
                return std::nullopt;
            }
            for (std::uint64_t x = 0;; ++x) {
                if (M.member(x)) return x;
            }
        }
        case Kind::ConstVal:
            return v;
        default:
            return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

namespace {

bool word_infinite_and_mono(const OmegaColoring& g, const OmegaColoring& M, Color* color_out) {
    if (!M.is_bit_word() || !M.infinite_set()) return false;
    std::optional<Color> c;
    const std::uint64_t lo = std::max(g.prefix.size(), M.prefix.size());
    const std::uint64_t window = std::lcm(g.period.size(), M.period.size());
    for (std::uint64_t x = 0; x < lo + window; ++x) {
        if (!M.member(x)) continue;
        if (!c) {
            c = g.at(x);
        } else if (g.at(x) != *c) {
            return false;
        }
    }
    if (!c) return false;
    if (color_out) *color_out = *c;
    return true;
}

Verdict verify_tree_coloring(const Instance& inst, const SolutionCert& cert,
                             std::uint64_t budget) {
    const auto& tc = std::get<TreeColoringInstance>(inst.payload);
    const auto* body = std::get_if<TT1Cert>(&cert.body);
    if (!body) return Verdict::Refuted;
    if (!body->prefix.iso_to_full()) return Verdict::Refuted;

    if (!tc.is_pattern()) {
        // Program colorings: pointwise prefix check only, flagged as partial.
        const auto& pf = std::get<ProgramColoring>(tc.f);
        for (const BinStr& s : body->prefix.elems()) {
            auto c = pf.eval(s, budget);
            if (!c) return Verdict::Unverifiable;
            if (*c != body->color) return Verdict::Refuted;
        }
        return Verdict::Unverifiable;
    }

    const PatternColoring& f = tc.pattern();
    unsigned bound = f.palette();
    if (inst.pid.bound == BoundMode::Fixed) bound = inst.pid.k;
    if (inst.pid.bound == BoundMode::Declared && tc.declared_bound) bound = *tc.declared_bound;
    if (body->color >= bound) return Verdict::Refuted;
    if (!mono_extendable(f, body->prefix, body->color)) return Verdict::Refuted;
    for (const auto& [leaf, witness] : body->evidence) {
        auto it = f.behaviors().find(witness);
        if (it == f.behaviors().end() || !witness.comparable_with(leaf) ||
            !it->second.values().count(body->color)) {
            return Verdict::Refuted;
        }
    }
    return Verdict::Verified;
}

// Are all tau >= sigma with f(tau) = 0 pairwise comparable? Exact: a cone
// with 0 recurrent gives an incomparable pair; spine-only zeros form chains,
// so at most one live spine branch may meet the cone, and every isolated
// zero of the decision region must lie on it.
bool zeros_above_comparable(const PatternColoring& f, const BinStr& sigma) {
    for (const auto& [leaf, b] : f.behaviors()) {
        if (leaf.comparable_with(sigma) && b.values().count(0)) return false;
    }
    std::vector<BinStr> points;
    for (const auto& [t, c] : f.table()) {
        if (sigma.prefix_of(t) && c == 0) points.push_back(t);
    }
    std::vector<BinStr> spine_stems;  // leaf of each live zero-spine branch
    for (const auto& [leaf, b] : f.behaviors()) {
        const auto* sz = std::get_if<ConeBehavior::SpineZero>(&b.kind);
        if (!sz || sz->spine != 0) continue;
        if (!leaf.comparable_with(sigma)) continue;
        bool live = true;
        if (leaf.proper_prefix_of(sigma)) {
            // The branch meets cone(sigma) only when sigma sits on the spine.
            live = true;
            for (unsigned i = leaf.length(); i < sigma.length(); ++i) {
                if (sigma.bit(i)) {
                    live = false;
                    break;
                }
            }
        }
        if (live) spine_stems.push_back(leaf);
    }
    if (spine_stems.size() >= 2) return false;
    if (spine_stems.size() == 1) {
        const BinStr& stem = spine_stems.front();
        auto branch_bit = [&](unsigned i) { return i < stem.length() ? stem.bit(i) : false; };
        for (const BinStr& p : points) {
            for (unsigned i = 0; i < p.length(); ++i) {
                if (p.bit(i) != branch_bit(i)) return false;
            }
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].incomparable_with(points[j])) return false;
        }
    }
    return true;
}

Verdict verify_v_problem(const Instance& inst, const SolutionCert& cert) {
    const auto& tc = std::get<TreeColoringInstance>(inst.payload);
    if (!tc.is_pattern()) return Verdict::Unverifiable;
    const PatternColoring& f = tc.pattern();
    if (f.palette() != 2) throw precondition_violated("V problems take 2-colorings");
    const auto* body = std::get_if<PairCert>(&cert.body);
    if (!body) return Verdict::Refuted;
    const Color i = body->i;
    const BinStr& sigma = body->sigma;
    if (i > 1) return Verdict::Refuted;

    bool ok = false;
    switch (inst.pid.kind) {
        case ProblemKind::V0:
            ok = dense_above(f, i, sigma);
            break;
        case ProblemKind::V1:
            ok = (dense_above(f, 0, BinStr{}) && dense_above(f, 1, BinStr{})) ||
                 f.cone_constant(sigma, i);
            break;
        case ProblemKind::V2:
            ok = (i == 0) ? dense_above(f, 0, BinStr{}) : dense_above(f, 1, sigma);
            break;
        case ProblemKind::V3:
            ok = (i == 0) ? dense_above(f, 0, BinStr{}) : zeros_above_comparable(f, sigma);
            break;
        case ProblemKind::V4:
            ok = (i == 0) ? dense_above(f, 0, BinStr{}) : f.cone_constant(sigma, 1);
            break;
        default:
            break;
    }
    return ok ? Verdict::Verified : Verdict::Refuted;
}

Verdict verify_fo(const Instance& inst, const SolutionCert& cert, std::uint64_t budget) {
    const auto& fo = std::get<FOInstance>(inst.payload);
    const auto* body = std::get_if<NatCert>(&cert.body);
    if (!body || body->value < 0) return Verdict::Refuted;
    const std::uint64_t v = static_cast<std::uint64_t>(body->value);
    if (fo.delta.kind != Functional::Kind::Identity) return Verdict::Unverifiable;
    const Instance& base = *fo.A;
    const ProblemId& bp = *inst.pid.fo_inner;

    if (fo.gamma.kind == Functional::Kind::ConstVal) {
        return v == fo.gamma.v ? Verdict::Verified : Verdict::Refuted;
    }

    if (bp.kind == ProblemKind::RT1) {
        const auto& g = std::get<OmegaInstance>(base.payload).g;
        if (fo.gamma.kind == Functional::Kind::Min) {
            // v is the least element of some infinite monochromatic set iff
            // its color recurs in the period.
            return g.period_colors().count(g.at(v)) ? Verdict::Verified : Verdict::Refuted;
        }
        return Verdict::Unverifiable;
    }

    if (bp.kind == ProblemKind::TT1) {
        const auto& tc = std::get<TreeColoringInstance>(base.payload);
        if (!tc.is_pattern()) return Verdict::Unverifiable;
        const PatternColoring& f = tc.pattern();
        if (fo.gamma.kind == Functional::Kind::Root) {
            // Root outputs the index of the least string of a solution, which
            // is its root; exactly the mono-extendable singletons.
            if (v >= (1ULL << 20)) return Verdict::Refuted;
            const BinStr s = BinStr::from_index(v);
            return mono_extendable(f, TreeSet{}.with(s), f.eval(s)) ? Verdict::Verified
                                                                    : Verdict::Refuted;
        }
        if (fo.gamma.kind == Functional::Kind::Antichain) {
            // Bounded search over solution prefixes.
            const unsigned len_cap = static_cast<unsigned>(std::min<std::uint64_t>(6, budget));
            for (unsigned h = 1; h <= 3; ++h) {
                for (Color c = 0; c < f.palette(); ++c) {
                    for (const TreeSet& S : enumerate_mono(f, BinStr{}, h, len_cap, c)) {
                        if (!mono_extendable(f, S, c)) continue;
                        auto val = fo.gamma.value_on(S);
                        if (val && *val == v) return Verdict::Verified;
                    }
                }
            }
            return Verdict::Unverifiable;
        }
    }
    return Verdict::Unverifiable;
}

}  // namespace

Verdict verify(const Instance& inst, const SolutionCert& cert, std::uint64_t budget) {
    switch (inst.pid.kind) {
        case ProblemKind::RT1: {
            const auto& oi = std::get<OmegaInstance>(inst.payload);
            const auto* body = std::get_if<WordCert>(&cert.body);
            if (!body) return Verdict::Refuted;
            return word_infinite_and_mono(oi.g, body->word, nullptr) ? Verdict::Verified
                                                                     : Verdict::Refuted;
        }
        case ProblemKind::D2: {
            const auto& L = std::get<LimitColoring>(inst.payload);
            const auto* body = std::get_if<WordCert>(&cert.body);
            if (!body) return Verdict::Refuted;
            return word_infinite_and_mono(L.limit, body->word, nullptr) ? Verdict::Verified
                                                                        : Verdict::Refuted;
        }
        case ProblemKind::TT1:
            return verify_tree_coloring(inst, cert, budget);
        case ProblemKind::V0:
        case ProblemKind::V1:
        case ProblemKind::V2:
        case ProblemKind::V3:
        case ProblemKind::V4:
            return verify_v_problem(inst, cert);
        case ProblemKind::TT1Ext: {
            const auto& tc = std::get<TreeColoringInstance>(inst.payload);
            const auto* body = std::get_if<NatCert>(&cert.body);
            if (!body) return Verdict::Refuted;
            if (!tc.is_pattern()) return Verdict::Unverifiable;
            const PatternColoring& f = tc.pattern();
            const bool ext = mono_extendable(f, TreeSet{}.with(tc.sigma), f.eval(tc.sigma));
            return (body->value == (ext ? 1 : 0)) ? Verdict::Verified : Verdict::Refuted;
        }
        case ProblemKind::CN:
        case ProblemKind::TCN:
        case ProblemKind::STCN: {
            const auto& e = std::get<CoEnum>(inst.payload);
            const auto* body = std::get_if<NatCert>(&cert.body);
            if (!body) return Verdict::Refuted;
            const auto a = decide_A(e);
            if (inst.pid.kind == ProblemKind::CN) {
                if (a.empty) throw precondition_violated("C_N instance must be nonempty");
                return (body->value >= 0 && e.member(static_cast<std::uint64_t>(body->value)))
                           ? Verdict::Verified
                           : Verdict::Refuted;
            }
            if (inst.pid.kind == ProblemKind::TCN) {
                if (body->value < 0) return Verdict::Refuted;
                if (a.empty) return Verdict::Verified;
                return e.member(static_cast<std::uint64_t>(body->value)) ? Verdict::Verified
                                                                         : Verdict::Refuted;
            }
            if (a.empty) return body->value == -1 ? Verdict::Verified : Verdict::Refuted;
            return (body->value >= 0 && e.member(static_cast<std::uint64_t>(body->value)))
                       ? Verdict::Verified
                       : Verdict::Refuted;
        }
        case ProblemKind::IsFinite: {
            const auto& oi = std::get<OmegaInstance>(inst.payload);
            const auto* body = std::get_if<NatCert>(&cert.body);
            if (!body) return Verdict::Refuted;
            const bool finite = !oi.g.infinite_set();
            return (body->value == (finite ? 1 : 0)) ? Verdict::Verified : Verdict::Refuted;
        }
        case ProblemKind::WF: {
            const auto& T = std::get<FiniteOmegaTree>(inst.payload);
            const auto* body = std::get_if<NatCert>(&cert.body);
            if (!body) return Verdict::Refuted;
            return (body->value == solve_wf(T)) ? Verdict::Verified : Verdict::Refuted;
        }
        case ProblemKind::FO:
            return verify_fo(inst, cert, budget);
    }
    return Verdict::Unverifiable;
}

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

namespace {

BinStr evidence_leaf(const PatternColoring& f, const BinStr& s, Color c) {
    for (const auto& [leaf, b] : f.behaviors()) {
        if (leaf.comparable_with(s) && b.values().count(c)) return leaf;
    }
    throw precondition_violated("no continuation evidence for color");
}

}  // namespace

TT1Cert build_mono_prefix(const PatternColoring& f, const BinStr& sigma, Color color,
                          unsigned prefix_rank) {
    TT1Cert cert;
    cert.color = color;
    if (prefix_rank == 0) return cert;
    struct Item {
        BinStr node;
        unsigned h;
    };
    const BinStr root = least_colored_at_or_above(f, sigma, color);
    cert.prefix = cert.prefix.with(root);
    std::vector<Item> todo{{root, prefix_rank}};
    while (!todo.empty()) {
        const auto [node, h] = todo.back();
        todo.pop_back();
        if (h <= 1) {
            cert.evidence.emplace_back(node, evidence_leaf(f, node, color));
            continue;
        }
        const BinStr a = least_colored_above(f, node, color);
        // Least colored extension incomparable with a lives on the other side
        // of a's first branch bit below node.
        const BinStr opposite = node.extended(!a.bit(node.length()));
        const BinStr b = least_colored_at_or_above(f, opposite, color);
        cert.prefix = cert.prefix.with(a).with(b);
        todo.push_back({a, h - 1});
        todo.push_back({b, h - 1});
    }
    std::sort(cert.evidence.begin(), cert.evidence.end());
    return cert;
}

TT1Cert solve_tt1(const PatternColoring& f, unsigned prefix_rank) {
    // Length-lex least (sigma, i) with color i dense above sigma.
    for (std::uint64_t idx = 0;; ++idx) {
        const BinStr s = BinStr::from_index(idx);
        for (Color c = 0; c < f.palette(); ++c) {
            if (dense_above(f, c, s)) return build_mono_prefix(f, s, c, prefix_rank);
        }
    }
}

WordCert solve_rt1(const OmegaColoring& g) {
    const Color c = *g.period_colors().begin();
    WordCert out;
    out.word.prefix.reserve(g.prefix.size());
    for (Color x : g.prefix) out.word.prefix.push_back(x == c ? 1 : 0);
    out.word.period.reserve(g.period.size());
    for (Color x : g.period) out.word.period.push_back(x == c ? 1 : 0);
    return out;
}

int solve_wf(const FiniteOmegaTree& T) { return T.well_founded() ? 1 : 0; }

SolutionCert solve(const Instance& inst, std::uint64_t budget) {
    switch (inst.pid.kind) {
        case ProblemKind::RT1:
            return {solve_rt1(std::get<OmegaInstance>(inst.payload).g)};
        case ProblemKind::D2:
            return {solve_rt1(std::get<LimitColoring>(inst.payload).limit)};
        case ProblemKind::TT1: {
            const auto& tc = std::get<TreeColoringInstance>(inst.payload);
            if (!tc.is_pattern()) throw budget_exceeded("cannot solve program colorings");
            return {solve_tt1(tc.pattern())};
        }
        case ProblemKind::WF:
            return {NatCert{solve_wf(std::get<FiniteOmegaTree>(inst.payload))}};
        case ProblemKind::IsFinite: {
            const auto& oi = std::get<OmegaInstance>(inst.payload);
            return {NatCert{oi.g.infinite_set() ? 0 : 1}};
        }
        case ProblemKind::CN: {
            const auto a = decide_A(std::get<CoEnum>(inst.payload));
            if (a.empty) throw precondition_violated("C_N instance must be nonempty");
            return {NatCert{static_cast<std::int64_t>(a.witness)}};
        }
        case ProblemKind::TCN: {
            const auto a = decide_A(std::get<CoEnum>(inst.payload));
            return {NatCert{a.empty ? 0 : static_cast<std::int64_t>(a.witness)}};
        }
        case ProblemKind::STCN: {
            const auto a = decide_A(std::get<CoEnum>(inst.payload));
            return {NatCert{a.empty ? -1 : static_cast<std::int64_t>(a.witness)}};
        }
        case ProblemKind::TT1Ext: {
            const auto& tc = std::get<TreeColoringInstance>(inst.payload);
            if (!tc.is_pattern()) throw budget_exceeded("cannot solve program colorings");
            const PatternColoring& f = tc.pattern();
            const bool ext = mono_extendable(f, TreeSet{}.with(tc.sigma), f.eval(tc.sigma));
            return {NatCert{ext ? 1 : 0}};
        }
        case ProblemKind::V0:
        case ProblemKind::V1:
        case ProblemKind::V2:
        case ProblemKind::V3:
        case ProblemKind::V4: {
            for (std::uint64_t idx = 0;; ++idx) {
                if (idx > budget) throw budget_exceeded("V solver budget");
                const BinStr s = BinStr::from_index(idx);
                for (Color i = 0; i < 2; ++i) {
                    SolutionCert cand{PairCert{i, s}};
                    if (verify(inst, cand, budget) == Verdict::Verified) return cand;
                }
            }
        }
        case ProblemKind::FO: {
            const auto& fo = std::get<FOInstance>(inst.payload);
            if (fo.gamma.kind == Functional::Kind::ConstVal) {
                return {NatCert{static_cast<std::int64_t>(fo.gamma.v)}};
            }
            const SolutionCert y = solve(*fo.A, budget);
            std::optional<std::uint64_t> v;
            if (const auto* t = std::get_if<TT1Cert>(&y.body)) v = fo.gamma.value_on(t->prefix);
            if (const auto* w = std::get_if<WordCert>(&y.body)) v = fo.gamma.value_on_word(w->word);
            if (!v) throw budget_exceeded("FO solver: functional diverges on solved prefix");
            return {NatCert{static_cast<std::int64_t>(*v)}};
        }
    }
    throw precondition_violated("solve: unsupported problem");
}

// ---------------------------------------------------------------------------
// Bounded certificate enumeration
// ---------------------------------------------------------------------------

namespace {

std::vector<OmegaColoring> all_bit_words(unsigned prefix_max, unsigned period_max) {
    std::vector<OmegaColoring> out;
    for (unsigned pl = 0; pl <= prefix_max; ++pl) {
        for (unsigned ql = 1; ql <= period_max; ++ql) {
            for (std::uint64_t pm = 0; pm < (1ULL << pl); ++pm) {
                for (std::uint64_t qm = 0; qm < (1ULL << ql); ++qm) {
                    OmegaColoring w;
                    for (unsigned i = 0; i < pl; ++i) w.prefix.push_back((pm >> i) & 1U);
                    for (unsigned i = 0; i < ql; ++i) w.period.push_back((qm >> i) & 1U);
                    out.push_back(std::move(w));
                }
            }
        }
    }
    return out;
}

}  // namespace

std::vector<SolutionCert> enumerate_certs(const Instance& inst, unsigned len_bound,
                                          unsigned height_bound, std::uint64_t value_bound) {
    std::vector<SolutionCert> out;
    auto keep = [&](SolutionCert c) {
        if (verify(inst, c, 100000) == Verdict::Verified) out.push_back(std::move(c));
    };
    switch (inst.pid.kind) {
        case ProblemKind::RT1:
        case ProblemKind::D2:
            for (auto& w : all_bit_words(len_bound, std::max(1U, height_bound))) {
                keep(SolutionCert{WordCert{std::move(w)}});
            }
            break;
        case ProblemKind::TT1: {
            const auto& tc = std::get<TreeColoringInstance>(inst.payload);
            if (!tc.is_pattern()) break;
            const PatternColoring& f = tc.pattern();
            for (unsigned h = 0; h <= height_bound; ++h) {
                for (Color c = 0; c < f.palette(); ++c) {
                    for (TreeSet& S : enumerate_mono(f, BinStr{}, h, len_bound, c)) {
                        keep(SolutionCert{TT1Cert{std::move(S), c, {}}});
                    }
                }
            }
            break;
        }
        case ProblemKind::V0:
        case ProblemKind::V1:
        case ProblemKind::V2:
        case ProblemKind::V3:
        case ProblemKind::V4:
            for (const BinStr& s : all_strings_up_to(len_bound)) {
                for (Color i = 0; i < 2; ++i) keep(SolutionCert{PairCert{i, s}});
            }
            break;
        case ProblemKind::CN:
        case ProblemKind::TCN:
        case ProblemKind::STCN:
            keep(SolutionCert{NatCert{-1}});
            for (std::uint64_t x = 0; x <= value_bound; ++x) {
                keep(SolutionCert{NatCert{static_cast<std::int64_t>(x)}});
            }
            break;
        case ProblemKind::WF:
        case ProblemKind::IsFinite:
        case ProblemKind::TT1Ext:
            keep(SolutionCert{NatCert{0}});
            keep(SolutionCert{NatCert{1}});
            break;
        case ProblemKind::FO:
            for (std::uint64_t x = 0; x <= value_bound; ++x) {
                keep(SolutionCert{NatCert{static_cast<std::int64_t>(x)}});
            }
            break;
    }
    return out;
}

}  // namespace rakelab
