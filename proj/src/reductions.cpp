#include "rakelab/reductions.hpp"

#include <algorithm>

namespace rakelab {

// ---------------------------------------------------------------------------
// rt1 -> tt1
// ---------------------------------------------------------------------------

PatternColoring rt1_to_tt1_forward(const OmegaColoring& g) {
    const unsigned L = static_cast<unsigned>(g.prefix.size());
    const unsigned p = static_cast<unsigned>(g.period.size());
    Color palette = 0;
    for (Color c : g.range()) palette = std::max(palette, c + 1);

    std::map<BinStr, Color> table;
    std::map<BinStr, ConeBehavior> behaviors;
    for (unsigned len = 0; len <= L; ++len) {
        for (const BinStr& s : all_strings_of_length(len)) table[s] = g.at(len);
    }
    std::vector<Color> wheel(p);
    for (unsigned r = 0; r < p; ++r) wheel[r] = g.period[((r + p * (L / p + 1)) - L) % p];
    for (const BinStr& leaf : all_strings_of_length(L)) {
        behaviors[leaf] = ConeBehavior::length_mod(wheel);
    }
    return PatternColoring(palette, std::move(table), std::move(behaviors));
}

WordCert rt1_to_tt1_backward(const OmegaColoring& g, const TT1Cert& cert) {
    // Lengths of the canonical solution extending the certified prefix: the
    // prefix lengths, then every level of the certificate's color.
    std::set<std::uint64_t> prefix_lengths;
    std::uint64_t L0 = 0;
    for (const BinStr& s : cert.prefix.elems()) {
        prefix_lengths.insert(s.length());
        L0 = std::max<std::uint64_t>(L0, s.length() + 1);
    }
    const std::uint64_t P0 = std::max<std::uint64_t>(L0, g.prefix.size());
    const std::uint64_t p = g.period.size();
    WordCert out;
    for (std::uint64_t x = 0; x < P0; ++x) {
        const bool in = prefix_lengths.count(x) || (x >= L0 && g.at(x) == cert.color);
        out.word.prefix.push_back(in ? 1 : 0);
    }
    for (std::uint64_t r = 0; r < p; ++r) {
        const std::uint64_t shift = (r + P0 - g.prefix.size()) % p;
        out.word.period.push_back(g.period[shift] == cert.color ? 1 : 0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// ell-driven colorings
// ---------------------------------------------------------------------------

namespace {

struct ChangeProfile {
    std::vector<char> change;  // change(t) = [ell(t) != ell(t+1)] for t < size
    bool all_change_beyond = false;
};

ChangeProfile ell_changes(const CoEnum& e) {
    ChangeProfile out;
    const auto a = decide_A(e);
    std::uint64_t horizon;
    if (!a.empty) {
        horizon = ell_stabilization_stage(e);  // changes stop strictly below
        out.all_change_beyond = false;
    } else {
        std::uint64_t maxstage = 0;
        for (std::uint64_t v : e.stages) maxstage = std::max(maxstage, v);
        horizon = e.stages.size() + maxstage + 1;
        out.all_change_beyond = true;  // every later stage excludes a new value
    }
    std::uint64_t prev = ell(e, 0);
    for (std::uint64_t t = 0; t < horizon; ++t) {
        const std::uint64_t next = ell(e, t + 1);
        out.change.push_back(prev != next ? 1 : 0);
        prev = next;
    }
    return out;
}

bool change_at(const ChangeProfile& p, std::uint64_t t) {
    if (t < p.change.size()) return p.change[t] != 0;
    return p.all_change_beyond;
}

// First change at or after s, or nullopt.
std::optional<std::uint64_t> first_change_from(const ChangeProfile& p, std::uint64_t s) {
    for (std::uint64_t t = s; t < p.change.size(); ++t) {
        if (p.change[t]) return t;
    }
    if (p.all_change_beyond) return std::max<std::uint64_t>(s, p.change.size());
    return std::nullopt;
}

}  // namespace

PatternColoring tcn_to_v0_forward(const CoEnum& e) {
    const ChangeProfile prof = ell_changes(e);
    unsigned dd = 0;
    if (prof.all_change_beyond) {
        // Beyond the last non-change every level splits by its final bit.
        for (std::uint64_t t = 0; t < prof.change.size(); ++t) {
            if (!prof.change[t]) dd = static_cast<unsigned>(t) + 2;
        }
    } else {
        for (std::uint64_t t = 0; t < prof.change.size(); ++t) {
            if (prof.change[t]) dd = static_cast<unsigned>(t) + 2;
        }
    }
    std::map<BinStr, Color> table{{BinStr{}, 0}};
    for (unsigned len = 0; len < dd; ++len) {
        for (const BinStr& s : all_strings_of_length(len)) {
            for (bool b : {false, true}) {
                table[s.extended(b)] = change_at(prof, len) ? (b ? 1 : 0) : table[s];
            }
        }
    }
    std::map<BinStr, ConeBehavior> behaviors;
    for (const BinStr& leaf : all_strings_of_length(dd)) {
        behaviors[leaf] =
            prof.all_change_beyond ? ConeBehavior::last_bit() : ConeBehavior::constant(table[leaf]);
    }
    return PatternColoring(2, std::move(table), std::move(behaviors));
}

PatternColoring stcn_to_v2_forward(const CoEnum& e) {
    const ChangeProfile prof = ell_changes(e);
    unsigned dd = 1;
    if (prof.all_change_beyond) {
        dd = static_cast<unsigned>(prof.change.size()) + 1;
    } else {
        for (std::uint64_t t = 0; t < prof.change.size(); ++t) {
            if (prof.change[t]) dd = static_cast<unsigned>(t) + 2;
        }
    }

    // f(0^s) = 0; a string whose first 1 sits at level s is 0 iff ell changes
    // in [s, |its length|).
    auto color_of = [&](const BinStr& s) -> Color {
        std::optional<unsigned> first_one;
        for (unsigned i = 0; i < s.length(); ++i) {
            if (s.bit(i)) {
                first_one = i;
                break;
            }
        }
        if (!first_one) return 0;
        const auto ch = first_change_from(prof, *first_one);
        return (ch && *ch < s.length()) ? 0 : 1;
    };

    std::map<BinStr, Color> table;
    for (unsigned len = 0; len <= dd; ++len) {
        for (const BinStr& s : all_strings_of_length(len)) table[s] = color_of(s);
    }
    std::map<BinStr, ConeBehavior> behaviors;
    for (const BinStr& leaf : all_strings_of_length(dd)) {
        bool spine = true;
        std::optional<unsigned> first_one;
        for (unsigned i = 0; i < leaf.length(); ++i) {
            if (leaf.bit(i)) {
                spine = false;
                first_one = first_one ? first_one : std::optional<unsigned>(i);
                break;
            }
        }
        if (spine) {
            behaviors[leaf] = prof.all_change_beyond ? ConeBehavior::constant(0)
                                                     : ConeBehavior::spine_zero(0, 1);
        } else {
            const auto ch = first_change_from(prof, *first_one);
            behaviors[leaf] = ConeBehavior::constant(ch ? 0 : 1);
        }
    }
    return PatternColoring(2, std::move(table), std::move(behaviors));
}

// ---------------------------------------------------------------------------
// Coloring -> choice forward maps
// ---------------------------------------------------------------------------

namespace {

void require_spine_free(const PatternColoring& f, const char* who) {
    for (const auto& [leaf, b] : f.behaviors()) {
        if (std::holds_alternative<ConeBehavior::SpineZero>(b.kind)) {
            throw precondition_violated(std::string(who) +
                                        ": spine behaviors have unboundedly many minimal "
                                        "cone roots and are not supported here");
        }
    }
}

// Minimal roots of constantly-i cones, all of length <= max decision length + 1.
std::vector<BinStr> minimal_cone_roots(const PatternColoring& f, Color i) {
    std::vector<BinStr> out;
    for (const BinStr& s : all_strings_up_to(f.max_decision_length() + 1)) {
        if (!f.cone_constant(s, i)) continue;
        if (!s.empty() && f.cone_constant(s.prefix(s.length() - 1), i)) continue;
        out.push_back(s);
    }
    return out;
}

}  // namespace

CoEnum v1_to_tcn_forward(const PatternColoring& f) {
    require_spine_free(f, "v1_to_tcn");
    CoEnum::CoCones cc;
    cc.pair_coded = true;
    for (Color i = 0; i < 2; ++i) {
        for (const BinStr& r : minimal_cone_roots(f, i)) cc.roots.emplace_back(i, r);
    }
    CoEnum e;
    e.tail = cc;
    return e;
}

CoEnum v4_to_stcn_forward(const PatternColoring& f) {
    require_spine_free(f, "v4_to_stcn");
    CoEnum::CoCones cc;
    cc.pair_coded = false;
    for (const BinStr& r : minimal_cone_roots(f, 1)) cc.roots.emplace_back(0, r);
    CoEnum e;
    e.tail = cc;
    return e;
}

CoEnum isfinite_to_stcn_forward(const OmegaColoring& word) {
    CoEnum e;
    if (word.infinite_set()) {
        e.tail = CoEnum::Exhaustive{};
        return e;
    }
    std::uint64_t top = 0;
    for (std::uint64_t x = 0; x < word.prefix.size(); ++x) {
        if (word.member(x)) top = x;
    }
    for (std::uint64_t v = 1; v <= top; ++v) e.stages.push_back(v);
    e.tail = CoEnum::Stabilized{};
    return e;
}

// ---------------------------------------------------------------------------
// WF <-> TT1Ext
// ---------------------------------------------------------------------------

ProgramColoring wf_to_tt1ext_forward(const FiniteOmegaTree& T) {
    ProgramColoring f;
    f.declared_palette = 2;
    f.prog = ProgramColoring::RMembershipProg{std::make_shared<FiniteOmegaTree>(T)};
    return f;
}

FiniteOmegaTree tt1ext_to_wf_forward(const PatternColoring& f, const BinStr& sigma) {
    const Color c = f.eval(sigma);
    const bool ext = mono_extendable(f, TreeSet{}.with(sigma), c);
    const unsigned cap = sigma.length() + f.max_decision_length() + f.period_lcm() + 1;
    const auto attempts = enumerate_mono(f, sigma, 1, cap, c);

    FiniteOmegaTree T;
    T.elems.push_back({});
    for (unsigned i = 0; i < attempts.size(); ++i) T.elems.push_back({i});
    if (ext) {
        // Designated branch through the canonical attempt, continued by the
        // canonical child at every later level.
        FiniteOmegaTree::InfinitePath p;
        p.stem = {0};
        p.cycle = {0};
        T.growth = p;
    }
    T.validate();
    return T;
}

// ---------------------------------------------------------------------------
// tt1_k -> d2_k
// ---------------------------------------------------------------------------

namespace {

// Least string at or above base whose cone omits c entirely.
BinStr least_avoider(const PatternColoring& f, Color c, const BinStr& base) {
    const unsigned cap = base.length() + f.max_decision_length() + f.period_lcm() + 4;
    for (std::uint64_t idx = 0;; ++idx) {
        const BinStr t = BinStr::from_index(idx);
        if (t.length() > cap) break;
        if (!base.prefix_of(t)) continue;
        if (!min_occurrence_length(f, c, t)) return t;
    }
    throw precondition_violated("least_avoider: no avoider under cap");
}

}  // namespace

RhoAnalysis analyze_rho(const PatternColoring& f, unsigned k) {
    RhoAnalysis a;
    a.k = k;
    BinStr base;
    Color c = 0;
    for (; c + 1 < k; ++c) {
        if (!avoidable_above(f, c, base)) break;
        const BinStr tau = least_avoider(f, c, base);
        // The bounded avoider reaches tau once every length-lex smaller
        // candidate has died: its first c-occurrence depth plus one.
        std::uint64_t n = a.stab.empty() ? 0 : a.stab.back();
        for (std::uint64_t idx = 0; idx < tau.index(); ++idx) {
            const BinStr t = BinStr::from_index(idx);
            if (!base.prefix_of(t)) continue;
            const auto occ = min_occurrence_length(f, c, t);
            if (occ) n = std::max<std::uint64_t>(n, *occ + 1);
        }
        a.rho.push_back(tau);
        a.stab.push_back(n);
        base = tau;
    }
    a.cstar = c;
    a.prefix_len = a.stab.empty() ? 0 : a.stab.back();
    return a;
}

LimitColoring tt1k_to_d2k_forward(const PatternColoring& f, unsigned k) {
    const RhoAnalysis a = analyze_rho(f, k);
    LimitColoring g;
    g.k = k;
    for (std::uint64_t n = 0; n < a.prefix_len; ++n) {
        // Largest c <= cstar whose lower levels have all settled by n.
        Color v = 0;
        for (Color c = 1; c <= a.cstar; ++c) {
            if (a.stab[c - 1] <= n) v = c;
        }
        g.limit.prefix.push_back(v);
    }
    g.limit.period = {a.cstar};
    g.stab_prefix.assign(a.prefix_len, a.prefix_len);
    g.stab_coef = 1;
    g.stab_off = 1;
    return g;
}

TT1Cert tt1k_to_d2k_backward(const PatternColoring& f, unsigned k, const WordCert& M) {
    const RhoAnalysis a = analyze_rho(f, k);
    std::uint64_t n = 0;
    while (!M.word.member(n)) ++n;
    const Color c = (n < a.prefix_len)
                        ? tt1k_to_d2k_forward(f, k).limit.at(n)
                        : a.cstar;
    const BinStr base = (c == 0) ? BinStr{} : a.rho[c - 1];
    if (!dense_above(f, c, base)) {
        throw precondition_violated("tt1k_to_d2k_backward: color not dense above rho");
    }
    return build_mono_prefix(f, base, c, 2);
}

// ---------------------------------------------------------------------------
// The first-order pipeline
// ---------------------------------------------------------------------------

namespace {

std::optional<BinStr> least_colored_capped(const PatternColoring& f, const BinStr& s, Color c,
                                           unsigned cap, bool strict) {
    if (!strict && f.eval(s) == c) return s;
    if (s.length() >= cap) return std::nullopt;
    std::vector<BinStr> frontier{s};
    while (!frontier.empty()) {
        std::vector<BinStr> next;
        for (const BinStr& t : frontier) {
            for (bool b : {false, true}) {
                BinStr u = t.extended(b);
                if (f.eval(u) == c) return u;
                if (u.length() < cap) next.push_back(u);
            }
        }
        frontier.swap(next);
    }
    return std::nullopt;
}

std::optional<FiniteRake> build_rake_capped(const PatternColoring& f, const std::vector<Color>& C,
                                            const BinStr& root, unsigned m, unsigned cap) {
    const unsigned k = static_cast<unsigned>(C.size());
    auto grow_chain = [&](const BinStr& head) -> std::optional<std::vector<BinStr>> {
        std::vector<BinStr> chain{head};
        for (unsigned i = 1; i < k; ++i) {
            auto nxt = least_colored_capped(f, chain.back(), C[i], cap, true);
            if (!nxt) return std::nullopt;
            chain.push_back(*nxt);
        }
        return chain;
    };
    FiniteRake R;
    R.C = C;
    auto first = grow_chain(root);
    if (!first) return std::nullopt;
    R.blocks.push_back({*first});
    while (R.blocks.size() < m) {
        std::vector<std::vector<BinStr>> next;
        for (const auto& chain : R.blocks.back()) {
            const BinStr& top = chain.back();
            for (unsigned i = 0; i <= k; ++i) {
                BinStr stem = top + BinStr::zeros(i);
                if (i < k) stem.push_back(true);
                if (stem.length() > cap) return std::nullopt;
                auto head = least_colored_capped(f, stem, C[0], cap, false);
                if (!head) return std::nullopt;
                auto c2 = grow_chain(*head);
                if (!c2) return std::nullopt;
                next.push_back(std::move(*c2));
            }
        }
        R.blocks.push_back(std::move(next));
    }
    return R;
}

FOPipeline::Tuple staged_claim(const PatternColoring& f, const Functional& gamma, unsigned m_cap,
                               std::uint64_t t) {
    FOPipeline::Tuple out;
    out.degenerate = true;
    ColorSet ran;
    const unsigned range_cap =
        static_cast<unsigned>(std::min<std::uint64_t>(t, f.max_decision_length() +
                                                             f.period_lcm() + 1));
    for (const BinStr& s : all_strings_up_to(range_cap)) ran.insert(f.eval(s));
    const WResult w0 = compute_W_staged(f, ran, BinStr{}, t);
    ColorSet C;
    for (Color c : ran) {
        if (!w0.W.count(c)) C.insert(c);
    }
    if (C.empty()) return out;
    out.C = C;
    const std::vector<Color> Cv(C.begin(), C.end());
    const unsigned cap = static_cast<unsigned>(std::min<std::uint64_t>(t, BinStr::kMaxLen - 1));
    auto root = least_colored_capped(f, w0.tau, Cv.front(), cap, false);
    if (!root) return out;

    std::optional<FiniteRake> R;
    for (unsigned m = 1; m <= m_cap && !R; ++m) {
        auto Rm = build_rake_capped(f, Cv, *root, m, cap);
        if (!Rm) return out;
        bool all = true;
        for (const TreeSet& S : enumerate_subrake_trees(*Rm)) {
            if (!gamma.halts_on(S)) {
                all = false;
                break;
            }
        }
        if (all) R = Rm;
    }
    if (!R) return out;
    out.R = *R;
    out.degenerate = false;

    std::uint64_t s = 0;
    for (const BinStr& leaf : out.R.leaves()) {
        s = std::max(s, compute_W_staged(f, C, leaf, t).stop_stage);
    }
    out.s = s;
    for (const BinStr& leaf : out.R.leaves()) {
        StagedW stream(f, C, leaf);
        ColorSet V;
        for (std::uint64_t u = 0; u <= t; ++u) V = stream.next();
        Color c = 0;
        for (Color x : C) {
            if (!V.count(x)) {
                c = x;
                break;
            }
        }
        out.leaf_colors.push_back(c);
    }
    return out;
}

std::size_t intern_tuple(std::vector<FOPipeline::Tuple>& table, const FOPipeline::Tuple& t) {
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] == t) return i;
    }
    table.push_back(t);
    return table.size() - 1;
}

}  // namespace

FOPipeline fo_tt1n_to_rt1n_pipeline(const PatternColoring& f, const Functional& gamma,
                                    unsigned m_cap) {
    FOPipeline pl;

    // Exact claim triple.
    GoodRake gr = build_good_rake(f);
    const TruncationResult tr = truncate_rake(*gr.rake, gamma, m_cap);
    pl.C = gr.C;
    pl.R = tr.rake;
    pl.m = tr.m;
    FOPipeline::Tuple exact;
    exact.C = pl.C;
    exact.R = pl.R;
    std::uint64_t max_stop = 0;
    unsigned max_len = 0;
    for (const BinStr& node : pl.R.node_set().elems()) max_len = std::max(max_len, node.length());
    for (const BinStr& leaf : pl.R.leaves()) {
        const WResult w = compute_W(f, pl.C, leaf);
        max_stop = std::max(max_stop, w.stop_stage);
        Color c = 0;
        for (Color x : pl.C) {
            if (!w.W.count(x)) {
                c = x;
                break;
            }
        }
        exact.leaf_colors.push_back(c);
        for (const auto& [st, tau, W] : w.trace) max_len = std::max(max_len, tau.length());
    }
    pl.s = max_stop;
    exact.s = pl.s;
    const WResult w_root = compute_W(f, f.range(), BinStr{});
    max_stop = std::max(max_stop, w_root.stop_stage);

    // Horizon past which every staged component provably equals the exact one.
    const std::uint64_t horizon =
        max_stop + max_len + f.max_decision_length() + f.period_lcm() + 16;

    for (std::uint64_t t = 0; t < horizon; ++t) {
        pl.staged_ids.push_back(intern_tuple(pl.tuple_by_id, staged_claim(f, gamma, m_cap, t)));
    }
    const std::size_t exact_id = intern_tuple(pl.tuple_by_id, exact);
    for (std::size_t id : pl.staged_ids) pl.d.prefix.push_back(static_cast<Color>(id));
    pl.d.period = {static_cast<Color>(exact_id)};
    return pl;
}

NatCert fo_tt1n_to_rt1n_backward(const PatternColoring& f, const Functional& gamma,
                                 const WordCert& M, unsigned m_cap) {
    const FOPipeline pl = fo_tt1n_to_rt1n_pipeline(f, gamma, m_cap);
    // The color of a valid homogeneous word is a value occurring infinitely
    // often, so it decodes to the stable claim tuple.
    std::uint64_t x = 0;
    while (!M.word.member(x)) ++x;
    const std::size_t id = pl.d.at(x);
    if (id >= pl.tuple_by_id.size() || pl.tuple_by_id[id].degenerate) {
        throw precondition_violated("fo backward: homogeneous color decodes to no claim tuple");
    }
    const auto& tup = pl.tuple_by_id[id];
    std::map<BinStr, Color> leaf_colors;
    const auto leaves = tup.R.leaves();
    for (std::size_t i = 0; i < leaves.size(); ++i) leaf_colors[leaves[i]] = tup.leaf_colors[i];
    const Extraction ex = extract_mono(f, tup.R, leaf_colors);
    const auto v = gamma.value_on(ex.S);
    if (!v) throw precondition_violated("fo backward: functional diverges on extraction");
    return NatCert{static_cast<std::int64_t>(*v)};
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace {

const TreeColoringInstance& tree_payload(const Instance& x) {
    return std::get<TreeColoringInstance>(x.payload);
}

Instance make_pattern_instance(ProblemId pid, PatternColoring f) {
    TreeColoringInstance tc;
    tc.f = std::move(f);
    return Instance{std::move(pid), std::move(tc)};
}

Reduction make_rt1_to_tt1(const ProblemId& src, const ProblemId& tgt) {
    return Reduction{
        "rt1_to_tt1", src, tgt,
        [tgt](const Instance& x) {
            const auto& oi = std::get<OmegaInstance>(x.payload);
            TreeColoringInstance tc;
            tc.f = rt1_to_tt1_forward(oi.g);
            tc.declared_bound = oi.declared_bound;
            return Instance{tgt, std::move(tc)};
        },
        [](const Instance& x, const SolutionCert& y) {
            const auto& oi = std::get<OmegaInstance>(x.payload);
            return SolutionCert{rt1_to_tt1_backward(oi.g, std::get<TT1Cert>(y.body))};
        }};
}

Reduction make_tt1k_to_d2k(const ProblemId& src, const ProblemId& tgt) {
    const unsigned k = src.k;
    return Reduction{
        "tt1k_to_d2k", src, tgt,
        [tgt, k](const Instance& x) {
            return Instance{tgt, tt1k_to_d2k_forward(tree_payload(x).pattern(), k)};
        },
        [k](const Instance& x, const SolutionCert& y) {
            return SolutionCert{
                tt1k_to_d2k_backward(tree_payload(x).pattern(), k, std::get<WordCert>(y.body))};
        }};
}

}  // namespace

std::vector<Reduction> all_reductions() {
    std::vector<Reduction> out;
    out.push_back(make_rt1_to_tt1(ProblemId::fixed(ProblemKind::RT1, 2),
                                  ProblemId::fixed(ProblemKind::TT1, 2)));

    out.push_back(Reduction{
        "tcn_to_v0", ProblemId::plain(ProblemKind::TCN), ProblemId::plain(ProblemKind::V0),
        [](const Instance& x) {
            return make_pattern_instance(ProblemId::plain(ProblemKind::V0),
                                         tcn_to_v0_forward(std::get<CoEnum>(x.payload)));
        },
        [](const Instance& x, const SolutionCert& y) {
            const auto& pc = std::get<PairCert>(y.body);
            const auto& e = std::get<CoEnum>(x.payload);
            return SolutionCert{NatCert{static_cast<std::int64_t>(ell(e, pc.sigma.length()))}};
        }});

    out.push_back(Reduction{
        "stcn_to_v2", ProblemId::plain(ProblemKind::STCN), ProblemId::plain(ProblemKind::V2),
        [](const Instance& x) {
            return make_pattern_instance(ProblemId::plain(ProblemKind::V2),
                                         stcn_to_v2_forward(std::get<CoEnum>(x.payload)));
        },
        [](const Instance& x, const SolutionCert& y) {
            const auto& pc = std::get<PairCert>(y.body);
            if (pc.i == 0) return SolutionCert{NatCert{-1}};
            const auto& e = std::get<CoEnum>(x.payload);
            return SolutionCert{NatCert{static_cast<std::int64_t>(ell(e, pc.sigma.length()))}};
        }});

    out.push_back(Reduction{
        "v1_to_tcn", ProblemId::plain(ProblemKind::V1), ProblemId::plain(ProblemKind::TCN),
        [](const Instance& x) {
            return Instance{ProblemId::plain(ProblemKind::TCN),
                            v1_to_tcn_forward(tree_payload(x).pattern())};
        },
        [](const Instance& x, const SolutionCert& y) {
            const auto& e = v1_to_tcn_forward(tree_payload(x).pattern());
            const auto v = std::get<NatCert>(y.body).value;
            if (v >= 0 && e.member(static_cast<std::uint64_t>(v))) {
                const auto [tag, idx] = cantor_unpair(static_cast<std::uint64_t>(v));
                return SolutionCert{
                    PairCert{static_cast<Color>(tag), BinStr::from_index(idx)}};
            }
            return SolutionCert{PairCert{0, BinStr{}}};
        }});

    out.push_back(Reduction{
        "v4_to_stcn", ProblemId::plain(ProblemKind::V4), ProblemId::plain(ProblemKind::STCN),
        [](const Instance& x) {
            return Instance{ProblemId::plain(ProblemKind::STCN),
                            v4_to_stcn_forward(tree_payload(x).pattern())};
        },
        [](const Instance& x, const SolutionCert& y) {
            (void)x;
            const auto v = std::get<NatCert>(y.body).value;
            if (v < 0) return SolutionCert{PairCert{0, BinStr{}}};
            return SolutionCert{PairCert{1, BinStr::from_index(static_cast<std::uint64_t>(v))}};
        }});

    out.push_back(Reduction{
        "isfinite_to_stcn", ProblemId::plain(ProblemKind::IsFinite),
        ProblemId::plain(ProblemKind::STCN),
        [](const Instance& x) {
            return Instance{ProblemId::plain(ProblemKind::STCN),
                            isfinite_to_stcn_forward(std::get<OmegaInstance>(x.payload).g)};
        },
        [](const Instance& x, const SolutionCert& y) {
            (void)x;
            return SolutionCert{NatCert{std::get<NatCert>(y.body).value < 0 ? 0 : 1}};
        }});

    out.push_back(Reduction{
        "wf_to_tt1ext", ProblemId::plain(ProblemKind::WF),
        ProblemId::fixed(ProblemKind::TT1Ext, 2),
        [](const Instance& x) {
            TreeColoringInstance tc;
            tc.f = wf_to_tt1ext_forward(std::get<FiniteOmegaTree>(x.payload));
            tc.sigma = BinStr{};
            return Instance{ProblemId::fixed(ProblemKind::TT1Ext, 2), std::move(tc)};
        },
        [](const Instance& x, const SolutionCert& y) {
            (void)x;
            return SolutionCert{NatCert{1 - std::get<NatCert>(y.body).value}};
        }});

    out.push_back(Reduction{
        "tt1ext_to_wf", ProblemId::fixed(ProblemKind::TT1Ext, 2),
        ProblemId::plain(ProblemKind::WF),
        [](const Instance& x) {
            const auto& tc = tree_payload(x);
            return Instance{ProblemId::plain(ProblemKind::WF),
                            tt1ext_to_wf_forward(tc.pattern(), tc.sigma)};
        },
        [](const Instance& x, const SolutionCert& y) {
            (void)x;
            return SolutionCert{NatCert{1 - std::get<NatCert>(y.body).value}};
        }});

    out.push_back(make_tt1k_to_d2k(ProblemId::fixed(ProblemKind::TT1, 2),
                                   ProblemId::fixed(ProblemKind::D2, 2)));

    out.push_back(Reduction{
        "fo_tt1n_to_rt1n",
        ProblemId::first_order(ProblemId::unbounded(ProblemKind::TT1)),
        ProblemId::unbounded(ProblemKind::RT1),
        [](const Instance& x) {
            const auto& fo = std::get<FOInstance>(x.payload);
            if (fo.delta.kind != Functional::Kind::Identity) {
                throw precondition_violated("fo_tt1n_to_rt1n: delta must be Identity");
            }
            const auto pl =
                fo_tt1n_to_rt1n_pipeline(tree_payload(*fo.A).pattern(), fo.gamma);
            OmegaInstance oi;
            oi.g = pl.d;
            return Instance{ProblemId::unbounded(ProblemKind::RT1), std::move(oi)};
        },
        [](const Instance& x, const SolutionCert& y) {
            const auto& fo = std::get<FOInstance>(x.payload);
            return SolutionCert{fo_tt1n_to_rt1n_backward(tree_payload(*fo.A).pattern(), fo.gamma,
                                                         std::get<WordCert>(y.body))};
        }});

    return out;
}

Reduction get_reduction(const ProblemId& source, const ProblemId& target) {
    // Parametrized families first.
    if (source.kind == ProblemKind::RT1 && target.kind == ProblemKind::TT1 &&
        source.bound == target.bound &&
        (source.bound != BoundMode::Fixed || source.k == target.k)) {
        return make_rt1_to_tt1(source, target);
    }
    if (source.kind == ProblemKind::TT1 && target.kind == ProblemKind::D2 &&
        source.bound == BoundMode::Fixed && source.k == target.k) {
        return make_tt1k_to_d2k(source, target);
    }
    for (Reduction& r : all_reductions()) {
        if (r.source == source && r.target == target) return r;
    }
    throw std::invalid_argument("no shipped reduction from " + source.str() + " to " +
                                target.str());
}

// ---------------------------------------------------------------------------
// Round-trip harness
// ---------------------------------------------------------------------------

ReductionReport verify_reduction(const Reduction& r, const std::vector<Instance>& corpus,
                                 const CertBounds& bounds) {
    ReductionReport report;
    report.reduction = r.name;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Instance& x = corpus[i];
        Instance y;
        try {
            y = r.forward(x);
        } catch (const std::exception& ex) {
            report.failures.push_back({i, std::string("forward failed: ") + ex.what()});
            continue;
        }
        ++report.instances;
        const auto certs =
            enumerate_certs(y, bounds.len_bound, bounds.height_bound, bounds.value_bound);
        for (std::size_t ci = 0; ci < certs.size(); ++ci) {
            ++report.certificates;
            try {
                const SolutionCert back = r.backward(x, certs[ci]);
                if (verify(x, back) != Verdict::Verified) {
                    report.failures.push_back(
                        {i, "back-translation of certificate #" + std::to_string(ci) +
                                " does not verify"});
                }
            } catch (const std::exception& ex) {
                report.failures.push_back({i, "backward failed on certificate #" +
                                                  std::to_string(ci) + ": " + ex.what()});
            }
        }
    }
    return report;
}

}  // namespace rakelab
