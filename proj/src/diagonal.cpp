#include "rakelab/diagonal.hpp"

#include <algorithm>

namespace rakelab {

// ---------------------------------------------------------------------------
// Candidates
// ---------------------------------------------------------------------------

std::string Candidate::name() const {
    std::string base;
    switch (kind) {
        case Kind::Parity:
            base = "parity";
            break;
        case Kind::LevelCap:
            base = "levelcap";
            break;
        case Kind::SolverPair:
            base = "solverpair";
            break;
    }
    return black_box ? base + " (black box)" : base;
}

Candidate Candidate::by_name(const std::string& text, unsigned k, unsigned j, bool black_box) {
    Candidate c;
    c.k = k;
    c.j = j;
    c.black_box = black_box;
    if (text == "parity") {
        c.kind = Kind::Parity;
    } else if (text == "levelcap") {
        c.kind = Kind::LevelCap;
    } else if (text == "solverpair") {
        c.kind = Kind::SolverPair;
    } else {
        throw std::invalid_argument("unknown candidate: " + text);
    }
    return c;
}

PatternColoring Candidate::family_coloring(const std::vector<Color>& alpha, Color floor) const {
    switch (kind) {
        case Kind::Parity: {
            OmegaColoring w;
            w.period = {0, 1};
            return rt1_to_tt1_forward(w);
        }
        case Kind::LevelCap: {
            // f(s) = min(g(|s|), j-1); single-valued on the floor-good family
            // iff every admissible tail value caps to the same color.
            const Color cap = j - 1;
            const Color lo = std::min(floor + 1, cap);
            const Color hi = std::min(k - 1, cap);
            if (lo != hi) {
                throw precondition_violated("levelcap: family not single-valued here");
            }
            OmegaColoring w;
            for (Color a : alpha) w.prefix.push_back(std::min(a, cap));
            w.period = {lo};
            return rt1_to_tt1_forward(w);
        }
        case Kind::SolverPair:
            return PatternColoring::constant(std::max(2U, j), 0);
    }
    throw std::logic_error("unreachable");
}

std::optional<int> Candidate::psi(const OmegaColoring& g_view, const TreeSet& S, std::uint64_t x,
                                  std::uint64_t budget) const {
    if (budget < S.size() + 1) return std::nullopt;
    switch (kind) {
        case Kind::Parity:
        case Kind::LevelCap: {
            // Echo the lengths of the claimed solution prefix.
            for (const BinStr& s : S.elems()) {
                if (s.length() == x) return 1;
            }
            return 0;
        }
        case Kind::SolverPair: {
            // Solve the visible coloring outright and answer membership in
            // the canonical homogeneous set; ignores S.
            const WordCert M = solve_rt1(g_view);
            return M.word.member(x) ? 1 : 0;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// run_adversary
// ---------------------------------------------------------------------------

namespace {

OmegaColoring search_view(const std::vector<Color>& prefix, Color c) {
    OmegaColoring v;
    v.prefix = prefix;
    v.period = {c};
    return v;
}

struct StageHit {
    std::uint64_t m;
    unsigned n;
    TreeSet S;
    std::uint64_t x;
};

// Canonical (m, n, S, x) search for one stage: the forward map must converge
// monochromatically on S with root extending sigma, and psi must confirm a
// point at or beyond the stage-start alpha. Candidates are visited in a fixed
// order; `skip` many confirmed hits are passed over (to retry defeats).
std::optional<StageHit> stage_search(const Candidate& cand, const std::vector<Color>& alpha,
                                     Color c, const BinStr& sigma, std::uint64_t budget,
                                     std::uint64_t skip) {
    for (std::uint64_t m = 1; m <= budget; ++m) {
        std::vector<Color> prefix = alpha;
        for (std::uint64_t i = 0; i < m; ++i) prefix.push_back(c);
        PatternColoring f_pre = cand.family_coloring(prefix, c);
        const unsigned conv = static_cast<unsigned>(prefix.size());

        for (unsigned n = 1; n <= 2; ++n) {
            for (Color value = 0; value < f_pre.palette(); ++value) {
                for (const TreeSet& S : enumerate_mono(f_pre, sigma, n, conv - 1, value)) {
                    for (std::uint64_t x = alpha.size(); x < prefix.size(); ++x) {
                        auto ans = cand.psi(search_view(prefix, c), S, x, budget + S.size() + 1);
                        if (ans && *ans == 1) {
                            if (skip > 0) {
                                --skip;
                                continue;
                            }
                            return StageHit{m, n, S, x};
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

AdversaryTranscript run_adversary(const Candidate& cand, unsigned k, unsigned j,
                                  std::uint64_t budget) {
    if (k <= j || j < 1) {
        throw precondition_violated("run_adversary: requires k > j >= 1");
    }
    AdversaryTranscript t;
    t.k = k;
    t.j = j;

    std::vector<Color> alpha;
    BinStr sigma;

    for (Color c = 0; c < j; ++c) {
        bool advanced = false;
        for (std::uint64_t skip = 0; skip < budget && !advanced; ++skip) {
            std::optional<StageHit> hit;
            try {
                hit = stage_search(cand, alpha, c, sigma, budget, skip);
            } catch (const precondition_violated&) {
                t.outcome = AdversaryTranscript::Outcome::Inconclusive;
                t.note = "white-box family query failed during the stage search";
                return t;
            }
            if (!hit) {
                t.outcome = AdversaryTranscript::Outcome::Inconclusive;
                t.note = "stage " + std::to_string(c) + " search exhausted the budget";
                return t;
            }
            // Pad so the confirmed point lies inside the committed prefix.
            std::uint64_t m = std::max<std::uint64_t>(hit->m, hit->x + 1 - alpha.size());

            AdversaryStage stage;
            stage.alpha = alpha;
            stage.sigma = sigma;
            stage.m = m;
            stage.n = hit->n;
            stage.S = hit->S;
            stage.lambda = hit->S.leaves().elems().front();
            stage.x = hit->x;

            std::vector<Color> alpha_next = alpha;
            for (std::uint64_t i = 0; i < m; ++i) alpha_next.push_back(c);

            if (cand.black_box) {
                t.stages.push_back(stage);
                t.outcome = AdversaryTranscript::Outcome::Inconclusive;
                t.note = "black-box candidate: exclusion cannot be certified";
                t.final_alpha = alpha_next;
                return t;
            }

            const PatternColoring fam = cand.family_coloring(alpha_next, c);

            // Exclusion: some leaf of S and some string above it avoid the
            // confirmed value entirely, across the whole c-good family.
            bool excluded = false;
            for (const BinStr& lambda : stage.S.leaves().elems()) {
                const Color v = fam.eval(lambda);
                if (!avoidable_above(fam, v, lambda)) continue;
                const unsigned cap = lambda.length() + fam.max_decision_length() +
                                     fam.period_lcm() + 4;
                for (std::uint64_t idx = 0; !excluded; ++idx) {
                    const BinStr s = BinStr::from_index(idx);
                    if (s.length() > cap) break;
                    if (!lambda.prefix_of(s)) continue;
                    if (!min_occurrence_length(fam, v, s)) {
                        stage.lambda = lambda;
                        stage.excluded = true;
                        stage.sigma_next = s;
                        excluded = true;
                    }
                }
                if (excluded) break;
            }

            if (excluded) {
                t.stages.push_back(stage);
                alpha = alpha_next;
                sigma = stage.sigma_next;
                advanced = true;
                break;
            }

            // Defeat attempt: the confirmed value recurs above every leaf, so
            // S extends to a full solution of the forward image of a coloring
            // whose confirmed color dies out.
            OmegaColoring g;
            g.prefix = alpha_next;
            g.period = {j};
            const Color v_s = fam.eval(stage.S.elems().front());
            bool mono = true;
            for (const BinStr& s : stage.S.elems()) mono = mono && fam.eval(s) == v_s;
            const bool extendable = mono && mono_extendable(fam, stage.S, v_s);
            const auto recheck = cand.psi(g, stage.S, stage.x, budget + stage.S.size() + 1);
            if (extendable && recheck && *recheck == 1) {
                t.stages.push_back(stage);
                t.outcome = AdversaryTranscript::Outcome::Falsified;
                t.g = g;
                t.final_alpha = alpha_next;
                t.note = "confirmed point keeps color " + std::to_string(c) +
                         ", which occurs only finitely often in g";
                return t;
            }
            // Otherwise pass over this hit and try the next candidate tuple.
        }
        if (!advanced) {
            t.outcome = AdversaryTranscript::Outcome::Inconclusive;
            t.note = "stage " + std::to_string(c) +
                     ": no exclusion and no certifiable defeat within budget";
            t.final_alpha = alpha;
            t.g.prefix = alpha;
            t.g.period = {j};
            return t;
        }
    }

    // Every stage excluded its confirmed value; check the final palette.
    t.final_alpha = alpha;
    t.g.prefix = alpha;
    t.g.period = {j};
    const PatternColoring fam = cand.family_coloring(alpha, j - 1);
    const ColorSet occ = fam.cone_colors(sigma);
    bool any_legal = false;
    for (Color v : occ) {
        if (v < j) any_legal = true;
    }
    if (!any_legal) {
        t.outcome = AdversaryTranscript::Outcome::FalsifiedDomain;
        t.note = "no color below " + std::to_string(j) +
                 " occurs above the final exclusion point: the forward image is not a valid "
                 "instance";
    } else {
        t.outcome = AdversaryTranscript::Outcome::Inconclusive;
        t.note = "exclusion chain complete but the palette contradiction is not certifiable";
    }
    return t;
}

// ---------------------------------------------------------------------------
// check_transcript
// ---------------------------------------------------------------------------

Verdict check_transcript(const AdversaryTranscript& t, const Candidate& cand) {
    if (cand.black_box) return Verdict::Unverifiable;
    if (t.j < 1 || t.k <= t.j) return Verdict::Refuted;
    if (t.outcome == AdversaryTranscript::Outcome::Inconclusive) return Verdict::Refuted;

    std::vector<Color> alpha;
    BinStr sigma;
    try {
        for (std::size_t c = 0; c < t.stages.size(); ++c) {
            const AdversaryStage& st = t.stages[c];
            if (st.alpha != alpha || st.sigma != sigma) return Verdict::Refuted;

            std::vector<Color> alpha_next = alpha;
            for (std::uint64_t i = 0; i < st.m; ++i) alpha_next.push_back(static_cast<Color>(c));

            // Confirmed monochromatic prefix with a confirmed point.
            const auto shape = st.S.iso_to_full();
            if (!shape || *shape != st.n || st.S.empty()) return Verdict::Refuted;
            if (!sigma.prefix_of(st.S.elems().front())) return Verdict::Refuted;
            const PatternColoring fam = cand.family_coloring(alpha_next, static_cast<Color>(c));
            const Color v_s = fam.eval(st.S.elems().front());
            for (const BinStr& s : st.S.elems()) {
                if (s.length() >= alpha_next.size()) return Verdict::Refuted;
                if (fam.eval(s) != v_s) return Verdict::Refuted;
            }
            if (st.x < alpha.size() || st.x >= alpha_next.size()) return Verdict::Refuted;
            const auto ans = cand.psi(search_view(alpha_next, static_cast<Color>(c)), st.S, st.x,
                                      1000 + st.S.size());
            if (!ans || *ans != 1) return Verdict::Refuted;
            if (!st.S.contains(st.lambda)) return Verdict::Refuted;

            if (st.excluded) {
                // The leaf value must be avoided above sigma_next family-wide.
                if (!st.lambda.prefix_of(st.sigma_next) &&
                    !st.sigma_next.prefix_of(st.lambda)) {
                    return Verdict::Refuted;
                }
                const Color v = fam.eval(st.lambda);
                if (min_occurrence_length(fam, v, st.sigma_next)) return Verdict::Refuted;
                alpha = alpha_next;
                sigma = st.sigma_next;
                continue;
            }

            // A non-excluded stage must be the defeating last stage.
            if (c + 1 != t.stages.size() ||
                t.outcome != AdversaryTranscript::Outcome::Falsified) {
                return Verdict::Refuted;
            }
            if (t.g.prefix != alpha_next || t.g.period != std::vector<Color>{t.j}) {
                return Verdict::Refuted;
            }
            // g kills the confirmed color: it occurs nowhere in the tail.
            if (t.g.period_colors().count(static_cast<Color>(c))) return Verdict::Refuted;
            if (t.g.at(st.x) != static_cast<Color>(c)) return Verdict::Refuted;
            if (!mono_extendable(fam, st.S, v_s)) return Verdict::Refuted;
            const auto re = cand.psi(t.g, st.S, st.x, 1000 + st.S.size());
            if (!re || *re != 1) return Verdict::Refuted;
            return Verdict::Verified;
        }

        // No defeating stage: only a domain falsification can remain.
        if (t.outcome != AdversaryTranscript::Outcome::FalsifiedDomain) return Verdict::Refuted;
        if (t.stages.size() != t.j) return Verdict::Refuted;
        const PatternColoring fam = cand.family_coloring(alpha, t.j - 1);
        for (Color v : fam.cone_colors(sigma)) {
            if (v < t.j) return Verdict::Refuted;
        }
        return Verdict::Verified;
    } catch (const std::exception&) {
        return Verdict::Refuted;
    }
}

}  // namespace rakelab
