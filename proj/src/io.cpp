#include "rakelab/io.hpp"

#include <sstream>

namespace rakelab {

namespace {

std::string quoted(const BinStr& s) { return "\"" + s.str() + "\""; }

// ---------------------------------------------------------------------------
// Tokenizing reader
// ---------------------------------------------------------------------------

class Reader {
   public:
    explicit Reader(const std::string& text) : in_(text) {}

    bool next_line() {
        while (std::getline(in_, line_)) {
            pos_ = 0;
            if (!line_.empty()) return true;
        }
        return false;
    }

    std::string word() {
        skip_spaces();
        if (pos_ >= line_.size()) throw parse_error("unexpected end of line: " + line_);
        if (line_[pos_] == '"') return quoted_word();
        const std::size_t start = pos_;
        while (pos_ < line_.size() && line_[pos_] != ' ') ++pos_;
        return line_.substr(start, pos_ - start);
    }

    BinStr binstr() {
        skip_spaces();
        if (pos_ >= line_.size() || line_[pos_] != '"') {
            throw parse_error("expected quoted string in: " + line_);
        }
        return BinStr(quoted_word());
    }

    std::uint64_t nat() { return std::stoull(word()); }
    std::int64_t integer() { return std::stoll(word()); }

    bool at_end() {
        skip_spaces();
        return pos_ >= line_.size();
    }

    std::string rest() {
        skip_spaces();
        return line_.substr(pos_);
    }

    void expect(const std::string& w) {
        const std::string got = word();
        if (got != w) throw parse_error("expected '" + w + "', got '" + got + "'");
    }

    const std::string& line() const { return line_; }

   private:
    void skip_spaces() {
        while (pos_ < line_.size() && line_[pos_] == ' ') ++pos_;
    }

    std::string quoted_word() {
        ++pos_;  // opening quote
        const std::size_t start = pos_;
        while (pos_ < line_.size() && line_[pos_] != '"') ++pos_;
        if (pos_ >= line_.size()) throw parse_error("unterminated quote in: " + line_);
        const std::string out = line_.substr(start, pos_ - start);
        ++pos_;  // closing quote
        return out;
    }

    std::istringstream in_;
    std::string line_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Payload writers
// ---------------------------------------------------------------------------

void write_pattern(std::ostream& os, const PatternColoring& f) {
    os << "palette " << f.palette() << "\n";
    os << "decision " << f.table().size() << "\n";
    for (const auto& [s, c] : f.table()) os << quoted(s) << " " << c << "\n";
    os << "behaviors " << f.behaviors().size() << "\n";
    for (const auto& [s, b] : f.behaviors()) {
        os << quoted(s) << " ";
        if (const auto* cc = std::get_if<ConeBehavior::Constant>(&b.kind)) {
            os << "constant " << cc->c;
        } else if (const auto* lm = std::get_if<ConeBehavior::LengthMod>(&b.kind)) {
            os << "lengthmod " << lm->period;
            for (Color w : lm->wheel) os << " " << w;
        } else if (std::holds_alternative<ConeBehavior::LastBit>(b.kind)) {
            os << "lastbit";
        } else {
            const auto& sz = std::get<ConeBehavior::SpineZero>(b.kind);
            os << "spinezero " << sz.spine << " " << sz.off;
        }
        os << "\n";
    }
}

PatternColoring read_pattern(Reader& r) {
    r.next_line();
    r.expect("palette");
    const Color palette = static_cast<Color>(r.nat());
    r.next_line();
    r.expect("decision");
    const std::uint64_t nd = r.nat();
    std::map<BinStr, Color> table;
    for (std::uint64_t i = 0; i < nd; ++i) {
        r.next_line();
        const BinStr s = r.binstr();
        table[s] = static_cast<Color>(r.nat());
    }
    r.next_line();
    r.expect("behaviors");
    const std::uint64_t nb = r.nat();
    std::map<BinStr, ConeBehavior> behaviors;
    for (std::uint64_t i = 0; i < nb; ++i) {
        r.next_line();
        const BinStr s = r.binstr();
        const std::string kind = r.word();
        if (kind == "constant") {
            behaviors[s] = ConeBehavior::constant(static_cast<Color>(r.nat()));
        } else if (kind == "lengthmod") {
            const std::uint64_t p = r.nat();
            std::vector<Color> wheel;
            for (std::uint64_t w = 0; w < p; ++w) wheel.push_back(static_cast<Color>(r.nat()));
            behaviors[s] = ConeBehavior::length_mod(std::move(wheel));
        } else if (kind == "lastbit") {
            behaviors[s] = ConeBehavior::last_bit();
        } else if (kind == "spinezero") {
            const Color a = static_cast<Color>(r.nat());
            const Color b = static_cast<Color>(r.nat());
            behaviors[s] = ConeBehavior::spine_zero(a, b);
        } else {
            throw parse_error("unknown behavior kind: " + kind);
        }
    }
    return PatternColoring(palette, std::move(table), std::move(behaviors));
}

void write_omega_tree(std::ostream& os, const FiniteOmegaTree& T) {
    os << "nodes " << T.elems.size() << "\n";
    for (const auto& a : T.elems) {
        os << a.size();
        for (unsigned v : a) os << " " << v;
        os << "\n";
    }
    if (const auto* p = std::get_if<FiniteOmegaTree::InfinitePath>(&T.growth)) {
        os << "growth path stem " << p->stem.size();
        for (unsigned v : p->stem) os << " " << v;
        os << " cycle " << p->cycle.size();
        for (unsigned v : p->cycle) os << " " << v;
        os << "\n";
    } else {
        os << "growth none\n";
    }
}

FiniteOmegaTree read_omega_tree(Reader& r) {
    FiniteOmegaTree T;
    r.next_line();
    r.expect("nodes");
    const std::uint64_t n = r.nat();
    for (std::uint64_t i = 0; i < n; ++i) {
        r.next_line();
        const std::uint64_t len = r.nat();
        std::vector<unsigned> a;
        for (std::uint64_t x = 0; x < len; ++x) a.push_back(static_cast<unsigned>(r.nat()));
        T.elems.push_back(std::move(a));
    }
    r.next_line();
    r.expect("growth");
    const std::string kind = r.word();
    if (kind == "path") {
        FiniteOmegaTree::InfinitePath p;
        r.expect("stem");
        const std::uint64_t sn = r.nat();
        for (std::uint64_t i = 0; i < sn; ++i) p.stem.push_back(static_cast<unsigned>(r.nat()));
        r.expect("cycle");
        const std::uint64_t cn = r.nat();
        for (std::uint64_t i = 0; i < cn; ++i) p.cycle.push_back(static_cast<unsigned>(r.nat()));
        T.growth = p;
    } else if (kind != "none") {
        throw parse_error("unknown growth kind: " + kind);
    }
    T.validate();
    return T;
}

void write_word(std::ostream& os, const char* tag, const OmegaColoring& w) {
    os << tag << " prefix " << w.prefix.size();
    for (Color c : w.prefix) os << " " << c;
    os << "\n" << tag << " period " << w.period.size();
    for (Color c : w.period) os << " " << c;
    os << "\n";
}

OmegaColoring read_word(Reader& r, const char* tag) {
    OmegaColoring w;
    r.next_line();
    r.expect(tag);
    r.expect("prefix");
    const std::uint64_t np = r.nat();
    for (std::uint64_t i = 0; i < np; ++i) w.prefix.push_back(static_cast<Color>(r.nat()));
    r.next_line();
    r.expect(tag);
    r.expect("period");
    const std::uint64_t nq = r.nat();
    for (std::uint64_t i = 0; i < nq; ++i) w.period.push_back(static_cast<Color>(r.nat()));
    if (w.period.empty()) throw parse_error("empty period");
    return w;
}

void write_coenum(std::ostream& os, const CoEnum& e) {
    os << "stages " << e.stages.size();
    for (std::uint64_t v : e.stages) os << " " << v;
    os << "\n";
    if (std::holds_alternative<CoEnum::Stabilized>(e.tail)) {
        os << "tail stabilized\n";
    } else if (std::holds_alternative<CoEnum::Exhaustive>(e.tail)) {
        os << "tail exhaustive\n";
    } else {
        const auto& cc = std::get<CoEnum::CoCones>(e.tail);
        os << "tail cocones " << (cc.pair_coded ? "pair" : "bare") << " " << cc.roots.size()
           << "\n";
        for (const auto& [tag, root] : cc.roots) os << tag << " " << quoted(root) << "\n";
    }
}

CoEnum read_coenum(Reader& r) {
    CoEnum e;
    r.next_line();
    r.expect("stages");
    const std::uint64_t n = r.nat();
    for (std::uint64_t i = 0; i < n; ++i) e.stages.push_back(r.nat());
    r.next_line();
    r.expect("tail");
    const std::string kind = r.word();
    if (kind == "stabilized") {
        e.tail = CoEnum::Stabilized{};
    } else if (kind == "exhaustive") {
        e.tail = CoEnum::Exhaustive{};
    } else if (kind == "cocones") {
        CoEnum::CoCones cc;
        cc.pair_coded = r.word() == "pair";
        const std::uint64_t nr = r.nat();
        for (std::uint64_t i = 0; i < nr; ++i) {
            r.next_line();
            const Color tag = static_cast<Color>(r.nat());
            cc.roots.emplace_back(tag, r.binstr());
        }
        e.tail = cc;
    } else {
        throw parse_error("unknown tail: " + kind);
    }
    return e;
}

void write_limit(std::ostream& os, const LimitColoring& L) {
    os << "k " << L.k << "\n";
    write_word(os, "limit", L.limit);
    os << "stab prefix " << L.stab_prefix.size();
    for (std::uint64_t v : L.stab_prefix) os << " " << v;
    os << "\nstab tail " << L.stab_coef << " " << L.stab_off << "\n";
    os << "overrides " << L.overrides.size() << "\n";
    for (const auto& [nt, c] : L.overrides) {
        os << nt.first << " " << nt.second << " " << c << "\n";
    }
}

LimitColoring read_limit(Reader& r) {
    LimitColoring L;
    r.next_line();
    r.expect("k");
    L.k = static_cast<Color>(r.nat());
    L.limit = read_word(r, "limit");
    r.next_line();
    r.expect("stab");
    r.expect("prefix");
    const std::uint64_t np = r.nat();
    for (std::uint64_t i = 0; i < np; ++i) L.stab_prefix.push_back(r.nat());
    r.next_line();
    r.expect("stab");
    r.expect("tail");
    L.stab_coef = r.nat();
    L.stab_off = r.nat();
    r.next_line();
    r.expect("overrides");
    const std::uint64_t no = r.nat();
    for (std::uint64_t i = 0; i < no; ++i) {
        r.next_line();
        const std::uint64_t n = r.nat();
        const std::uint64_t t = r.nat();
        L.overrides[{n, t}] = static_cast<Color>(r.nat());
    }
    return L;
}

void write_tree_coloring(std::ostream& os, const ProblemId& pid, const TreeColoringInstance& tc) {
    if (tc.is_pattern()) {
        os << "coloring pattern\n";
        write_pattern(os, tc.pattern());
    } else {
        const auto& pf = std::get<ProgramColoring>(tc.f);
        os << "coloring program\n";
        os << "palette " << pf.declared_palette << "\n";
        if (const auto* cp = std::get_if<ProgramColoring::ConstantProg>(&pf.prog)) {
            os << "program constant " << cp->c << "\n";
        } else if (const auto* rm = std::get_if<ProgramColoring::RMembershipProg>(&pf.prog)) {
            os << "program rmembership\n";
            write_omega_tree(os, *rm->tree);
        } else {
            os << "program pattern\n";
            write_pattern(os, std::get<ProgramColoring::PatternProg>(pf.prog).f);
        }
    }
    if (tc.declared_bound) os << "bound " << *tc.declared_bound << "\n";
    if (pid.kind == ProblemKind::TT1Ext) os << "sigma " << quoted(tc.sigma) << "\n";
}

TreeColoringInstance read_tree_coloring(Reader& r, const ProblemId& pid) {
    TreeColoringInstance tc;
    r.next_line();
    r.expect("coloring");
    const std::string kind = r.word();
    if (kind == "pattern") {
        tc.f = read_pattern(r);
    } else if (kind == "program") {
        ProgramColoring pf;
        r.next_line();
        r.expect("palette");
        pf.declared_palette = static_cast<Color>(r.nat());
        r.next_line();
        r.expect("program");
        const std::string pk = r.word();
        if (pk == "constant") {
            pf.prog = ProgramColoring::ConstantProg{static_cast<Color>(r.nat())};
        } else if (pk == "rmembership") {
            pf.prog = ProgramColoring::RMembershipProg{
                std::make_shared<FiniteOmegaTree>(read_omega_tree(r))};
        } else if (pk == "pattern") {
            pf.prog = ProgramColoring::PatternProg{read_pattern(r)};
        } else {
            throw parse_error("unknown program kind: " + pk);
        }
        tc.f = std::move(pf);
    } else {
        throw parse_error("unknown coloring kind: " + kind);
    }
    // Optional trailing lines.
    while (r.next_line()) {
        const std::string tag = r.word();
        if (tag == "bound") {
            tc.declared_bound = static_cast<unsigned>(r.nat());
        } else if (tag == "sigma") {
            tc.sigma = r.binstr();
        } else {
            throw parse_error("unexpected line: " + r.line());
        }
    }
    if (pid.bound == BoundMode::Declared && !tc.declared_bound) {
        throw parse_error("declared-bound problem without a bound line");
    }
    return tc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

std::string serialize_instance(const Instance& inst) {
    std::ostringstream os;
    os << "rakelab instance v1\n";
    os << "problem " << inst.pid.str() << "\n";
    if (const auto* tc = std::get_if<TreeColoringInstance>(&inst.payload)) {
        write_tree_coloring(os, inst.pid, *tc);
    } else if (const auto* oi = std::get_if<OmegaInstance>(&inst.payload)) {
        write_word(os, "word", oi->g);
        if (oi->declared_bound) os << "bound " << *oi->declared_bound << "\n";
    } else if (const auto* e = std::get_if<CoEnum>(&inst.payload)) {
        write_coenum(os, *e);
    } else if (const auto* L = std::get_if<LimitColoring>(&inst.payload)) {
        write_limit(os, *L);
    } else if (const auto* T = std::get_if<FiniteOmegaTree>(&inst.payload)) {
        write_omega_tree(os, *T);
    } else {
        const auto& fo = std::get<FOInstance>(inst.payload);
        os << "delta " << fo.delta.name() << "\n";
        os << "gamma " << fo.gamma.name() << "\n";
        os << "inner\n";
        os << serialize_instance(*fo.A);
    }
    return os.str();
}

Instance parse_instance(const std::string& text) {
    Reader r(text);
    if (!r.next_line()) throw parse_error("empty instance file");
    r.expect("rakelab");
    r.expect("instance");
    r.expect("v1");
    r.next_line();
    r.expect("problem");
    const ProblemId pid = ProblemId::parse(r.word());

    Instance inst;
    inst.pid = pid;
    switch (pid.kind) {
        case ProblemKind::TT1:
        case ProblemKind::TT1Ext:
        case ProblemKind::V0:
        case ProblemKind::V1:
        case ProblemKind::V2:
        case ProblemKind::V3:
        case ProblemKind::V4:
            inst.payload = read_tree_coloring(r, pid);
            break;
        case ProblemKind::RT1:
        case ProblemKind::IsFinite: {
            OmegaInstance oi;
            oi.g = read_word(r, "word");
            while (r.next_line()) {
                r.expect("bound");
                oi.declared_bound = static_cast<unsigned>(r.nat());
            }
            if (pid.bound == BoundMode::Declared && !oi.declared_bound) {
                throw parse_error("declared-bound problem without a bound line");
            }
            inst.payload = std::move(oi);
            break;
        }
        case ProblemKind::CN:
        case ProblemKind::TCN:
        case ProblemKind::STCN:
            inst.payload = read_coenum(r);
            break;
        case ProblemKind::D2:
            inst.payload = read_limit(r);
            break;
        case ProblemKind::WF:
            inst.payload = read_omega_tree(r);
            break;
        case ProblemKind::FO: {
            FOInstance fo;
            r.next_line();
            r.expect("delta");
            fo.delta = Functional::by_name(r.word());
            r.next_line();
            r.expect("gamma");
            fo.gamma = Functional::by_name(r.word());
            r.next_line();
            r.expect("inner");
            // Everything after the "inner" marker is a nested instance file.
            const std::string marker = "\ninner\n";
            const auto at = text.find(marker);
            if (at == std::string::npos) throw parse_error("missing inner instance");
            fo.A = std::make_shared<Instance>(parse_instance(text.substr(at + marker.size())));
            inst.payload = std::move(fo);
            break;
        }
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

std::string serialize_cert(const ProblemId& pid, const SolutionCert& cert) {
    std::ostringstream os;
    os << "rakelab certificate v1\n";
    os << "problem " << pid.str() << "\n";
    if (const auto* t = std::get_if<TT1Cert>(&cert.body)) {
        os << "cert tree\n";
        os << "color " << t->color << "\n";
        os << "prefix " << treeset_to_text(t->prefix) << "\n";
        os << "evidence " << t->evidence.size() << "\n";
        for (const auto& [leaf, witness] : t->evidence) {
            os << quoted(leaf) << " " << quoted(witness) << "\n";
        }
    } else if (const auto* w = std::get_if<WordCert>(&cert.body)) {
        os << "cert word\n";
        write_word(os, "word", w->word);
    } else if (const auto* n = std::get_if<NatCert>(&cert.body)) {
        os << "cert nat " << n->value << "\n";
    } else {
        const auto& p = std::get<PairCert>(cert.body);
        os << "cert pair " << p.i << " " << quoted(p.sigma) << "\n";
    }
    return os.str();
}

SolutionCert parse_cert(const std::string& text, ProblemId* pid_out) {
    Reader r(text);
    if (!r.next_line()) throw parse_error("empty certificate file");
    r.expect("rakelab");
    r.expect("certificate");
    r.expect("v1");
    r.next_line();
    r.expect("problem");
    const ProblemId pid = ProblemId::parse(r.word());
    if (pid_out) *pid_out = pid;

    r.next_line();
    r.expect("cert");
    const std::string kind = r.word();
    if (kind == "tree") {
        TT1Cert t;
        r.next_line();
        r.expect("color");
        t.color = static_cast<Color>(r.nat());
        r.next_line();
        r.expect("prefix");
        t.prefix = treeset_from_text(r.rest());
        r.next_line();
        r.expect("evidence");
        const std::uint64_t n = r.nat();
        for (std::uint64_t i = 0; i < n; ++i) {
            r.next_line();
            const BinStr leaf = r.binstr();
            t.evidence.emplace_back(leaf, r.binstr());
        }
        return {std::move(t)};
    }
    if (kind == "word") return {WordCert{read_word(r, "word")}};
    if (kind == "nat") return {NatCert{r.integer()}};
    if (kind == "pair") {
        PairCert p;
        p.i = static_cast<Color>(r.nat());
        p.sigma = r.binstr();
        return {std::move(p)};
    }
    throw parse_error("unknown certificate kind: " + kind);
}

// ---------------------------------------------------------------------------
// Rakes and transcripts
// ---------------------------------------------------------------------------

std::string serialize_rake(const FiniteRake& rake) {
    std::ostringstream os;
    os << "rakelab rake v1\n";
    os << "colors " << rake.C.size();
    for (Color c : rake.C) os << " " << c;
    os << "\nblocks " << rake.blocks.size() << "\n";
    for (std::size_t b = 0; b < rake.blocks.size(); ++b) {
        os << "block " << b << " chains " << rake.blocks[b].size() << "\n";
        for (const auto& chain : rake.blocks[b]) {
            os << "chain";
            for (const BinStr& s : chain) os << " " << quoted(s);
            os << "\n";
        }
    }
    return os.str();
}

FiniteRake parse_rake(const std::string& text) {
    Reader r(text);
    if (!r.next_line()) throw parse_error("empty rake file");
    r.expect("rakelab");
    r.expect("rake");
    r.expect("v1");
    FiniteRake rake;
    r.next_line();
    r.expect("colors");
    const std::uint64_t nc = r.nat();
    for (std::uint64_t i = 0; i < nc; ++i) rake.C.push_back(static_cast<Color>(r.nat()));
    r.next_line();
    r.expect("blocks");
    const std::uint64_t nb = r.nat();
    for (std::uint64_t b = 0; b < nb; ++b) {
        r.next_line();
        r.expect("block");
        r.nat();
        r.expect("chains");
        const std::uint64_t cn = r.nat();
        std::vector<std::vector<BinStr>> block;
        for (std::uint64_t q = 0; q < cn; ++q) {
            r.next_line();
            r.expect("chain");
            std::vector<BinStr> chain;
            while (!r.at_end()) chain.push_back(r.binstr());
            if (chain.size() != nc) throw parse_error("chain length does not match color count");
            block.push_back(std::move(chain));
        }
        rake.blocks.push_back(std::move(block));
    }
    return rake;
}

std::string serialize_transcript(const AdversaryTranscript& t) {
    std::ostringstream os;
    os << "rakelab transcript v1\n";
    os << "k " << t.k << " j " << t.j << "\n";
    switch (t.outcome) {
        case AdversaryTranscript::Outcome::Falsified:
            os << "verdict FALSIFIED\n";
            break;
        case AdversaryTranscript::Outcome::FalsifiedDomain:
            os << "verdict FALSIFIED (target instance leaves its palette)\n";
            break;
        case AdversaryTranscript::Outcome::Inconclusive:
            os << "verdict INCONCLUSIVE\n";
            break;
    }
    os << "note " << t.note << "\n";
    os << "stages " << t.stages.size() << "\n";
    for (std::size_t c = 0; c < t.stages.size(); ++c) {
        const auto& st = t.stages[c];
        os << "stage " << c << "\n";
        os << "  alpha " << st.alpha.size();
        for (Color v : st.alpha) os << " " << v;
        os << "\n  sigma " << quoted(st.sigma) << "\n";
        os << "  m " << st.m << " n " << st.n << " x " << st.x << "\n";
        os << "  S " << treeset_to_text(st.S) << "\n";
        os << "  lambda " << quoted(st.lambda) << "\n";
        if (st.excluded) {
            os << "  excluded above " << quoted(st.sigma_next) << "\n";
        } else {
            os << "  defeat stage\n";
        }
    }
    os << "final alpha " << t.final_alpha.size();
    for (Color v : t.final_alpha) os << " " << v;
    os << "\n";
    write_word(os, "g", t.g);
    return os.str();
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

std::string treeset_to_text(const TreeSet& s) {
    std::string out = "[";
    bool first = true;
    for (const BinStr& x : s.elems()) {
        if (!first) out += ", ";
        out += quoted(x);
        first = false;
    }
    return out + "]";
}

TreeSet treeset_from_text(const std::string& text) {
    std::vector<BinStr> elems;
    std::string cur;
    bool in_quote = false;
    bool have = false;
    for (char ch : text) {
        if (ch == '"') {
            if (in_quote) {
                elems.emplace_back(cur);
                cur.clear();
                have = true;
            }
            in_quote = !in_quote;
        } else if (in_quote) {
            cur.push_back(ch);
        }
    }
    if (in_quote) throw parse_error("unterminated quote in tree set");
    (void)have;
    return TreeSet(std::move(elems));
}

std::string describe_cert(const SolutionCert& cert) {
    if (const auto* t = std::get_if<TT1Cert>(&cert.body)) {
        return "tree cert color " + std::to_string(t->color) + " prefix " +
               treeset_to_text(t->prefix);
    }
    if (const auto* w = std::get_if<WordCert>(&cert.body)) {
        std::string out = "word cert prefix[";
        for (Color c : w->word.prefix) out += std::to_string(c);
        out += "] period[";
        for (Color c : w->word.period) out += std::to_string(c);
        return out + "]";
    }
    if (const auto* n = std::get_if<NatCert>(&cert.body)) {
        return "nat cert " + std::to_string(n->value);
    }
    const auto& p = std::get<PairCert>(cert.body);
    return "pair cert <" + std::to_string(p.i) + ", \"" + p.sigma.str() + "\">";
}

std::string describe_instance(const Instance& inst) { return inst.pid.str() + " instance"; }

}  // namespace rakelab
