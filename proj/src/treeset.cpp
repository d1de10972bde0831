#include "rakelab/treeset.hpp"

#include <algorithm>

namespace rakelab {

TreeSet::TreeSet(std::vector<BinStr> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

TreeSet TreeSet::of(std::initializer_list<const char*> words) {
    std::vector<BinStr> v;
    v.reserve(words.size());
    for (const char* w : words) v.emplace_back(w);
    return TreeSet(std::move(v));
}

bool TreeSet::contains(const BinStr& s) const noexcept {
    return std::binary_search(elems_.begin(), elems_.end(), s);
}

TreeSet TreeSet::with(const BinStr& s) const {
    auto v = elems_;
    v.push_back(s);
    return TreeSet(std::move(v));
}

bool TreeSet::subset_of(const TreeSet& other) const noexcept {
    return std::all_of(elems_.begin(), elems_.end(),
                       [&](const BinStr& s) { return other.contains(s); });
}

unsigned TreeSet::rank(const BinStr& s) const {
    if (!contains(s)) throw member_not_found("rank: string not in set: \"" + s.str() + "\"");
    unsigned r = 0;
    for (const BinStr& t : elems_) {
        if (t.proper_prefix_of(s)) ++r;
    }
    return r;
}

TreeSet TreeSet::restrict_rank(unsigned n) const {
    std::vector<BinStr> out;
    for (const BinStr& s : elems_) {
        if (rank(s) < n) out.push_back(s);
    }
    return TreeSet(std::move(out));
}

unsigned TreeSet::height() const {
    unsigned h = 0;
    for (const BinStr& s : elems_) h = std::max(h, rank(s) + 1);
    return h;
}

TreeSet TreeSet::successors(const BinStr& s) const {
    const unsigned r = rank(s);
    std::vector<BinStr> out;
    for (const BinStr& t : elems_) {
        if (s.proper_prefix_of(t) && rank(t) == r + 1) out.push_back(t);
    }
    return TreeSet(std::move(out));
}

TreeSet TreeSet::leaves() const {
    std::vector<BinStr> out;
    for (const BinStr& s : elems_) {
        if (successors(s).empty()) out.push_back(s);
    }
    return TreeSet(std::move(out));
}

TreeSet TreeSet::roots() const {
    std::vector<BinStr> out;
    for (const BinStr& s : elems_) {
        if (rank(s) == 0) out.push_back(s);
    }
    return TreeSet(std::move(out));
}

bool TreeSet::is_symmetric() const {
    for (const BinStr& s : elems_) {
        for (const BinStr& t : elems_) {
            if (rank(s) == rank(t) && successors(s).size() != successors(t).size()) return false;
        }
    }
    return true;
}

std::optional<unsigned> TreeSet::iso_to_full() const {
    if (empty()) return 0U;
    const unsigned n = height();
    if (!rooted()) return std::nullopt;
    for (const BinStr& s : elems_) {
        const std::size_t succ = successors(s).size();
        if (rank(s) == n - 1) {
            if (succ != 0) return std::nullopt;
        } else if (succ != 2) {
            return std::nullopt;
        }
    }
    if (size() != (std::size_t{1} << n) - 1) return std::nullopt;
    return n;
}

bool TreeSet::is_antichain() const {
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        for (std::size_t j = i + 1; j < elems_.size(); ++j) {
            if (elems_[i].comparable_with(elems_[j])) return false;
        }
    }
    return true;
}

bool operator<(const TreeSet& a, const TreeSet& b) noexcept {
    return std::lexicographical_compare(a.elems_.begin(), a.elems_.end(), b.elems_.begin(),
                                        b.elems_.end());
}

namespace {

void check_selection_preconditions(const std::vector<TreeSet>& families) {
    const std::size_t n = families.size();
    if (n == 0) throw precondition_violated("incomparable_selection: no families");
    for (std::size_t i = 0; i < n; ++i) {
        if (!families[i].is_antichain()) {
            throw precondition_violated("incomparable_selection: family is not an antichain");
        }
        if (families[i].size() < n) {
            throw precondition_violated("incomparable_selection: family smaller than n");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            for (const BinStr& s : families[i].elems()) {
                if (families[j].contains(s)) {
                    throw precondition_violated("incomparable_selection: families not disjoint");
                }
            }
        }
    }
}

// Recursive step on (family index, remaining elements) pairs.
void select_rec(std::vector<std::pair<std::size_t, std::vector<BinStr>>>& live,
                std::vector<std::pair<std::size_t, BinStr>>& chosen) {
    if (live.empty()) return;

    // Union of live families, for ranks.
    std::vector<BinStr> all;
    for (const auto& [idx, elems] : live) all.insert(all.end(), elems.begin(), elems.end());
    const TreeSet unionset{all};

    // Maximal-rank element; ties broken length-lex least (elements of the
    // union are scanned in length-lex order, so the first maximum wins).
    BinStr best;
    unsigned best_rank = 0;
    bool have = false;
    for (const BinStr& s : unionset.elems()) {
        const unsigned r = unionset.rank(s);
        if (!have || r > best_rank) {
            best = s;
            best_rank = r;
            have = true;
        }
    }

    std::size_t owner = 0;
    for (std::size_t i = 0; i < live.size(); ++i) {
        if (std::find(live[i].second.begin(), live[i].second.end(), best) !=
            live[i].second.end()) {
            owner = i;
            break;
        }
    }
    chosen.emplace_back(live[owner].first, best);

    std::vector<std::pair<std::size_t, std::vector<BinStr>>> next;
    for (std::size_t i = 0; i < live.size(); ++i) {
        if (i == owner) continue;
        std::vector<BinStr> kept;
        for (const BinStr& s : live[i].second) {
            if (s.incomparable_with(best)) kept.push_back(s);
        }
        next.emplace_back(live[i].first, std::move(kept));
    }
    select_rec(next, chosen);
}

}  // namespace

std::vector<BinStr> incomparable_selection(const std::vector<TreeSet>& families) {
    check_selection_preconditions(families);
    std::vector<std::pair<std::size_t, std::vector<BinStr>>> live;
    for (std::size_t i = 0; i < families.size(); ++i) {
        live.emplace_back(i, families[i].elems());
    }
    std::vector<std::pair<std::size_t, BinStr>> chosen;
    select_rec(live, chosen);

    std::vector<BinStr> out(families.size());
    for (const auto& [idx, s] : chosen) out[idx] = s;
    return out;
}

namespace {

bool exists_rec(const std::vector<TreeSet>& families, std::size_t i, std::vector<BinStr>& acc) {
    if (i == families.size()) return true;
    for (const BinStr& cand : families[i].elems()) {
        bool ok = true;
        for (const BinStr& prev : acc) {
            if (!cand.incomparable_with(prev)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        acc.push_back(cand);
        if (exists_rec(families, i + 1, acc)) return true;
        acc.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<BinStr>> incomparable_selection_exists(
    const std::vector<TreeSet>& families) {
    std::vector<BinStr> acc;
    if (exists_rec(families, 0, acc)) return acc;
    return std::nullopt;
}

}  // namespace rakelab
