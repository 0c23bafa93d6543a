#include "uniconc/trace_monoid.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "uniconc/error.hpp"

namespace uniconc {

Word Clique::letters() const {
    Word out;
    for (std::uint32_t rest = bits; rest != 0; rest &= rest - 1)
        out.push_back(static_cast<Letter>(std::countr_zero(rest)));
    return out;
}

bool canonical_less(Clique a, Clique b) {
    if (a.size() != b.size()) return a.size() < b.size();
    // Lexicographic on sorted indices: the lowest differing letter decides,
    // and whichever clique holds it comes first.
    const std::uint32_t diff = a.bits ^ b.bits;
    if (diff == 0) return false;
    const std::uint32_t lowest = diff & (~diff + 1);
    return (a.bits & lowest) != 0;
}

std::size_t NormalForm::length() const {
    std::size_t n = 0;
    for (const auto c : cliques) n += static_cast<std::size_t>(c.size());
    return n;
}

TraceMonoid TraceMonoid::create(std::vector<std::string> alphabet,
                                const std::vector<std::pair<std::string, std::string>>& independent_pairs) {
    if (alphabet.empty()) throw Error(ErrorKind::EmptyAlphabet, "alphabet must contain at least one letter");
    if (alphabet.size() > kMaxAlphabet)
        throw Error(ErrorKind::AlphabetTooLarge,
                    std::to_string(alphabet.size()) + " letters exceed the cap of " + std::to_string(kMaxAlphabet));
    std::unordered_set<std::string> seen;
    for (const auto& n : alphabet) {
        if (n.empty()) throw Error(ErrorKind::SyntaxError, "empty letter name");
        if (!seen.insert(n).second) throw Error(ErrorKind::DuplicateLetter, n);
    }
    TraceMonoid m;
    m.names_ = std::move(alphabet);
    m.indep_.assign(m.names_.size(), 0);
    for (const auto& [x, y] : independent_pairs) {
        if (!m.has_letter(x)) throw Error(ErrorKind::UnknownLetterInPair, x);
        if (!m.has_letter(y)) throw Error(ErrorKind::UnknownLetterInPair, y);
        const Letter a = m.letter(x);
        const Letter b = m.letter(y);
        if (a == b) throw Error(ErrorKind::ReflexivePair, "(" + x + "," + y + ")");
        m.indep_[a] |= 1U << b;
        m.indep_[b] |= 1U << a;
    }
    m.build_cliques();
    return m;
}

Letter TraceMonoid::letter(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<Letter>(i);
    throw Error(ErrorKind::UnknownLetter, std::string(name));
}

bool TraceMonoid::has_letter(std::string_view name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::vector<std::pair<Letter, Letter>> TraceMonoid::independent_pairs() const {
    std::vector<std::pair<Letter, Letter>> out;
    for (std::size_t a = 0; a < names_.size(); ++a)
        for (std::size_t b = a + 1; b < names_.size(); ++b)
            if (independent(static_cast<Letter>(a), static_cast<Letter>(b)))
                out.emplace_back(static_cast<Letter>(a), static_cast<Letter>(b));
    return out;
}

bool TraceMonoid::normal_successor(Clique c, Clique d) const {
    std::uint32_t reach = 0;
    for (std::uint32_t rest = c.bits; rest != 0; rest &= rest - 1)
        reach |= dependence_mask(static_cast<Letter>(std::countr_zero(rest)));
    return d.subset_of(Clique{reach});
}

std::size_t TraceMonoid::clique_index(Clique c) const {
    const auto it = std::lower_bound(cliques_.begin(), cliques_.end(), c, canonical_less);
    if (it == cliques_.end() || *it != c) throw Error(ErrorKind::UnknownLetter, "not a clique: " + format_clique(c));
    return static_cast<std::size_t>(it - cliques_.begin());
}

bool TraceMonoid::is_clique(Clique c) const {
    if ((c.bits & ~full_mask()) != 0) return false;
    for (std::uint32_t rest = c.bits; rest != 0; rest &= rest - 1) {
        const auto a = static_cast<Letter>(std::countr_zero(rest));
        if ((c.bits & ~(1U << a) & ~indep_[a]) != 0) return false;
    }
    return true;
}

void TraceMonoid::build_cliques() {
    cliques_.clear();
    // Extend each clique only with letters above its largest member.
    std::vector<Clique> frontier{Clique{}};
    cliques_.push_back(Clique{});
    while (!frontier.empty()) {
        std::vector<Clique> next;
        for (const Clique c : frontier) {
            const int start = c.empty() ? 0 : 32 - std::countl_zero(c.bits);
            for (int a = start; a < static_cast<int>(names_.size()); ++a) {
                if ((c.bits & ~indep_[a]) != 0) continue;
                next.push_back(c.with(static_cast<Letter>(a)));
            }
        }
        cliques_.insert(cliques_.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(cliques_.begin(), cliques_.end(), canonical_less);
}

TraceMonoid TraceMonoid::submonoid(std::uint32_t keep) const {
    TraceMonoid m;
    std::vector<int> remap(names_.size(), -1);
    for (std::size_t a = 0; a < names_.size(); ++a) {
        if ((keep >> a) & 1U) {
            remap[a] = static_cast<int>(m.names_.size());
            m.names_.push_back(names_[a]);
        }
    }
    m.indep_.assign(m.names_.size(), 0);
    for (std::size_t a = 0; a < names_.size(); ++a) {
        if (remap[a] < 0) continue;
        for (std::size_t b = 0; b < names_.size(); ++b)
            if (remap[b] >= 0 && independent(static_cast<Letter>(a), static_cast<Letter>(b)))
                m.indep_[remap[a]] |= 1U << remap[b];
    }
    m.build_cliques();
    return m;
}

Word TraceMonoid::parse_word(std::string_view text) const {
    Word out;
    const bool spaced = text.find_first_of(" \t,") != std::string_view::npos;
    if (spaced) {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
            std::size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ',') ++j;
            if (j > i) out.push_back(letter(text.substr(i, j - i)));
            i = j;
        }
    } else {
        for (std::size_t i = 0; i < text.size(); ++i) out.push_back(letter(text.substr(i, 1)));
    }
    return out;
}

std::string TraceMonoid::format_word(const Word& w, std::string_view sep) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += sep;
        out += names_.at(w[i]);
    }
    return out;
}

std::string TraceMonoid::format_clique(Clique c) const {
    if (c.empty()) return "eps";
    bool single = std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
    return format_word(c.letters(), single ? "" : ".");
}

std::vector<Clique> enumerate_cliques(const TraceMonoid& m) { return m.cliques(); }

NormalForm normal_form(const TraceMonoid& m, const Word& w) {
    NormalForm nf;
    for (const Letter x : w) {
        if (x >= m.size()) throw Error(ErrorKind::UnknownLetter, "letter index " + std::to_string(x));
        const std::uint32_t blockers = m.dependence_mask(x);
        // The letter falls right above the last clique holding something it depends on.
        std::size_t slot = 0;
        for (std::size_t j = nf.cliques.size(); j-- > 0;) {
            if ((nf.cliques[j].bits & blockers) != 0) {
                slot = j + 1;
                break;
            }
        }
        if (slot == nf.cliques.size()) nf.cliques.push_back(Clique::of(x));
        else nf.cliques[slot] = nf.cliques[slot].with(x);
    }
    return nf;
}

bool traces_equal(const TraceMonoid& m, const Word& w1, const Word& w2) {
    return normal_form(m, w1) == normal_form(m, w2);
}

IntPoly mobius_polynomial(const TraceMonoid& m) {
    std::vector<BigInt> coeffs(m.size() + 1);
    for (const Clique c : m.cliques()) coeffs[c.size()] += (c.size() % 2 == 0) ? 1 : -1;
    return IntPoly(std::move(coeffs));
}

std::vector<std::uint32_t> dependence_components(const TraceMonoid& m) {
    std::vector<std::uint32_t> out;
    std::uint32_t seen = 0;
    for (std::size_t a = 0; a < m.size(); ++a) {
        if ((seen >> a) & 1U) continue;
        std::uint32_t comp = 1U << a;
        std::uint32_t frontier = comp;
        while (frontier != 0) {
            const auto x = static_cast<Letter>(std::countr_zero(frontier));
            frontier &= frontier - 1;
            const std::uint32_t fresh = m.dependence_mask(x) & ~comp;
            comp |= fresh;
            frontier |= fresh;
        }
        seen |= comp;
        out.push_back(comp);
    }
    return out;
}

bool is_monoid_irreducible(const TraceMonoid& m) { return dependence_components(m).size() == 1; }

Word flatten(const NormalForm& nf) {
    Word out;
    for (const Clique c : nf.cliques) {
        const Word l = c.letters();
        out.insert(out.end(), l.begin(), l.end());
    }
    return out;
}

}  // namespace uniconc
