#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uniconc/polynomial.hpp"

namespace uniconc {

/// Index of a letter in its monoid's alphabet.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

inline constexpr std::size_t kMaxAlphabet = 20;

/// A set of pairwise independent letters, stored as a bitset over the alphabet order.
struct Clique {
    std::uint32_t bits = 0;

    static Clique of(Letter a) { return Clique{std::uint32_t{1} << a}; }

    bool empty() const { return bits == 0; }
    int size() const { return std::popcount(bits); }
    bool contains(Letter a) const { return (bits >> a) & 1U; }
    bool subset_of(Clique other) const { return (bits & ~other.bits) == 0; }
    Clique with(Letter a) const { return Clique{bits | (std::uint32_t{1} << a)}; }

    /// Letters in increasing index order.
    Word letters() const;

    friend bool operator==(Clique, Clique) = default;
};

/// Canonical clique order: by size, then lexicographically on the sorted letter indices.
bool canonical_less(Clique a, Clique b);

/// Cartier-Foata normal form: non-empty cliques c1 -> c2 -> ... -> ch.
struct NormalForm {
    std::vector<Clique> cliques;

    std::size_t height() const { return cliques.size(); }
    std::size_t length() const;

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
    friend bool operator<(const NormalForm& a, const NormalForm& b) {
        return std::lexicographical_compare(a.cliques.begin(), a.cliques.end(), b.cliques.begin(),
                                            b.cliques.end(),
                                            [](Clique x, Clique y) { return x.bits < y.bits; });
    }
};

/// Alphabet plus an irreflexive symmetric independence relation.
class TraceMonoid {
public:
    /// Validates names and pairs; symmetrizes and deduplicates the relation.
    /// Throws EmptyAlphabet, AlphabetTooLarge, DuplicateLetter, UnknownLetterInPair, ReflexivePair.
    static TraceMonoid create(std::vector<std::string> alphabet,
                              const std::vector<std::pair<std::string, std::string>>& independent_pairs);

    /// Free monoid on the given letters.
    static TraceMonoid free(std::vector<std::string> alphabet) { return create(std::move(alphabet), {}); }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& alphabet() const { return names_; }
    const std::string& name(Letter a) const { return names_[a]; }

    /// Throws UnknownLetter.
    Letter letter(std::string_view name) const;
    bool has_letter(std::string_view name) const;

    bool independent(Letter a, Letter b) const { return (indep_[a] >> b) & 1U; }
    bool dependent(Letter a, Letter b) const { return !independent(a, b); }
    /// Letters dependent on a (a itself included).
    std::uint32_t dependence_mask(Letter a) const { return full_mask() & ~indep_[a]; }
    std::uint32_t full_mask() const { return names_.size() == 32 ? ~0U : ((1U << names_.size()) - 1U); }

    /// All unordered independent pairs (a < b).
    std::vector<std::pair<Letter, Letter>> independent_pairs() const;

    /// Normality relation c -> d: every letter of d depends on some letter of c.
    bool normal_successor(Clique c, Clique d) const;

    /// All cliques including the empty one, in canonical order.
    const std::vector<Clique>& cliques() const { return cliques_; }
    /// Position of a clique in cliques().
    std::size_t clique_index(Clique c) const;

    bool is_clique(Clique c) const;

    /// Submonoid generated by the letters in `keep`, with induced independence.
    /// Unlike create(), the result may have an empty alphabet.
    TraceMonoid submonoid(std::uint32_t keep) const;

    /// "a b c" or "abc" (single-character names only).
    Word parse_word(std::string_view text) const;
    std::string format_word(const Word& w, std::string_view sep = "") const;
    std::string format_clique(Clique c) const;

    friend bool operator==(const TraceMonoid& a, const TraceMonoid& b) {
        return a.names_ == b.names_ && a.indep_ == b.indep_;
    }

private:
    TraceMonoid() = default;
    void build_cliques();

    std::vector<std::string> names_;
    std::vector<std::uint32_t> indep_;
    std::vector<Clique> cliques_;
};

/// All independent subsets of the alphabet (empty clique first), canonical order.
std::vector<Clique> enumerate_cliques(const TraceMonoid& m);

/// Heap-insertion Cartier-Foata normal form. Throws UnknownLetter on out-of-range letters.
NormalForm normal_form(const TraceMonoid& m, const Word& w);

bool traces_equal(const TraceMonoid& m, const Word& w1, const Word& w2);

/// mu(z) = sum over cliques of (-1)^|c| z^|c|.
IntPoly mobius_polynomial(const TraceMonoid& m);

/// True iff the dependence graph (Sigma, D) is connected.
bool is_monoid_irreducible(const TraceMonoid& m);

/// Connected components of (Sigma, D) as letter masks, ordered by smallest letter.
std::vector<std::uint32_t> dependence_components(const TraceMonoid& m);

/// Concatenation of the cliques' letters, each clique in letter order.
Word flatten(const NormalForm& nf);

}  // namespace uniconc
