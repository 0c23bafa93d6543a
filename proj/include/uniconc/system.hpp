#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "uniconc/trace_monoid.hpp"

namespace uniconc {

using StateId = std::int32_t;
/// The absorbing sink state (forbidden action).
inline constexpr StateId kSink = -1;

struct ActionEntry {
    std::string from;
    std::string letter;
    std::string to;  ///< "BOT" for the sink
};

/// A trace monoid acting on a finite state set plus an absorbing sink.
class ConcurrentSystem {
public:
    /// Builds and validates the commutation diamonds of every independent pair at every state.
    /// Unspecified entries default to the sink. The base state defaults to the first state.
    /// Throws EmptyStateSet, DuplicateState, UnknownState, UnknownLetter, DiamondViolation.
    static ConcurrentSystem create(TraceMonoid monoid, std::vector<std::string> states,
                                   const std::vector<ActionEntry>& action,
                                   std::optional<std::string> base_state = std::nullopt);

    /// Index-based constructor; `table[state * |Sigma| + letter]` is a state id or kSink.
    static ConcurrentSystem from_table(TraceMonoid monoid, std::vector<std::string> states,
                                       std::vector<StateId> table, StateId base_state = 0);

    /// One state "*" with total action.
    static ConcurrentSystem canonical(const TraceMonoid& monoid);

    const TraceMonoid& monoid() const { return monoid_; }
    std::size_t state_count() const { return states_.size(); }
    std::size_t letter_count() const { return monoid_.size(); }
    const std::vector<std::string>& states() const { return states_; }
    const std::string& state_name(StateId s) const { return states_.at(static_cast<std::size_t>(s)); }
    StateId base_state() const { return base_; }

    /// Throws UnknownState.
    StateId state(std::string_view name) const;

    StateId step(StateId s, Letter a) const {
        return s == kSink ? kSink : table_[static_cast<std::size_t>(s) * monoid_.size() + a];
    }
    StateId act(StateId s, const Word& w) const;
    StateId act(StateId s, Clique c) const;

    const std::vector<StateId>& table() const { return table_; }

    friend bool operator==(const ConcurrentSystem& a, const ConcurrentSystem& b) {
        return a.monoid_ == b.monoid_ && a.states_ == b.states_ && a.table_ == b.table_ && a.base_ == b.base_;
    }

private:
    ConcurrentSystem(TraceMonoid monoid) : monoid_(std::move(monoid)) {}
    void check_diamonds() const;

    TraceMonoid monoid_;
    std::vector<std::string> states_;
    std::vector<StateId> table_;
    StateId base_ = 0;
};

/// Free function form of the action fold; UnknownState on bad ids.
StateId act(const ConcurrentSystem& sys, StateId s, const Word& w);

/// Non-empty cliques enabled at s, canonical order.
std::vector<Clique> enabled_cliques(const ConcurrentSystem& sys, StateId s);
/// Letters enabled at s as a mask.
std::uint32_t enabled_letters(const ConcurrentSystem& sys, StateId s);

struct SystemClassification {
    bool trivial = false;
    bool accessible = false;
    bool alive = false;
    bool monoid_irreducible = false;
    bool irreducible = false;
    /// First (from, to) pair with `to` unreachable from `from`.
    std::optional<std::pair<StateId, StateId>> unreachable;
    /// First (state, letter) pair whose letter can never fire from the state.
    std::optional<std::pair<StateId, Letter>> dead;
    /// Letter masks of the dependence-graph components when the monoid splits.
    std::vector<std::uint32_t> monoid_components;
};

SystemClassification classify_system(const ConcurrentSystem& sys);

/// reach[a][b]: b reachable from a by some execution (reflexive).
std::vector<std::vector<bool>> state_reachability(const ConcurrentSystem& sys);

/// Same states and action over Sigma minus `a`, with the induced independence.
ConcurrentSystem restrict(const ConcurrentSystem& sys, Letter a);
/// Restriction to the letters in `keep`.
ConcurrentSystem restrict_to(const ConcurrentSystem& sys, std::uint32_t keep);

struct LinkingExecution {
    Word word;
    /// Positions j1 < ... < jq of the dependence chain inside `word`.
    std::vector<std::size_t> chain;
};

/// Checks the three linking conditions (and rootedness at `root` when given).
bool is_linking_execution(const ConcurrentSystem& sys, StateId from, const LinkingExecution& x,
                          std::optional<Letter> root);

/// a-rooted linking execution from `from`: a covering walk of the dependence graph starting at
/// `root`, each walk letter preceded by a shortest enabling execution. nullopt when none exists.
/// Throws NotAccessible.
std::optional<LinkingExecution> find_linking_execution(const ConcurrentSystem& sys, StateId from, Letter root);

}  // namespace uniconc
