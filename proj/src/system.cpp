#include "uniconc/system.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "uniconc/error.hpp"

namespace uniconc {

namespace {

constexpr std::string_view kSinkName = "BOT";

}  // namespace

ConcurrentSystem ConcurrentSystem::create(TraceMonoid monoid, std::vector<std::string> states,
                                          const std::vector<ActionEntry>& action,
                                          std::optional<std::string> base_state) {
    if (states.empty()) throw Error(ErrorKind::EmptyStateSet, "at least one state is required");
    std::unordered_set<std::string> seen;
    for (const auto& s : states) {
        if (s == kSinkName) throw Error(ErrorKind::DuplicateState, "BOT is reserved for the sink");
        if (!seen.insert(s).second) throw Error(ErrorKind::DuplicateState, s);
    }
    ConcurrentSystem sys(std::move(monoid));
    sys.states_ = std::move(states);
    sys.table_.assign(sys.states_.size() * sys.monoid_.size(), kSink);
    for (const auto& entry : action) {
        const StateId from = sys.state(entry.from);
        const Letter a = sys.monoid_.letter(entry.letter);
        const StateId to = entry.to == kSinkName ? kSink : sys.state(entry.to);
        sys.table_[static_cast<std::size_t>(from) * sys.monoid_.size() + a] = to;
    }
    sys.base_ = base_state ? sys.state(*base_state) : 0;
    sys.check_diamonds();
    return sys;
}

ConcurrentSystem ConcurrentSystem::from_table(TraceMonoid monoid, std::vector<std::string> states,
                                              std::vector<StateId> table, StateId base_state) {
    if (states.empty()) throw Error(ErrorKind::EmptyStateSet, "at least one state is required");
    ConcurrentSystem sys(std::move(monoid));
    sys.states_ = std::move(states);
    if (table.size() != sys.states_.size() * sys.monoid_.size())
        throw Error(ErrorKind::UnknownState, "action table has the wrong shape");
    for (const StateId t : table)
        if (t != kSink && (t < 0 || static_cast<std::size_t>(t) >= sys.states_.size()))
            throw Error(ErrorKind::UnknownState, "state id " + std::to_string(t));
    if (base_state < 0 || static_cast<std::size_t>(base_state) >= sys.states_.size())
        throw Error(ErrorKind::UnknownState, "base state id " + std::to_string(base_state));
    sys.table_ = std::move(table);
    sys.base_ = base_state;
    sys.check_diamonds();
    return sys;
}

ConcurrentSystem ConcurrentSystem::canonical(const TraceMonoid& monoid) {
    std::vector<StateId> table(monoid.size(), 0);
    return from_table(monoid, {"*"}, std::move(table));
}

StateId ConcurrentSystem::state(std::string_view name) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == name) return static_cast<StateId>(i);
    throw Error(ErrorKind::UnknownState, std::string(name));
}

StateId ConcurrentSystem::act(StateId s, const Word& w) const {
    for (const Letter a : w) {
        if (s == kSink) return kSink;
        s = step(s, a);
    }
    return s;
}

StateId ConcurrentSystem::act(StateId s, Clique c) const {
    for (std::uint32_t rest = c.bits; rest != 0 && s != kSink; rest &= rest - 1)
        s = step(s, static_cast<Letter>(std::countr_zero(rest)));
    return s;
}

void ConcurrentSystem::check_diamonds() const {
    const auto pairs = monoid_.independent_pairs();
    for (std::size_t s = 0; s < states_.size(); ++s) {
        const auto alpha = static_cast<StateId>(s);
        for (const auto& [a, b] : pairs) {
            if (step(step(alpha, a), b) != step(step(alpha, b), a))
                throw Error(ErrorKind::DiamondViolation,
                            "(" + states_[s] + "," + monoid_.name(a) + "," + monoid_.name(b) + ")");
        }
    }
}

StateId act(const ConcurrentSystem& sys, StateId s, const Word& w) {
    if (s < 0 || static_cast<std::size_t>(s) >= sys.state_count())
        throw Error(ErrorKind::UnknownState, "state id " + std::to_string(s));
    for (const Letter a : w)
        if (a >= sys.letter_count()) throw Error(ErrorKind::UnknownLetter, "letter index " + std::to_string(a));
    return sys.act(s, w);
}

std::vector<Clique> enabled_cliques(const ConcurrentSystem& sys, StateId s) {
    if (s < 0 || static_cast<std::size_t>(s) >= sys.state_count())
        throw Error(ErrorKind::UnknownState, "state id " + std::to_string(s));
    std::vector<Clique> out;
    for (const Clique c : sys.monoid().cliques())
        if (!c.empty() && sys.act(s, c) != kSink) out.push_back(c);
    return out;
}

std::uint32_t enabled_letters(const ConcurrentSystem& sys, StateId s) {
    std::uint32_t mask = 0;
    for (std::size_t a = 0; a < sys.letter_count(); ++a)
        if (sys.step(s, static_cast<Letter>(a)) != kSink) mask |= 1U << a;
    return mask;
}

std::vector<std::vector<bool>> state_reachability(const ConcurrentSystem& sys) {
    const std::size_t n = sys.state_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::deque<StateId> queue{static_cast<StateId>(s)};
        reach[s][s] = true;
        while (!queue.empty()) {
            const StateId x = queue.front();
            queue.pop_front();
            for (std::size_t a = 0; a < sys.letter_count(); ++a) {
                const StateId y = sys.step(x, static_cast<Letter>(a));
                if (y != kSink && !reach[s][y]) {
                    reach[s][y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    return reach;
}

SystemClassification classify_system(const ConcurrentSystem& sys) {
    SystemClassification out;
    const std::size_t n = sys.state_count();
    out.trivial = true;
    for (std::size_t s = 0; s < n && out.trivial; ++s)
        if (enabled_letters(sys, static_cast<StateId>(s)) != 0) out.trivial = false;

    const auto reach = state_reachability(sys);
    out.accessible = true;
    for (std::size_t a = 0; a < n && out.accessible; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!reach[a][b]) {
                out.accessible = false;
                out.unreachable = std::make_pair(static_cast<StateId>(a), static_cast<StateId>(b));
                break;
            }

    out.alive = true;
    for (std::size_t s = 0; s < n && out.alive; ++s) {
        std::uint32_t fireable = 0;
        for (std::size_t t = 0; t < n; ++t)
            if (reach[s][t]) fireable |= enabled_letters(sys, static_cast<StateId>(t));
        for (std::size_t a = 0; a < sys.letter_count(); ++a)
            if (!((fireable >> a) & 1U)) {
                out.alive = false;
                out.dead = std::make_pair(static_cast<StateId>(s), static_cast<Letter>(a));
                break;
            }
    }

    out.monoid_components = dependence_components(sys.monoid());
    out.monoid_irreducible = out.monoid_components.size() == 1;
    out.irreducible = out.accessible && out.alive && out.monoid_irreducible;
    return out;
}

ConcurrentSystem restrict_to(const ConcurrentSystem& sys, std::uint32_t keep) {
    keep &= sys.monoid().full_mask();
    TraceMonoid sub = sys.monoid().submonoid(keep);
    std::vector<StateId> table;
    table.reserve(sys.state_count() * sub.size());
    for (std::size_t s = 0; s < sys.state_count(); ++s)
        for (std::size_t a = 0; a < sys.letter_count(); ++a)
            if ((keep >> a) & 1U) table.push_back(sys.step(static_cast<StateId>(s), static_cast<Letter>(a)));
    return ConcurrentSystem::from_table(std::move(sub), sys.states(), std::move(table), sys.base_state());
}

ConcurrentSystem restrict(const ConcurrentSystem& sys, Letter a) {
    if (a >= sys.letter_count()) throw Error(ErrorKind::UnknownLetter, "letter index " + std::to_string(a));
    return restrict_to(sys, sys.monoid().full_mask() & ~(1U << a));
}

bool is_linking_execution(const ConcurrentSystem& sys, StateId from, const LinkingExecution& x,
                          std::optional<Letter> root) {
    if (sys.act(from, x.word) == kSink) return false;
    if (x.chain.empty()) return false;
    std::uint32_t covered = 0;
    for (std::size_t k = 0; k < x.chain.size(); ++k) {
        if (x.chain[k] >= x.word.size()) return false;
        if (k > 0) {
            if (x.chain[k] <= x.chain[k - 1]) return false;
            if (sys.monoid().independent(x.word[x.chain[k - 1]], x.word[x.chain[k]])) return false;
        }
        covered |= 1U << x.word[x.chain[k]];
    }
    if (covered != sys.monoid().full_mask()) return false;
    return !root || x.word[x.chain.front()] == *root;
}

namespace {

// Depth-first walk over the dependence graph that revisits parents when backtracking,
// so consecutive letters are always dependent.
Word covering_walk(const TraceMonoid& m, Letter root) {
    Word walk{root};
    std::uint32_t visited = 1U << root;
    std::vector<Letter> stack{root};
    while (visited != m.full_mask() && !stack.empty()) {
        const Letter top = stack.back();
        const std::uint32_t fresh = m.dependence_mask(top) & ~visited;
        if (fresh != 0) {
            const auto next = static_cast<Letter>(std::countr_zero(fresh));
            visited |= 1U << next;
            stack.push_back(next);
            walk.push_back(next);
        } else {
            stack.pop_back();
            if (!stack.empty()) walk.push_back(stack.back());
        }
    }
    if (visited != m.full_mask()) return {};
    return walk;
}

// Shortest letter path from `from` to a state where `target` is enabled.
std::optional<Word> shortest_enabling(const ConcurrentSystem& sys, StateId from, Letter target) {
    const std::size_t n = sys.state_count();
    std::vector<int> parent(n, -2);
    std::vector<Letter> via(n, 0);
    std::deque<StateId> queue{from};
    parent[from] = -1;
    while (!queue.empty()) {
        const StateId x = queue.front();
        queue.pop_front();
        if (sys.step(x, target) != kSink) {
            Word path;
            for (StateId y = x; parent[y] != -1; y = parent[y]) path.push_back(via[y]);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (std::size_t a = 0; a < sys.letter_count(); ++a) {
            const StateId y = sys.step(x, static_cast<Letter>(a));
            if (y != kSink && parent[y] == -2) {
                parent[y] = x;
                via[y] = static_cast<Letter>(a);
                queue.push_back(y);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<LinkingExecution> find_linking_execution(const ConcurrentSystem& sys, StateId from, Letter root) {
    if (from < 0 || static_cast<std::size_t>(from) >= sys.state_count())
        throw Error(ErrorKind::UnknownState, "state id " + std::to_string(from));
    if (root >= sys.letter_count()) throw Error(ErrorKind::UnknownLetter, "letter index " + std::to_string(root));
    const auto cls = classify_system(sys);
    if (!cls.accessible)
        throw Error(ErrorKind::NotAccessible, "linking executions are only searched in accessible systems");

    const Word walk = covering_walk(sys.monoid(), root);
    if (walk.empty()) return std::nullopt;

    LinkingExecution x;
    StateId s = from;
    for (const Letter b : walk) {
        auto prefix = shortest_enabling(sys, s, b);
        if (!prefix) return std::nullopt;
        s = sys.act(s, *prefix);
        x.word.insert(x.word.end(), prefix->begin(), prefix->end());
        x.chain.push_back(x.word.size());
        x.word.push_back(b);
        s = sys.step(s, b);
    }
    if (!is_linking_execution(sys, from, x, root)) return std::nullopt;
    return x;
}

}  // namespace uniconc
