#include "uniconc/graphs.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "uniconc/error.hpp"

namespace uniconc {

std::size_t Digraph::arc_count() const {
    std::size_t n = 0;
    for (const auto& s : succ) n += s.size();
    return n;
}

bool Digraph::has_arc(std::size_t from, std::size_t to) const {
    return std::find(succ[from].begin(), succ[from].end(), to) != succ[from].end();
}

std::vector<std::vector<std::size_t>> Digraph::predecessors() const {
    std::vector<std::vector<std::size_t>> pred(size());
    for (std::size_t u = 0; u < size(); ++u)
        for (const std::size_t v : succ[u]) pred[v].push_back(u);
    return pred;
}

Digraph induced_subgraph(const Digraph& g, const std::vector<bool>& keep, std::vector<std::size_t>* origin) {
    constexpr auto kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> remap(g.size(), kNone);
    std::vector<std::size_t> back;
    for (std::size_t u = 0; u < g.size(); ++u)
        if (keep[u]) {
            remap[u] = back.size();
            back.push_back(u);
        }
    Digraph out;
    out.succ.resize(back.size());
    for (std::size_t i = 0; i < back.size(); ++i)
        for (const std::size_t v : g.succ[back[i]])
            if (remap[v] != kNone) out.succ[i].push_back(remap[v]);
    if (origin) *origin = std::move(back);
    return out;
}

std::size_t Condensation::terminal_count() const {
    return static_cast<std::size_t>(std::count(terminal.begin(), terminal.end(), true));
}

Condensation scc_condensation(const Digraph& g) {
    const std::size_t n = g.size();
    constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, kUnset), low(n, 0), raw(n, kUnset);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0, raw_count = 0;

    // Explicit call stack of (node, next successor position).
    std::vector<std::pair<std::size_t, std::size_t>> frames;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        frames.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [u, pos] = frames.back();
            if (pos < g.succ[u].size()) {
                const std::size_t v = g.succ[u][pos++];
                if (index[v] == kUnset) {
                    index[v] = low[v] = counter++;
                    stack.push_back(v);
                    on_stack[v] = true;
                    frames.emplace_back(v, 0);
                } else if (on_stack[v]) {
                    low[u] = std::min(low[u], index[v]);
                }
                continue;
            }
            const std::size_t done = u;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
            if (low[done] == index[done]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    raw[w] = raw_count;
                } while (w != done);
                ++raw_count;
            }
        }
    }

    // Renumber by first appearance in node order, i.e. by smallest member.
    Condensation c;
    std::vector<std::size_t> renum(raw_count, kUnset);
    c.component.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        if (renum[raw[u]] == kUnset) {
            renum[raw[u]] = c.members.size();
            c.members.emplace_back();
        }
        c.component[u] = renum[raw[u]];
        c.members[c.component[u]].push_back(u);
    }
    const std::size_t k = c.members.size();
    c.dag.assign(k, {});
    c.cyclic.assign(k, false);
    for (std::size_t u = 0; u < n; ++u)
        for (const std::size_t v : g.succ[u]) {
            const std::size_t cu = c.component[u], cv = c.component[v];
            if (cu == cv) c.cyclic[cu] = true;
            else c.dag[cu].push_back(cv);
        }
    for (auto& d : c.dag) {
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
    }
    c.terminal.assign(k, false);
    for (std::size_t i = 0; i < k; ++i) c.terminal[i] = c.dag[i].empty();
    c.reach.assign(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
        std::deque<std::size_t> queue{i};
        c.reach[i][i] = true;
        while (!queue.empty()) {
            const std::size_t x = queue.front();
            queue.pop_front();
            for (const std::size_t y : c.dag[x])
                if (!c.reach[i][y]) {
                    c.reach[i][y] = true;
                    queue.push_back(y);
                }
        }
    }
    return c;
}

std::optional<std::size_t> StateCliqueGraph::find(StateId state, Clique clique, int index) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].state == state && nodes[i].clique == clique && nodes[i].index == index) return i;
    return std::nullopt;
}

std::string StateCliqueGraph::describe(const ConcurrentSystem& sys, std::size_t node) const {
    const SCNode& x = nodes.at(node);
    std::string out = "(" + sys.state_name(x.state) + "," + sys.monoid().format_clique(x.clique);
    if (kind == GraphKind::ADSC) out += "," + std::to_string(x.index);
    return out + ")";
}

StateCliqueGraph build_dsc(const ConcurrentSystem& sys) {
    StateCliqueGraph g;
    g.kind = GraphKind::DSC;
    for (std::size_t s = 0; s < sys.state_count(); ++s) {
        const auto alpha = static_cast<StateId>(s);
        for (const Clique c : enabled_cliques(sys, alpha))
            g.nodes.push_back(SCNode{alpha, c, 1, sys.act(alpha, c), g.nodes.size()});
    }
    // Group node ids by state so arc construction only scans the target's nodes.
    std::vector<std::vector<std::size_t>> by_state(sys.state_count());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) by_state[g.nodes[i].state].push_back(i);
    g.graph.succ.resize(g.nodes.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        for (const std::size_t j : by_state[g.nodes[i].target])
            if (sys.monoid().normal_successor(g.nodes[i].clique, g.nodes[j].clique)) g.graph.succ[i].push_back(j);
    g.condensation = scc_condensation(g.graph);
    g.labels.assign(g.nodes.size(), NodeLabel::Unlabeled);
    return g;
}

StateCliqueGraph build_adsc(const ConcurrentSystem& sys) {
    const StateCliqueGraph dsc = build_dsc(sys);
    StateCliqueGraph g;
    g.kind = GraphKind::ADSC;
    std::vector<std::size_t> first(dsc.size());
    for (std::size_t i = 0; i < dsc.size(); ++i) {
        first[i] = g.nodes.size();
        const SCNode& x = dsc.nodes[i];
        for (int k = 1; k <= x.clique.size(); ++k) g.nodes.push_back(SCNode{x.state, x.clique, k, x.target, i});
    }
    g.graph.succ.resize(g.nodes.size());
    for (std::size_t i = 0; i < dsc.size(); ++i) {
        const std::size_t last = first[i] + static_cast<std::size_t>(dsc.nodes[i].clique.size()) - 1;
        for (std::size_t u = first[i]; u < last; ++u) g.graph.succ[u].push_back(u + 1);
        for (const std::size_t j : dsc.graph.succ[i]) g.graph.succ[last].push_back(first[j]);
    }
    g.condensation = scc_condensation(g.graph);
    g.labels.assign(g.nodes.size(), NodeLabel::Unlabeled);
    return g;
}

std::vector<bool> classify_nodes(const ConcurrentSystem& sys, StateCliqueGraph& dsc) {
    if (dsc.kind != GraphKind::DSC) throw Error(ErrorKind::ClassificationMismatch, "classification runs on the DSC");
    const std::size_t n = dsc.size();
    std::vector<bool> positive(n, false);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
        const SCNode& x = dsc.nodes[i];
        bool maximal = true;
        for (std::size_t a = 0; a < sys.letter_count() && maximal; ++a) {
            const auto l = static_cast<Letter>(a);
            if (x.clique.contains(l)) continue;
            const Clique bigger = x.clique.with(l);
            if (sys.monoid().is_clique(bigger) && sys.act(x.state, bigger) != kSink) maximal = false;
        }
        if (maximal) {
            positive[i] = true;
            queue.push_back(i);
        }
    }
    const auto pred = dsc.graph.predecessors();
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (const std::size_t u : pred[v])
            if (!positive[u]) {
                positive[u] = true;
                queue.push_back(u);
            }
    }
    dsc.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) dsc.labels[i] = positive[i] ? NodeLabel::Positive : NodeLabel::Null;
    return positive;
}

StateCliqueGraph positive_part(const StateCliqueGraph& g, const std::vector<bool>& dsc_positive) {
    std::vector<bool> keep(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) keep[i] = dsc_positive.at(g.nodes[i].dsc_node);
    StateCliqueGraph out;
    out.kind = g.kind;
    out.graph = induced_subgraph(g.graph, keep, &out.origin);
    for (const std::size_t o : out.origin) out.nodes.push_back(g.nodes[o]);
    if (!g.labels.empty())
        for (const std::size_t o : out.origin) out.labels.push_back(g.labels[o]);
    else
        out.labels.assign(out.nodes.size(), NodeLabel::Unlabeled);
    out.condensation = scc_condensation(out.graph);
    return out;
}

namespace {

// Row of counts for one start state: out[n][beta].
std::vector<std::vector<BigInt>> counts_from(const ConcurrentSystem& sys, const StateCliqueGraph& adsc,
                                             StateId alpha, std::size_t max_n) {
    const std::size_t m = adsc.size();
    std::vector<std::vector<BigInt>> out(max_n + 1, std::vector<BigInt>(sys.state_count()));
    out[0][alpha] = 1;
    if (max_n == 0) return out;
    std::vector<BigInt> v(m), next(m);
    for (std::size_t i = 0; i < m; ++i)
        if (adsc.nodes[i].state == alpha && adsc.nodes[i].index == 1) v[i] = 1;
    for (std::size_t len = 1; len <= max_n; ++len) {
        for (std::size_t i = 0; i < m; ++i) {
            const SCNode& x = adsc.nodes[i];
            if (x.index == x.clique.size() && !v[i].is_zero()) out[len][x.target] += v[i];
        }
        if (len == max_n) break;
        for (auto& e : next) e = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (v[i].is_zero()) continue;
            for (const std::size_t j : adsc.graph.succ[i]) next[j] += v[i];
        }
        std::swap(v, next);
    }
    return out;
}

}  // namespace

BigInt count_paths(const ConcurrentSystem& sys, const StateCliqueGraph& adsc, StateId alpha,
                   std::optional<StateId> beta, std::size_t n) {
    if (adsc.kind != GraphKind::ADSC) throw Error(ErrorKind::ClassificationMismatch, "count_paths needs the ADSC");
    if (alpha < 0 || static_cast<std::size_t>(alpha) >= sys.state_count())
        throw Error(ErrorKind::UnknownState, "state id " + std::to_string(alpha));
    if (beta && (*beta < 0 || static_cast<std::size_t>(*beta) >= sys.state_count()))
        throw Error(ErrorKind::UnknownState, "state id " + std::to_string(*beta));
    const auto rows = counts_from(sys, adsc, alpha, n);
    if (beta) return rows[n][*beta];
    BigInt total = 0;
    for (const auto& c : rows[n]) total += c;
    return total;
}

CountTable count_table(const ConcurrentSystem& sys, const StateCliqueGraph& adsc, std::size_t max_n) {
    if (adsc.kind != GraphKind::ADSC) throw Error(ErrorKind::ClassificationMismatch, "count_table needs the ADSC");
    const std::size_t k = sys.state_count();
    CountTable table(max_n + 1, std::vector<std::vector<BigInt>>(k, std::vector<BigInt>(k)));
    for (std::size_t a = 0; a < k; ++a) {
        const auto rows = counts_from(sys, adsc, static_cast<StateId>(a), max_n);
        for (std::size_t n = 0; n <= max_n; ++n) table[n][a] = rows[n];
    }
    return table;
}

}  // namespace uniconc
