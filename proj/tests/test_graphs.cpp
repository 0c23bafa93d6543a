#include <set>

#include "doctest.h"
#include "uniconc/fixtures.hpp"
#include "uniconc/graphs.hpp"

using namespace uniconc;

namespace {

std::set<std::string> labelled(const ConcurrentSystem& sys, const StateCliqueGraph& g, NodeLabel which) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.labels[i] == which) out.insert(g.describe(sys, i));
    return out;
}

StateCliqueGraph classified(const ConcurrentSystem& sys) {
    StateCliqueGraph dsc = build_dsc(sys);
    classify_nodes(sys, dsc);
    return dsc;
}

std::vector<ConcurrentSystem> all_fixtures() {
    return {fixtures::e1(), fixtures::tm1(), fixtures::aztec(), fixtures::twelve(), fixtures::commuting_pair()};
}

}  // namespace

TEST_CASE("E1 DSC nodes and arcs") {
    const ConcurrentSystem sys = fixtures::e1();
    const StateCliqueGraph dsc = build_dsc(sys);
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < dsc.size(); ++i) nodes.push_back(dsc.describe(sys, i));
    CHECK(nodes == std::vector<std::string>{"(alpha0,a)", "(alpha0,b)", "(alpha0,d)", "(alpha0,ad)", "(alpha0,bd)",
                                            "(alpha1,c)", "(alpha1,d)"});
    // (alpha0,d) only continues with d, since a and b are independent of d.
    CHECK(dsc.graph.succ[2] == std::vector<std::size_t>{2});
    CHECK(dsc.graph.arc_count() == 18);
}

TEST_CASE("DSC arcs follow the definition exactly") {
    for (const ConcurrentSystem& sys : all_fixtures()) {
        const TraceMonoid& m = sys.monoid();
        const StateCliqueGraph dsc = build_dsc(sys);
        std::size_t expected_nodes = 0;
        for (std::size_t s = 0; s < sys.state_count(); ++s)
            for (const Clique c : m.cliques())
                if (!c.empty() && sys.act(static_cast<StateId>(s), c.letters()) != kSink) ++expected_nodes;
        CHECK(dsc.size() == expected_nodes);
        for (std::size_t u = 0; u < dsc.size(); ++u)
            for (std::size_t v = 0; v < dsc.size(); ++v) {
                const SCNode& x = dsc.nodes[u];
                const SCNode& y = dsc.nodes[v];
                const bool arc = sys.act(x.state, x.clique.letters()) == y.state && m.normal_successor(x.clique, y.clique);
                CHECK(dsc.graph.has_arc(u, v) == arc);
            }
    }
}

TEST_CASE("ADSC sizes and chain integrity") {
    const ConcurrentSystem e1 = fixtures::e1();
    CHECK(build_adsc(e1).size() == 9);

    const ConcurrentSystem az = fixtures::aztec();
    const TraceMonoid& m = az.monoid();
    std::size_t pairs = 0;
    for (std::size_t s = 0; s < az.state_count(); ++s)
        for (const auto& [a, b] : m.independent_pairs())
            pairs += az.act(static_cast<StateId>(s), Word{a, b}) != kSink;
    CHECK(build_dsc(az).size() == 26);
    CHECK(build_adsc(az).size() == 26 + pairs);

    for (const ConcurrentSystem& sys : all_fixtures()) {
        const StateCliqueGraph adsc = build_adsc(sys);
        for (std::size_t v = 0; v < adsc.size(); ++v)
            if (adsc.nodes[v].index < adsc.nodes[v].clique.size()) CHECK(adsc.graph.succ[v].size() == 1);
    }
}

TEST_CASE("singleton-only DSC gives an isomorphic ADSC") {
    const ConcurrentSystem sys = ConcurrentSystem::canonical(TraceMonoid::free({"a", "b", "c"}));
    const StateCliqueGraph dsc = build_dsc(sys);
    const StateCliqueGraph adsc = build_adsc(sys);
    CHECK(adsc.size() == dsc.size());
    CHECK(adsc.graph.succ == dsc.graph.succ);
}

TEST_CASE("canonical system DSC is the digraph of cliques") {
    const StateCliqueGraph dsc = classified(fixtures::tm1());
    CHECK(dsc.size() == 4);
    CHECK(labelled(fixtures::tm1(), dsc, NodeLabel::Null).empty());
}

TEST_CASE("null nodes") {
    const ConcurrentSystem e1 = fixtures::e1();
    CHECK(labelled(e1, classified(e1), NodeLabel::Null) == std::set<std::string>{"(alpha0,d)"});

    const ConcurrentSystem az = fixtures::aztec();
    CHECK(labelled(az, classified(az), NodeLabel::Null) ==
          std::set<std::string>{"(0,a)", "(0,b)", "(1,a)", "(2,b)", "(0',d)", "(0',e)", "(1',e)", "(2',d)"});
}

TEST_CASE("labels are closed under predecessors and cover maximal cliques") {
    for (const ConcurrentSystem& sys : all_fixtures()) {
        const StateCliqueGraph dsc = classified(sys);
        for (std::size_t u = 0; u < dsc.size(); ++u)
            for (const std::size_t v : dsc.graph.succ[u])
                if (dsc.labels[v] == NodeLabel::Positive) CHECK(dsc.labels[u] == NodeLabel::Positive);
        for (std::size_t u = 0; u < dsc.size(); ++u) {
            bool maximal = true;
            for (const Clique c : enabled_cliques(sys, dsc.nodes[u].state))
                if (c != dsc.nodes[u].clique && dsc.nodes[u].clique.subset_of(c)) maximal = false;
            if (maximal) CHECK(dsc.labels[u] == NodeLabel::Positive);
        }
    }
}

TEST_CASE("condensation of the positive parts") {
    const ConcurrentSystem az = fixtures::aztec();
    StateCliqueGraph dsc = build_dsc(az);
    const auto positive = classify_nodes(az, dsc);
    const StateCliqueGraph plus = positive_part(dsc, positive);
    CHECK(plus.size() == 18);
    CHECK(plus.condensation.count() == 3);
    CHECK(plus.condensation.terminal_count() == 1);

    const ConcurrentSystem tw = fixtures::twelve();
    StateCliqueGraph tdsc = build_dsc(tw);
    const StateCliqueGraph tplus = positive_part(tdsc, classify_nodes(tw, tdsc));
    std::set<std::set<std::string>> terminal;
    for (std::size_t c = 0; c < tplus.condensation.count(); ++c) {
        if (!tplus.condensation.terminal[c]) continue;
        std::set<std::string> members;
        for (const std::size_t u : tplus.condensation.members[c]) members.insert(tplus.describe(tw, u));
        terminal.insert(members);
    }
    CHECK(terminal == std::set<std::set<std::string>>{{"(0,ab)", "(4,cd)", "(8,ef)"}, {"(1,ad)", "(5,ce)", "(9,bf)"}});
}

TEST_CASE("scc condensation basics") {
    Digraph loop;
    loop.succ = {{0}};
    const Condensation one = scc_condensation(loop);
    CHECK(one.count() == 1);
    CHECK(one.terminal[0]);
    CHECK(one.cyclic[0]);

    Digraph chain;
    chain.succ = {{1}, {2}, {}};
    const Condensation c = scc_condensation(chain);
    CHECK(c.count() == 3);
    CHECK(c.terminal_count() == 1);
    CHECK(c.terminal[c.component[2]]);
    CHECK_FALSE(c.cyclic[0]);
    CHECK(c.reach[c.component[0]][c.component[2]]);

    // Numbering follows the smallest member.
    Digraph two;
    two.succ = {{3}, {2}, {1}, {0}};
    const Condensation t = scc_condensation(two);
    CHECK(t.component == std::vector<std::size_t>{0, 1, 1, 0});
}

TEST_CASE("path counts") {
    const ConcurrentSystem e1 = fixtures::e1();
    const StateCliqueGraph adsc = build_adsc(e1);
    CHECK(count_paths(e1, adsc, 0, 0, 2) == 4);
    CHECK(count_paths(e1, adsc, 0, std::nullopt, 1) == 3);
    CHECK(count_paths(e1, adsc, 1, 1, 0) == 1);
    CHECK(count_paths(e1, adsc, 0, 1, 0) == 0);

    // Coefficients of the inverse Mobius matrix, expanded independently.
    const std::vector<int> g00{1, 2, 4, 8, 16, 32, 64, 128, 256};
    const std::vector<int> g01{0, 1, 2, 4, 8, 16, 32, 64, 128};
    const std::vector<int> g10{0, 1, 3, 7, 15, 31, 63, 127, 255};
    const std::vector<int> g11{1, 1, 2, 4, 8, 16, 32, 64, 128};
    const CountTable table = count_table(e1, adsc, 8);
    for (std::size_t n = 0; n <= 8; ++n) {
        CHECK(table[n][0][0] == g00[n]);
        CHECK(table[n][0][1] == g01[n]);
        CHECK(table[n][1][0] == g10[n]);
        CHECK(table[n][1][1] == g11[n]);
    }

    const ConcurrentSystem tm1 = fixtures::tm1();
    const StateCliqueGraph t = build_adsc(tm1);
    const std::vector<int> fib{1, 3, 8, 21, 55, 144, 377, 987, 2584};
    for (std::size_t n = 0; n <= 8; ++n) CHECK(count_paths(tm1, t, 0, 0, n) == fib[n]);
}
