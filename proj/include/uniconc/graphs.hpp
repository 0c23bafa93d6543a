#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uniconc/polynomial.hpp"
#include "uniconc/system.hpp"

namespace uniconc {

/// Plain adjacency-list digraph.
struct Digraph {
    std::vector<std::vector<std::size_t>> succ;

    std::size_t size() const { return succ.size(); }
    std::size_t arc_count() const;
    bool has_arc(std::size_t from, std::size_t to) const;
    std::vector<std::vector<std::size_t>> predecessors() const;
};

/// Subgraph induced by `keep`; `origin[i]` is the old index of new node i.
Digraph induced_subgraph(const Digraph& g, const std::vector<bool>& keep, std::vector<std::size_t>* origin = nullptr);

struct Condensation {
    /// Component id per node. Components are numbered by their smallest node.
    std::vector<std::size_t> component;
    std::vector<std::vector<std::size_t>> members;
    /// Arcs of the condensation DAG (no self-loops, deduplicated).
    std::vector<std::vector<std::size_t>> dag;
    /// No arc leaves the component.
    std::vector<bool> terminal;
    /// Holds at least one cycle (size > 1, or a self-loop).
    std::vector<bool> cyclic;
    /// reach[i][j]: component j reachable from component i (reflexive).
    std::vector<std::vector<bool>> reach;

    std::size_t count() const { return members.size(); }
    std::size_t terminal_count() const;
};

/// Iterative Tarjan.
Condensation scc_condensation(const Digraph& g);

enum class GraphKind { DSC, ADSC };

struct SCNode {
    StateId state = 0;
    Clique clique;
    /// Position inside the chain, 1-based; always 1 in a DSC.
    int index = 1;
    /// state . clique
    StateId target = 0;
    /// Index of the DSC node (α,c) this node belongs to.
    std::size_t dsc_node = 0;
};

enum class NodeLabel { Unlabeled, Positive, Null };

struct StateCliqueGraph {
    GraphKind kind = GraphKind::DSC;
    std::vector<SCNode> nodes;
    Digraph graph;
    Condensation condensation;
    std::vector<NodeLabel> labels;
    /// For subgraphs: index of each node in the graph it was cut from.
    std::vector<std::size_t> origin;

    std::size_t size() const { return nodes.size(); }
    std::optional<std::size_t> find(StateId state, Clique clique, int index = 1) const;
    std::string describe(const ConcurrentSystem& sys, std::size_t node) const;
};

StateCliqueGraph build_dsc(const ConcurrentSystem& sys);
StateCliqueGraph build_adsc(const ConcurrentSystem& sys);

/// A node is positive iff it reaches (reflexively) a node whose clique is maximal among
/// the cliques enabled at its state. Fills dsc.labels and returns the positive flags.
std::vector<bool> classify_nodes(const ConcurrentSystem& sys, StateCliqueGraph& dsc);

/// Positive part of a DSC or ADSC, given the positive flags of the DSC nodes.
/// Node data is kept; `origin` points back into `g`.
StateCliqueGraph positive_part(const StateCliqueGraph& g, const std::vector<bool>& dsc_positive);

/// Number of traces of length n from alpha to beta (any target when beta is empty), counted
/// as ADSC paths of n nodes from some (alpha,c,1) to some (.,d,|d|) landing on beta.
BigInt count_paths(const ConcurrentSystem& sys, const StateCliqueGraph& adsc, StateId alpha,
                   std::optional<StateId> beta, std::size_t n);

/// table[n][alpha][beta] for n = 0..max_n.
using CountTable = std::vector<std::vector<std::vector<BigInt>>>;
CountTable count_table(const ConcurrentSystem& sys, const StateCliqueGraph& adsc, std::size_t max_n);

}  // namespace uniconc
