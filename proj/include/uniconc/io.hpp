#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uniconc/graphs.hpp"
#include "uniconc/system.hpp"

namespace uniconc {

/// Line format:
///   [alphabet] a b c d
///   [independence] a d ; b d
///   [states] s0 s1
///   [base] s0
///   [action]
///   s0 a s1
///   s1 c BOT
/// '#' starts a comment. Section contents may share the header line or follow it.
/// Throws SyntaxError (with the line number) plus every validation error of the system.
ConcurrentSystem parse_spec(std::string_view text);

/// Inverse of parse_spec. Sink entries are left implicit.
std::string render_spec(const ConcurrentSystem& sys);

struct SafePetriNet {
    std::vector<std::string> places;
    std::vector<std::string> transitions;
    /// Indices into places.
    std::vector<std::vector<std::size_t>> pre;
    std::vector<std::vector<std::size_t>> post;
    std::vector<std::size_t> marking;
};

/// [places] p1 p2 / [transitions] t1 / [flow] p1 -> t1, t1 -> p2 / [marking] p1
SafePetriNet parse_petri(std::string_view text);

inline constexpr std::size_t kDefaultMarkingCap = 100000;

/// Letters are transitions, independent when their neighbourhoods are disjoint. States are the
/// reachable markings in BFS order, named like "{p1,p3}"; the initial marking is the base.
/// Throws NotOneBounded, StateExplosion.
ConcurrentSystem petri_to_system(const SafePetriNet& net, std::size_t cap = kDefaultMarkingCap);

/// True when the text has a [places] section.
bool looks_like_petri(std::string_view text);

/// Parses either format.
ConcurrentSystem parse_any(std::string_view text);

enum class DotGraph { DSC, ADSC, States, Condensation };

/// Throws SyntaxError on an unknown name.
DotGraph parse_dot_graph(std::string_view name);

/// Deterministic Graphviz text. DSC nodes are coloured by their positive/null label and
/// strongly connected components become clusters, terminal ones double-bordered.
std::string export_dot(const ConcurrentSystem& sys, DotGraph which);

}  // namespace uniconc
