#include "uniconc/io.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "uniconc/error.hpp"

namespace uniconc {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct Line {
    std::size_t number;
    std::string text;
};

// Section name -> content lines (the header's own tail included), comments stripped.
struct Sections {
    std::map<std::string, std::vector<Line>> body;
    std::map<std::string, std::size_t> header_line;
};

[[noreturn]] void syntax(std::size_t line, const std::string& msg) {
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

Sections split_sections(std::string_view text, const std::set<std::string>& known) {
    Sections out;
    std::optional<std::string> current;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        std::string_view line = trim(raw);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            const auto close = line.find(']');
            if (close == std::string_view::npos) syntax(number, "unterminated section header");
            const std::string name(trim(line.substr(1, close - 1)));
            if (!known.count(name)) syntax(number, "unknown section [" + name + "]");
            if (out.header_line.count(name)) syntax(number, "section [" + name + "] given twice");
            out.header_line[name] = number;
            out.body[name];
            current = name;
            line = trim(line.substr(close + 1));
            if (line.empty()) continue;
        }
        if (!current) syntax(number, "content before the first section header");
        out.body[*current].push_back(Line{number, std::string(line)});
        if (end == text.size()) break;
    }
    return out;
}

std::vector<std::string> tokens_of(const Sections& s, const std::string& name) {
    std::vector<std::string> out;
    const auto it = s.body.find(name);
    if (it == s.body.end()) return out;
    for (const auto& line : it->second)
        for (auto& t : split_ws(line.text)) out.push_back(std::move(t));
    return out;
}

void require(const Sections& s, const std::string& name) {
    if (!s.header_line.count(name)) throw Error(ErrorKind::SyntaxError, "missing [" + name + "] section");
}

}  // namespace

ConcurrentSystem parse_spec(std::string_view text) {
    const Sections s = split_sections(text, {"alphabet", "independence", "states", "base", "action"});
    require(s, "alphabet");
    require(s, "states");

    std::vector<std::pair<std::string, std::string>> pairs;
    if (s.body.count("independence")) {
        for (const auto& line : s.body.at("independence")) {
            std::string_view rest = line.text;
            while (!rest.empty()) {
                const auto semi = rest.find(';');
                const std::string_view piece = semi == std::string_view::npos ? rest : rest.substr(0, semi);
                rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
                const auto tok = split_ws(piece);
                if (tok.empty()) continue;
                if (tok.size() != 2) syntax(line.number, "independence pairs are two letters separated by ';'");
                pairs.emplace_back(tok[0], tok[1]);
            }
        }
    }
    TraceMonoid monoid = TraceMonoid::create(tokens_of(s, "alphabet"), pairs);

    std::vector<std::string> states = tokens_of(s, "states");
    std::optional<std::string> base;
    if (s.header_line.count("base")) {
        const auto tok = tokens_of(s, "base");
        if (tok.size() != 1) syntax(s.header_line.at("base"), "[base] takes exactly one state");
        base = tok[0];
    }

    std::vector<ActionEntry> action;
    std::set<std::string> state_set(states.begin(), states.end());
    std::set<std::pair<std::string, std::string>> seen;
    if (s.body.count("action")) {
        for (const auto& line : s.body.at("action")) {
            const auto tok = split_ws(line.text);
            if (tok.size() != 3) syntax(line.number, "expected 'state letter state|BOT'");
            const auto where = "line " + std::to_string(line.number) + ": ";
            if (!state_set.count(tok[0])) throw Error(ErrorKind::UnknownState, where + tok[0]);
            if (!monoid.has_letter(tok[1])) throw Error(ErrorKind::UnknownLetter, where + tok[1]);
            if (tok[2] != "BOT" && !state_set.count(tok[2])) throw Error(ErrorKind::UnknownState, where + tok[2]);
            if (!seen.insert({tok[0], tok[1]}).second)
                syntax(line.number, "action of " + tok[1] + " on " + tok[0] + " given twice");
            action.push_back(ActionEntry{tok[0], tok[1], tok[2]});
        }
    }
    return ConcurrentSystem::create(std::move(monoid), std::move(states), action, base);
}

std::string render_spec(const ConcurrentSystem& sys) {
    const TraceMonoid& m = sys.monoid();
    std::ostringstream os;
    os << "[alphabet]";
    for (const auto& a : m.alphabet()) os << ' ' << a;
    os << "\n[independence]";
    const auto pairs = m.independent_pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i)
        os << (i ? " ; " : " ") << m.name(pairs[i].first) << ' ' << m.name(pairs[i].second);
    os << "\n[states]";
    for (const auto& s : sys.states()) os << ' ' << s;
    os << "\n[base] " << sys.state_name(sys.base_state()) << "\n[action]\n";
    for (std::size_t s = 0; s < sys.state_count(); ++s)
        for (std::size_t a = 0; a < sys.letter_count(); ++a) {
            const StateId t = sys.step(static_cast<StateId>(s), static_cast<Letter>(a));
            if (t == kSink) continue;
            os << sys.states()[s] << ' ' << m.name(static_cast<Letter>(a)) << ' ' << sys.state_name(t) << '\n';
        }
    return os.str();
}

SafePetriNet parse_petri(std::string_view text) {
    const Sections s = split_sections(text, {"places", "transitions", "flow", "marking"});
    require(s, "places");
    require(s, "transitions");
    SafePetriNet net;
    net.places = tokens_of(s, "places");
    net.transitions = tokens_of(s, "transitions");
    std::map<std::string, std::size_t> place_id, trans_id;
    for (std::size_t i = 0; i < net.places.size(); ++i)
        if (!place_id.emplace(net.places[i], i).second) throw Error(ErrorKind::DuplicateState, net.places[i]);
    for (std::size_t i = 0; i < net.transitions.size(); ++i) {
        if (place_id.count(net.transitions[i]))
            throw Error(ErrorKind::DuplicateLetter, net.transitions[i] + " is also a place");
        if (!trans_id.emplace(net.transitions[i], i).second) throw Error(ErrorKind::DuplicateLetter, net.transitions[i]);
    }
    net.pre.assign(net.transitions.size(), {});
    net.post.assign(net.transitions.size(), {});
    if (s.body.count("flow")) {
        for (const auto& line : s.body.at("flow")) {
            std::string_view rest = line.text;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                const std::string_view arc = trim(comma == std::string_view::npos ? rest : rest.substr(0, comma));
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
                if (arc.empty()) continue;
                const auto arrow = arc.find("->");
                if (arrow == std::string_view::npos) syntax(line.number, "flow arcs look like 'x -> y'");
                const std::string from(trim(arc.substr(0, arrow)));
                const std::string to(trim(arc.substr(arrow + 2)));
                if (place_id.count(from) && trans_id.count(to)) net.pre[trans_id[to]].push_back(place_id[from]);
                else if (trans_id.count(from) && place_id.count(to)) net.post[trans_id[from]].push_back(place_id[to]);
                else syntax(line.number, "arc " + from + " -> " + to + " must join a place and a transition");
            }
        }
    }
    for (auto* sets : {&net.pre, &net.post})
        for (auto& v : *sets) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    for (const auto& p : tokens_of(s, "marking")) {
        if (!place_id.count(p)) throw Error(ErrorKind::UnknownState, "marked place " + p);
        net.marking.push_back(place_id[p]);
    }
    std::sort(net.marking.begin(), net.marking.end());
    net.marking.erase(std::unique(net.marking.begin(), net.marking.end()), net.marking.end());
    return net;
}

ConcurrentSystem petri_to_system(const SafePetriNet& net, std::size_t cap) {
    using Marking = std::vector<bool>;
    const std::size_t np = net.places.size();
    const std::size_t nt = net.transitions.size();
    auto name_of = [&](const Marking& m) {
        std::string out = "{";
        bool first = true;
        for (std::size_t p = 0; p < np; ++p)
            if (m[p]) {
                if (!first) out += ',';
                out += net.places[p];
                first = false;
            }
        return out + "}";
    };

    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t t = 0; t < nt; ++t)
        for (std::size_t u = t + 1; u < nt; ++u) {
            std::set<std::size_t> hood(net.pre[t].begin(), net.pre[t].end());
            hood.insert(net.post[t].begin(), net.post[t].end());
            bool disjoint = true;
            for (const auto* side : {&net.pre[u], &net.post[u]})
                for (const std::size_t p : *side)
                    if (hood.count(p)) disjoint = false;
            if (disjoint) pairs.emplace_back(net.transitions[t], net.transitions[u]);
        }
    TraceMonoid monoid = TraceMonoid::create(net.transitions, pairs);

    Marking initial(np, false);
    for (const std::size_t p : net.marking) initial[p] = true;
    std::map<Marking, StateId> index{{initial, 0}};
    std::vector<Marking> order{initial};
    std::vector<StateId> table;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Marking m = order[k];
        for (std::size_t t = 0; t < nt; ++t) {
            bool enabled = true;
            for (const std::size_t p : net.pre[t]) enabled = enabled && m[p];
            if (!enabled) {
                table.push_back(kSink);
                continue;
            }
            Marking next = m;
            for (const std::size_t p : net.pre[t]) next[p] = false;
            for (const std::size_t p : net.post[t]) {
                if (next[p])
                    throw Error(ErrorKind::NotOneBounded, "firing " + net.transitions[t] + " at " + name_of(m) +
                                                              " puts a second token on " + net.places[p]);
                next[p] = true;
            }
            auto [it, fresh] = index.emplace(next, static_cast<StateId>(order.size()));
            if (fresh) {
                if (order.size() >= cap)
                    throw Error(ErrorKind::StateExplosion, "more than " + std::to_string(cap) + " reachable markings");
                order.push_back(next);
            }
            table.push_back(it->second);
        }
    }
    std::vector<std::string> names;
    for (const auto& m : order) names.push_back(name_of(m));
    return ConcurrentSystem::from_table(std::move(monoid), std::move(names), std::move(table), 0);
}

bool looks_like_petri(std::string_view text) {
    std::size_t pos = 0;
    while ((pos = text.find("[places]", pos)) != std::string_view::npos) {
        const std::size_t bol = text.rfind('\n', pos);
        const std::string_view before = text.substr(bol == std::string_view::npos ? 0 : bol + 1,
                                                    pos - (bol == std::string_view::npos ? 0 : bol + 1));
        if (trim(before).empty()) return true;
        ++pos;
    }
    return false;
}

ConcurrentSystem parse_any(std::string_view text) {
    return looks_like_petri(text) ? petri_to_system(parse_petri(text)) : parse_spec(text);
}

DotGraph parse_dot_graph(std::string_view name) {
    if (name == "dsc") return DotGraph::DSC;
    if (name == "adsc") return DotGraph::ADSC;
    if (name == "states") return DotGraph::States;
    if (name == "condensation") return DotGraph::Condensation;
    throw Error(ErrorKind::SyntaxError, "unknown graph '" + std::string(name) + "'");
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

constexpr const char* kPositiveColor = "#33A02C";
constexpr const char* kNullColor = "#E31A1C";

void write_clustered(std::ostream& os, const ConcurrentSystem& sys, const StateCliqueGraph& g,
                     const std::vector<bool>& dsc_positive) {
    const Condensation& c = g.condensation;
    for (std::size_t k = 0; k < c.count(); ++k) {
        os << "  subgraph cluster_" << k << " {\n    label=\"C" << k << "\";\n";
        if (c.terminal[k]) os << "    peripheries=2;\n";
        for (const std::size_t u : c.members[k]) {
            const bool pos = dsc_positive[g.nodes[u].dsc_node];
            os << "    n" << u << " [label=" << quote(g.describe(sys, u)) << ", color=\""
               << (pos ? kPositiveColor : kNullColor) << "\"];\n";
        }
        os << "  }\n";
    }
    for (std::size_t u = 0; u < g.size(); ++u)
        for (const std::size_t v : g.graph.succ[u]) os << "  n" << u << " -> n" << v << ";\n";
}

}  // namespace

std::string export_dot(const ConcurrentSystem& sys, DotGraph which) {
    std::ostringstream os;
    const TraceMonoid& m = sys.monoid();
    switch (which) {
        case DotGraph::States: {
            os << "digraph states {\n  node [shape=circle];\n";
            for (std::size_t s = 0; s < sys.state_count(); ++s)
                os << "  s" << s << " [label=" << quote(sys.states()[s])
                   << (static_cast<StateId>(s) == sys.base_state() ? ", shape=doublecircle" : "") << "];\n";
            for (std::size_t s = 0; s < sys.state_count(); ++s)
                for (std::size_t a = 0; a < sys.letter_count(); ++a) {
                    const StateId t = sys.step(static_cast<StateId>(s), static_cast<Letter>(a));
                    if (t != kSink)
                        os << "  s" << s << " -> s" << t << " [label=" << quote(m.name(static_cast<Letter>(a)))
                           << "];\n";
                }
            break;
        }
        case DotGraph::DSC:
        case DotGraph::ADSC: {
            StateCliqueGraph dsc = build_dsc(sys);
            const std::vector<bool> positive = classify_nodes(sys, dsc);
            os << "digraph " << (which == DotGraph::DSC ? "dsc" : "adsc") << " {\n  node [shape=box];\n";
            if (which == DotGraph::DSC) write_clustered(os, sys, dsc, positive);
            else write_clustered(os, sys, build_adsc(sys), positive);
            break;
        }
        case DotGraph::Condensation: {
            StateCliqueGraph dsc = build_dsc(sys);
            const std::vector<bool> positive = classify_nodes(sys, dsc);
            const Condensation& c = dsc.condensation;
            os << "digraph condensation {\n  node [shape=box];\n";
            for (std::size_t k = 0; k < c.count(); ++k) {
                std::string label;
                bool any_positive = false;
                for (const std::size_t u : c.members[k]) {
                    label += (label.empty() ? "" : " ") + dsc.describe(sys, u);
                    any_positive = any_positive || positive[u];
                }
                os << "  subgraph cluster_" << k << " {\n    label=\"C" << k << "\";\n";
                if (c.terminal[k]) os << "    peripheries=2;\n";
                os << "    c" << k << " [label=" << quote(label) << ", color=\""
                   << (any_positive ? kPositiveColor : kNullColor) << "\"];\n  }\n";
            }
            for (std::size_t k = 0; k < c.count(); ++k)
                for (const std::size_t j : c.dag[k]) os << "  c" << k << " -> c" << j << ";\n";
            break;
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace uniconc
