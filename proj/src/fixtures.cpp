#include "uniconc/fixtures.hpp"

namespace uniconc::fixtures {

namespace {

// Every edge acts both ways.
std::vector<ActionEntry> involutive(const std::vector<ActionEntry>& edges) {
    std::vector<ActionEntry> out;
    for (const auto& e : edges) {
        out.push_back(e);
        out.push_back({e.to, e.letter, e.from});
    }
    return out;
}

}  // namespace

ConcurrentSystem e1() {
    auto m = TraceMonoid::create({"a", "b", "c", "d"}, {{"a", "d"}, {"b", "d"}});
    return ConcurrentSystem::create(std::move(m), {"alpha0", "alpha1"},
                                    {
                                        {"alpha0", "a", "alpha0"},
                                        {"alpha0", "b", "alpha1"},
                                        {"alpha0", "d", "alpha0"},
                                        {"alpha1", "c", "alpha0"},
                                        {"alpha1", "d", "alpha1"},
                                    });
}

ConcurrentSystem tm1() { return ConcurrentSystem::canonical(TraceMonoid::create({"a", "b", "c"}, {{"a", "b"}})); }

ConcurrentSystem aztec() {
    auto m = TraceMonoid::create({"a", "b", "c", "d", "e"}, {{"a", "b"}, {"d", "e"}});
    return ConcurrentSystem::create(std::move(m), {"0", "1", "2", "3", "0'", "1'", "2'", "3'"},
                                    involutive({
                                        {"0", "a", "1"},
                                        {"0", "b", "2"},
                                        {"1", "b", "3"},
                                        {"2", "a", "3"},
                                        {"3", "c", "3'"},
                                        {"3'", "d", "1'"},
                                        {"3'", "e", "2'"},
                                        {"2'", "d", "0'"},
                                        {"1'", "e", "0'"},
                                    }));
}

ConcurrentSystem twelve() {
    auto m = TraceMonoid::create({"a", "b", "c", "d", "e", "f"},
                                 {{"a", "b"}, {"a", "d"}, {"b", "f"}, {"c", "d"}, {"c", "e"}, {"e", "f"}});
    std::vector<std::string> states;
    for (int i = 0; i < 12; ++i) states.push_back(std::to_string(i));
    return ConcurrentSystem::create(std::move(m), std::move(states),
                                    {
                                        {"0", "b", "1"},  {"0", "a", "3"},  {"1", "d", "2"},  {"1", "a", "4"},
                                        {"2", "a", "5"},  {"3", "b", "4"},  {"4", "d", "5"},  {"4", "c", "7"},
                                        {"5", "e", "6"},  {"5", "c", "8"},  {"6", "c", "9"},  {"7", "d", "8"},
                                        {"8", "e", "9"},  {"8", "f", "11"}, {"9", "b", "10"}, {"9", "f", "0"},
                                        {"10", "f", "1"}, {"11", "e", "0"},
                                    });
}

ConcurrentSystem commuting_pair() {
    return ConcurrentSystem::canonical(TraceMonoid::create({"a", "b"}, {{"a", "b"}}));
}

}  // namespace uniconc::fixtures
